// Copyright 2026 The Distress Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "distress/config.hpp"

#include <charconv>
#include <functional>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/text_io.hpp"

namespace distress {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, v));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, v));
}

std::vector<std::string_view> list_items(std::string_view v) {
  std::vector<std::string_view> out;
  for (auto item : split(v, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

DayWindow parse_window(std::string_view key, std::string_view v) {
  const auto items = list_items(v);
  if (items.size() != 2) throw ConfigError(fmt::format("{}: expected 'lo,hi'", key));
  return {parse_number<int>(key, items[0]), parse_number<int>(key, items[1])};
}

Date parse_date_value(std::string_view key, std::string_view v) {
  const auto d = parse_date(v);
  if (!d) throw ConfigError(fmt::format("{}: bad date '{}'", key, v));
  return *d;
}

struct Field {
  std::string_view key;
  std::function<void(PipelineConfig&, std::string_view)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

template <typename T>
std::string show(const T& v) {
  return fmt::format("{}", v);
}

template <typename T, typename Member>
Field number(std::string_view key, Member member) {
  return {key,
          [key, member](PipelineConfig& c, std::string_view v) {
            std::invoke(member, c) = parse_number<T>(key, v);
          },
          [member](const PipelineConfig& c) { return show(std::invoke(member, c)); }};
}

template <typename Member>
Field flag(std::string_view key, Member member) {
  return {key,
          [key, member](PipelineConfig& c, std::string_view v) {
            std::invoke(member, c) = parse_bool(key, v);
          },
          [member](const PipelineConfig& c) {
            return std::string(std::invoke(member, c) ? "true" : "false");
          }};
}

template <typename Member>
Field path(std::string_view key, Member member) {
  return {key,
          [member](PipelineConfig& c, std::string_view v) { std::invoke(member, c) = v; },
          [member](const PipelineConfig& c) { return std::invoke(member, c).string(); }};
}

template <typename Member>
Field window(std::string_view key, Member member) {
  return {key,
          [key, member](PipelineConfig& c, std::string_view v) {
            std::invoke(member, c) = parse_window(key, v);
          },
          [member](const PipelineConfig& c) {
            const DayWindow& w = std::invoke(member, c);
            return fmt::format("{},{}", w.lo, w.hi);
          }};
}

// Member accessors for nested fields.
#define DISTRESS_FIELD(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      path("corpus", DISTRESS_FIELD(corpus)),
      path("lexicon", DISTRESS_FIELD(lexicon)),
      path("events", DISTRESS_FIELD(events)),
      path("manifest", DISTRESS_FIELD(manifest)),
      path("model_dir", DISTRESS_FIELD(model_dir)),
      path("output_dir", DISTRESS_FIELD(output_dir)),
      number<std::uint64_t>("seed", DISTRESS_FIELD(seed)),
      number<int>("threads", DISTRESS_FIELD(threads)),

      number<std::size_t>("dim", DISTRESS_FIELD(embed.dim)),
      number<std::size_t>("context_n", DISTRESS_FIELD(embed.context_n)),
      number<int>("embed_epochs", DISTRESS_FIELD(embed.epochs)),
      number<double>("embed_lr", DISTRESS_FIELD(embed.lr_initial)),
      number<double>("embed_lr_final", DISTRESS_FIELD(embed.lr_final)),
      number<std::uint64_t>("min_count", DISTRESS_FIELD(embed.min_count)),
      flag("word_only_pass", DISTRESS_FIELD(embed.word_only_pass)),
      flag("learn_projection", DISTRESS_FIELD(embed.learn_projection)),

      window("window_inner", DISTRESS_FIELD(windows.inner)),
      window("window_outer", DISTRESS_FIELD(windows.outer)),
      number<int>("coverage_pad", DISTRESS_FIELD(windows.coverage_pad)),

      number<std::size_t>("hidden", DISTRESS_FIELD(classifier.hidden_units)),
      {"activation",
       [](PipelineConfig& c, std::string_view v) { c.classifier.activation = parse_activation(v); },
       [](const PipelineConfig& c) { return std::string(activation_name(c.classifier.activation)); }},
      {"output_form",
       [](PipelineConfig& c, std::string_view v) { c.classifier.output_form = parse_output_form(v); },
       [](const PipelineConfig& c) {
         return std::string(output_form_name(c.classifier.output_form));
       }},
      number<double>("clf_lr", DISTRESS_FIELD(classifier.lr)),
      number<double>("clf_momentum", DISTRESS_FIELD(classifier.momentum)),
      number<int>("clf_epochs", DISTRESS_FIELD(classifier.epochs)),
      number<std::size_t>("clf_batch", DISTRESS_FIELD(classifier.batch_size)),
      number<double>("valid_fraction", DISTRESS_FIELD(valid_fraction)),

      {"mu_grid",
       [](PipelineConfig& c, std::string_view v) {
         c.mu_grid.clear();
         for (auto item : list_items(v)) c.mu_grid.push_back(parse_number<double>("mu_grid", item));
       },
       [](const PipelineConfig& c) { return fmt::format("{}", fmt::join(c.mu_grid, ",")); }},
      number<int>("folds", DISTRESS_FIELD(folds)),
      number<int>("reshuffles", DISTRESS_FIELD(reshuffles)),
      {"strategy",
       [](PipelineConfig& c, std::string_view v) {
         c.strategies.clear();
         for (auto item : list_items(v)) c.strategies.push_back(parse_sampling(item));
       },
       [](const PipelineConfig& c) {
         std::vector<std::string_view> names;
         for (Sampling s : c.strategies) names.push_back(sampling_name(s));
         return fmt::format("{}", fmt::join(names, ","));
       }},
      flag("period_split", DISTRESS_FIELD(period_split)),

      {"period", [](PipelineConfig& c, std::string_view v) { c.period = parse_granularity(v); },
       [](const PipelineConfig& c) { return std::string(granularity_name(c.period)); }},
      {"group_mode",
       [](PipelineConfig& c, std::string_view v) { c.group_mode = parse_group_mode(v); },
       [](const PipelineConfig& c) { return std::string(group_mode_name(c.group_mode)); }},
      number<int>("percentile_step", DISTRESS_FIELD(percentile_step)),

      number<int>("infer_samples", DISTRESS_FIELD(infer_samples)),
      number<int>("infer_steps", DISTRESS_FIELD(infer.steps)),
      number<double>("infer_lr", DISTRESS_FIELD(infer.lr_initial)),
      number<double>("infer_lr_final", DISTRESS_FIELD(infer.lr_final)),
      {"describe_date",
       [](PipelineConfig& c, std::string_view v) {
         if (v.empty()) {
           c.describe_date.reset();
         } else {
           c.describe_date = parse_date_value("describe_date", v);
         }
       },
       [](const PipelineConfig& c) {
         return c.describe_date ? format_date(*c.describe_date) : std::string();
       }},
      {"describe_entities",
       [](PipelineConfig& c, std::string_view v) {
         c.describe_entities.clear();
         for (auto item : list_items(v)) c.describe_entities.emplace_back(item);
       },
       [](const PipelineConfig& c) {
         return fmt::format("{}", fmt::join(c.describe_entities, ","));
       }},
      number<std::size_t>("top_k", DISTRESS_FIELD(top_k)),

      number<std::size_t>("synth_entities", DISTRESS_FIELD(synth.entities)),
      number<double>("synth_events_per_entity", DISTRESS_FIELD(synth.events_per_entity)),
      {"synth_start",
       [](PipelineConfig& c, std::string_view v) {
         c.synth.start = parse_date_value("synth_start", v);
       },
       [](const PipelineConfig& c) { return format_date(c.synth.start); }},
      number<int>("synth_span_days", DISTRESS_FIELD(synth.span_days)),
      number<std::size_t>("synth_background_vocab", DISTRESS_FIELD(synth.background_vocab)),
      number<std::size_t>("synth_event_vocab", DISTRESS_FIELD(synth.event_vocab)),
      number<double>("synth_lambda", DISTRESS_FIELD(synth.lambda)),
      number<double>("synth_event_word_rate", DISTRESS_FIELD(synth.event_word_rate)),
      number<double>("synth_sentence_rate", DISTRESS_FIELD(synth.sentences_per_entity_day)),
      number<int>("synth_min_length", DISTRESS_FIELD(synth.min_length)),
      number<int>("synth_max_length", DISTRESS_FIELD(synth.max_length)),
      number<int>("synth_context_sentences", DISTRESS_FIELD(synth.max_context_sentences)),
      number<double>("synth_co_mention_rate", DISTRESS_FIELD(synth.co_mention_rate)),
      number<double>("synth_zipf_exponent", DISTRESS_FIELD(synth.zipf_exponent)),
  };
  return table;
}

#undef DISTRESS_FIELD

}  // namespace

void set_config_value(PipelineConfig& config, std::string_view key, std::string_view value) {
  for (const Field& f : fields()) {
    if (f.key == key) {
      f.set(config, value);
      return;
    }
  }
  throw ConfigError(fmt::format("unknown key '{}'", key));
}

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig config;
  const auto lines = split(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("config line {}: expected 'key = value'", i + 1));
    }
    try {
      set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("config line {}: {}", i + 1, e.what()));
    }
  }
  config.validate();
  return config;
}

PipelineConfig read_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

std::string format_config(const PipelineConfig& config) {
  std::string out;
  for (const Field& f : fields()) out += fmt::format("{} = {}\n", f.key, f.get(config));
  return out;
}

std::filesystem::path PipelineConfig::corpus_path() const {
  return corpus.empty() ? output_dir / "data" / "corpus.tsv" : corpus;
}
std::filesystem::path PipelineConfig::lexicon_path() const {
  return lexicon.empty() ? output_dir / "data" / "lexicon.tsv" : lexicon;
}
std::filesystem::path PipelineConfig::events_path() const {
  return events.empty() ? output_dir / "data" / "events.csv" : events;
}
std::filesystem::path PipelineConfig::manifest_path() const {
  return manifest.empty() ? output_dir / "data" / "manifest.csv" : manifest;
}
std::filesystem::path PipelineConfig::model_path() const {
  return model_dir.empty() ? output_dir / "model" : model_dir;
}

EmbedConfig PipelineConfig::embed_config() const {
  EmbedConfig c = embed;
  c.seed = seed;
  c.threads = threads;
  return c;
}

ClassifierConfig PipelineConfig::classifier_config() const {
  ClassifierConfig c = classifier;
  c.input_dim = embed.dim;
  c.seed = seed;
  return c;
}

EvalConfig PipelineConfig::eval_config() const {
  EvalConfig c;
  c.classifier = classifier_config();
  c.mu_grid = mu_grid;
  c.folds = folds;
  c.reshuffles = reshuffles;
  c.seed = seed;
  c.granularity = period;
  c.period_split = period_split;
  return c;
}

IndexOptions PipelineConfig::index_options() const {
  IndexOptions o;
  o.granularity = period;
  o.group_mode = group_mode;
  o.percentile_step = percentile_step;
  return o;
}

ExcerptOptions PipelineConfig::excerpt_options() const {
  ExcerptOptions o;
  o.infer_samples = infer_samples;
  o.infer = infer;
  o.infer.seed = seed;
  o.threads = threads;
  return o;
}

SynthConfig PipelineConfig::synth_config() const {
  SynthConfig s = synth;
  s.windows = windows;
  s.seed = seed;
  return s;
}

void PipelineConfig::validate() const {
  embed_config().validate();
  windows.validate();
  classifier_config().validate();
  synth_config().validate();
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (folds < 3) throw ConfigError("folds must be >= 3");
  if (reshuffles < 1) throw ConfigError("reshuffles must be >= 1");
  if (strategies.empty()) throw ConfigError("strategy list is empty");
  if (mu_grid.empty()) throw ConfigError("mu_grid is empty");
  for (double mu : mu_grid) {
    if (!(mu > 0 && mu < 1)) throw ConfigError(fmt::format("mu {} outside (0,1)", mu));
  }
  if (!(valid_fraction >= 0 && valid_fraction < 1)) {
    throw ConfigError("valid_fraction must be in [0,1)");
  }
  if (percentile_step < 1 || percentile_step > 50) {
    throw ConfigError("percentile_step must be in [1,50]");
  }
  if (infer_samples < 1 || infer.steps < 1) throw ConfigError("inference needs samples and steps");
  if (top_k < 1) throw ConfigError("top_k must be >= 1");
}

}  // namespace distress
