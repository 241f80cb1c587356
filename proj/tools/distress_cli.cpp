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

// distress: command-line front end for the distress-signal pipeline.
//
//   distress <command> [--config FILE] [--seed N] [--out DIR] [--threads N]
//                      [--set key=value]...
//
// Exit codes: 0 success, 1 usage or config error, 2 data error, 3 missing
// prerequisite.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "distress/classifier.hpp"
#include "distress/config.hpp"
#include "distress/corpus.hpp"
#include "distress/describe.hpp"
#include "distress/embedding.hpp"
#include "distress/error.hpp"
#include "distress/evaluate.hpp"
#include "distress/labeling.hpp"
#include "distress/signal.hpp"
#include "distress/synth.hpp"
#include "distress/text_io.hpp"

namespace fs = std::filesystem;
using namespace distress;

namespace {

constexpr std::string_view kVersion = "0.1.0";

// Artifact locations, all derived from the config.
struct Layout {
  explicit Layout(const PipelineConfig& c)
      : out(c.output_dir),
        store(out / "store.tsv"),
        labels(out / "labels.csv"),
        embedding(c.model_path() / "embedding.bin"),
        classifier(c.model_path() / "classifier.bin"),
        scores(out / "scores.csv"),
        index(out / "index.csv"),
        excerpts_csv(out / "excerpts.csv"),
        excerpts_txt(out / "excerpts.txt") {}

  fs::path out, store, labels, embedding, classifier, scores, index, excerpts_csv, excerpts_txt;
};

void require(const fs::path& path, const std::string& stage, const std::string& what) {
  if (!fs::exists(path)) {
    throw MissingPrerequisite(
        stage, fmt::format("missing {} ({}); run '{}' first", what, path.string(), stage));
  }
}

class Run {
 public:
  Run(std::string command, const PipelineConfig& config)
      : command_(std::move(command)), config_(config) {}

  void input(const fs::path& path) { inputs_[path.string()] = hex64(fnv1a64(read_file(path))); }

  void output(const fs::path& path, std::string_view contents) {
    write_file(path, contents);
    outputs_[path.string()] = hex64(fnv1a64(contents));
  }

  void output_file(const fs::path& path) {
    outputs_[path.string()] = hex64(fnv1a64(read_file(path)));
  }

  // The manifest holds everything needed to reproduce the outputs: the
  // canonical config, its hash, and the hashes of every input read.
  void finish() const {
    const std::string canonical = format_config(config_);
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["version"] = kVersion;
    j["seed"] = config_.seed;
    j["config_hash"] = hex64(fnv1a64(canonical));
    j["config"] = canonical;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    write_file(config_.output_dir / "manifests" / (command_ + ".json"), j.dump(2) + "\n");
  }

 private:
  std::string command_;
  const PipelineConfig& config_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
};

CorpusStore load_store(Run& run, const Layout& at) {
  require(at.store, "ingest", "corpus store");
  run.input(at.store);
  return read_store(at.store);
}

EmbeddingModel load_embedding(Run& run, const Layout& at) {
  require(at.embedding, "train-embed", "embedding model");
  run.input(at.embedding);
  return EmbeddingModel::load(at.embedding);
}

RelevanceClassifier load_classifier(Run& run, const Layout& at) {
  require(at.classifier, "train-clf", "classifier");
  run.input(at.classifier);
  return RelevanceClassifier::load(at.classifier);
}

std::vector<LabeledInstance> load_labels(Run& run, const Layout& at) {
  require(at.labels, "label", "label set");
  run.input(at.labels);
  return parse_labels(read_file(at.labels));
}

void cmd_synth(const PipelineConfig& c, Run& run) {
  const SynthCorpus synth = generate(c.synth_config());
  run.output(c.corpus_path(), synth.corpus);
  run.output(c.lexicon_path(), synth.lexicon);
  run.output(c.events_path(), format_events(synth.events));
  run.output(c.manifest_path(), format_manifest(synth.manifest));
  std::size_t planted = 0;
  for (const auto& r : synth.manifest) planted += r.planted ? 1 : 0;
  fmt::print("synth: {} events, {} mention sentences, {} planted\n", synth.events.size(),
             synth.manifest.size(), planted);
}

void cmd_ingest(const PipelineConfig& c, Run& run) {
  const Layout at(c);
  require(c.corpus_path(), "synth", "corpus file");
  require(c.lexicon_path(), "synth", "lexicon file");
  run.input(c.corpus_path());
  run.input(c.lexicon_path());
  const CorpusStore store = ingest(c.corpus_path(), c.lexicon_path());
  run.output(at.store, format_store(store));
  const auto counts = store.counts();
  fmt::print("ingest: {} documents, {} sentences, {} mention-bearing\n", counts.documents,
             counts.sentences, counts.mention_sentences);
}

void cmd_label(const PipelineConfig& c, Run& run) {
  const Layout at(c);
  const CorpusStore store = load_store(run, at);
  require(c.events_path(), "synth", "event file");
  run.input(c.events_path());
  const auto events = read_events(c.events_path());
  const LabelSet labels = label_corpus(store, events, c.windows);
  run.output(at.labels, format_labels(labels.instances));
  const auto& s = labels.stats;
  fmt::print(
      "label: {} pairs, {} out of coverage, {} undefined, {} coinciding, {} non-coinciding "
      "(positive rate {:.4f})\n",
      s.pairs, s.out_of_coverage, s.undefined, s.positives, s.negatives, s.positive_rate());
}

void cmd_train_embed(const PipelineConfig& c, Run& run) {
  const Layout at(c);
  const CorpusStore store = load_store(run, at);
  const EmbedTrainResult result = train_dm(store, c.embed_config());
  result.model.save(at.embedding);
  run.output_file(at.embedding);
  std::string log = "epoch,mean_log_prob\n";
  for (std::size_t e = 0; e < result.epoch_objective.size(); ++e) {
    log += fmt::format("{},{}\n", e + 1, result.epoch_objective[e]);
  }
  run.output(at.out / "embed_log.csv", log);
  fmt::print("train-embed: {} windows per epoch, {} sentences without a window, final {:.6f}\n",
             result.windows_per_epoch, result.skipped_sentences,
             result.epoch_objective.empty() ? 0.0 : result.epoch_objective.back());
}

void cmd_train_clf(const PipelineConfig& c, Run& run) {
  const Layout at(c);
  const CorpusStore store = load_store(run, at);
  const auto labels = load_labels(run, at);
  const EmbeddingModel model = load_embedding(run, at);
  const EvalInput input = make_eval_input(store, model, labels);
  const ClassifierTrainResult result =
      train_final(input, c.classifier_config(), c.valid_fraction);
  result.classifier.save(at.classifier);
  run.output_file(at.classifier);
  std::string log = "epoch,train_loss,valid_loss\n";
  for (std::size_t e = 0; e < result.train_losses.size(); ++e) {
    log += fmt::format("{},{},{}\n", e + 1, result.train_losses[e],
                       e < result.valid_losses.size() ? fmt::format("{}", result.valid_losses[e])
                                                      : std::string());
  }
  run.output(at.out / "clf_log.csv", log);
  fmt::print("train-clf: {} instances, best epoch {}\n", input.size(), result.best_epoch);
}

void cmd_evaluate(const PipelineConfig& c, Run& run) {
  const Layout at(c);
  // Check every prerequisite before the expensive loads.
  require(at.store, "ingest", "corpus store");
  require(at.labels, "label", "label set");
  require(at.embedding, "train-embed", "embedding model");
  const CorpusStore store = load_store(run, at);
  const auto labels = load_labels(run, at);
  const EmbeddingModel model = load_embedding(run, at);
  const EvalInput input = make_eval_input(store, model, labels);
  for (Sampling strategy : c.strategies) {
    const EvalReports reports = evaluate_run(input, c.eval_config(), strategy);
    for (const EvalReport* r : {&reports.vector, &reports.aggregated}) {
      const std::string stem =
          fmt::format("evaluation_{}_{}", sampling_name(strategy), level_name(r->level));
      run.output(at.out / (stem + ".csv"), format_report_csv(*r));
      run.output(at.out / (stem + ".txt"), format_report_text(*r));
      fmt::print("evaluate: {} {} AUC {:.3f} (sd {:.3f}) over {} runs, {} skipped\n",
                 sampling_name(strategy), level_name(r->level), r->auc_mean, r->auc_std, r->runs,
                 r->skipped);
    }
  }
}

std::map<SentenceId, double> score_store(const CorpusStore& store, const EmbeddingModel& model,
                                         const RelevanceClassifier& clf) {
  std::vector<SentenceId> ids;
  for (std::size_t idx : store.mention_index()) ids.push_back(*store.sentences()[idx].sentence_id);
  return score_all(clf, model, ids);
}

void cmd_index(const PipelineConfig& c, Run& run) {
  const Layout at(c);
  require(at.store, "ingest", "corpus store");
  require(at.embedding, "train-embed", "embedding model");
  require(at.classifier, "train-clf", "classifier");
  const CorpusStore store = load_store(run, at);
  const EmbeddingModel model = load_embedding(run, at);
  const RelevanceClassifier clf = load_classifier(run, at);
  const auto scores = score_store(store, model, clf);

  IndexOptions options = c.index_options();
  if (fs::exists(c.events_path())) {
    run.input(c.events_path());
    const auto events = read_events(c.events_path());
    if (!events.empty()) {
      const auto [lo, hi] = std::minmax_element(
          events.begin(), events.end(),
          [](const Event& a, const Event& b) { return a.event_date < b.event_date; });
      options.event_span = std::pair{lo->event_date, hi->event_date};
    }
  }
  const auto scored = join_scores(store, scores);
  const IndexSet indices = build_indices(scored, store.lexicon(), options);

  std::string score_csv = "sentence_id,score\n";
  for (const auto& [id, s] : scores) score_csv += fmt::format("{},{}\n", id, s);
  run.output(at.scores, score_csv);
  run.output(at.index, format_index_csv(indices, options.percentile_step));
  fmt::print("index: {} sentences scored, {} entity series, {} group series, {} periods\n",
             scores.size(), indices.entities.size(), indices.groups.size(),
             indices.global.points.size());
}

void cmd_describe(const PipelineConfig& c, Run& run) {
  const Layout at(c);
  require(at.store, "ingest", "corpus store");
  require(at.embedding, "train-embed", "embedding model");
  require(at.classifier, "train-clf", "classifier");
  const CorpusStore store = load_store(run, at);
  const EmbeddingModel model = load_embedding(run, at);
  const RelevanceClassifier clf = load_classifier(run, at);

  Period period;
  if (c.describe_date) {
    period = period_of(*c.describe_date, c.period);
  } else {
    // Default to the period where the global index peaks.
    const auto scored = join_scores(store, score_store(store, model, clf));
    const IndexSet indices = build_indices(scored, store.lexicon(), c.index_options());
    if (indices.global.points.empty()) throw DataError("no scored sentences to describe");
    auto best = indices.global.points.begin();
    for (auto it = best; it != indices.global.points.end(); ++it) {
      if (it->second.value > best->second.value) best = it;
    }
    period = best->first;
  }

  const ExcerptResult result = rank_excerpts(clf, model, store, period, c.describe_entities,
                                             c.top_k, c.excerpt_options());
  run.output(at.excerpts_csv, format_excerpts_csv(result));
  run.output(at.excerpts_txt, format_excerpts_text(result));
  fmt::print("describe: period {}, {} candidates, {} excerpts, {} duplicates dropped\n",
             period.label(), result.candidates, result.excerpts.size(),
             result.deduplicated.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distress-signal pipeline: embeddings, relevance classifier, indices, excerpts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::vector<std::string> assignments;
  app.add_option("--config", config_file, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--out", out, "override the output directory");
  app.add_option("--threads", threads, "worker threads (1 = deterministic)");
  app.add_option("--set", assignments, "override a config key, as key=value");

  using Handler = void (*)(const PipelineConfig&, Run&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"synth", "generate a synthetic corpus with planted event language", cmd_synth},
      {"ingest", "split, tokenize and match entities into a corpus store", cmd_ingest},
      {"label", "label (sentence, entity) pairs against the event file", cmd_label},
      {"train-embed", "train sentence embeddings", cmd_train_embed},
      {"train-clf", "train the relevance classifier", cmd_train_clf},
      {"evaluate", "cross-validated usefulness report", cmd_evaluate},
      {"index", "entity, group and global distress indices", cmd_index},
      {"describe", "top-ranked excerpts for a period", cmd_describe},
  };
  for (const auto& [name, help, handler] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    PipelineConfig config = config_file.empty() ? PipelineConfig{} : read_config(config_file);
    for (const std::string& a : assignments) {
      const auto eq = a.find('=');
      if (eq == std::string::npos) throw ConfigError(fmt::format("--set expects key=value: {}", a));
      set_config_value(config, a.substr(0, eq), a.substr(eq + 1));
    }
    if (seed) config.seed = *seed;
    if (out) config.output_dir = *out;
    if (threads) config.threads = *threads;
    config.validate();

    for (const auto& [name, help, handler] : commands) {
      if (app.got_subcommand(name)) {
        Run run(name, config);
        handler(config, run);
        run.finish();
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 1;
  } catch (const MissingPrerequisite& e) {
    fmt::print(stderr, "missing prerequisite [{}]: {}\n", e.stage(), e.what());
    return 3;
  } catch (const DataError& e) {
    fmt::print(stderr, "data error: {}\n", e.what());
    return 2;
  }
}
