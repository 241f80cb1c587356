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

#include "distress/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/rng.hpp"
#include "distress/text_io.hpp"

namespace distress {

namespace {

// Pseudo-words from disjoint alphabets: background words use vowels a/e/o/u,
// entity names use i/y, and event words start with 'x', which no other word
// does.
std::string encode_word(std::size_t index, std::string_view consonants,
                        std::string_view vowels, int min_syllables) {
  const std::size_t base = consonants.size() * vowels.size();
  std::string word;
  int syllables = 0;
  do {
    const std::size_t digit = index % base;
    index /= base;
    word += consonants[digit / vowels.size()];
    word += vowels[digit % vowels.size()];
    ++syllables;
  } while (index > 0 || syllables < min_syllables);
  return word;
}

constexpr std::string_view kConsonants = "bdfgklmnprst";

std::string background_word(std::size_t i) { return encode_word(i, kConsonants, "aeou", 2); }
std::string event_word(std::size_t i) { return "x" + encode_word(i, kConsonants, "aeou", 2); }

struct EntityNames {
  std::string id;
  std::string name;     // "Kibi Bank"
  std::string acronym;  // "KBB", case-sensitive form
};

EntityNames entity_names(std::size_t i) {
  std::string stem = encode_word(i, kConsonants, "iy", 2);
  stem[0] = static_cast<char>(stem[0] - 'a' + 'A');
  std::string acronym;
  acronym += stem[0];
  acronym += static_cast<char>(stem[2] - 'a' + 'A');
  acronym += static_cast<char>('A' + i % 26);
  acronym += static_cast<char>('A' + (i / 26) % 26);
  return {fmt::format("bank{:03d}", i), stem + " Bank", acronym};
}

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
      cdf_[i] = acc;
    }
    for (double& c : cdf_) c /= acc;
  }
  std::size_t operator()(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

struct SentencePlan {
  std::string text;
  bool planted = false;
  EntityId entity;
  std::optional<Date> event_date;
};

std::string render(std::vector<std::string> words) {
  std::string& first = words.front();
  if (first[0] >= 'a' && first[0] <= 'z') first[0] = static_cast<char>(first[0] - 'a' + 'A');
  return fmt::format("{}.", fmt::join(words, " "));
}

}  // namespace

void SynthConfig::validate() const {
  if (entities < 1) throw ConfigError("synth needs at least one entity");
  if (!(lambda >= 0 && lambda <= 1)) throw ConfigError("lambda must be in [0,1]");
  if (!(event_word_rate >= 0 && event_word_rate <= 1)) {
    throw ConfigError("event_word_rate must be in [0,1]");
  }
  if (events_per_entity < 0 || sentences_per_entity_day < 0 || co_mention_rate < 0) {
    throw ConfigError("synth rates must be non-negative");
  }
  if (background_vocab < 2 || event_vocab < 1) throw ConfigError("vocabularies too small");
  if (min_length < 3 || max_length < min_length) throw ConfigError("bad sentence lengths");
  if (span_days < 1 || max_context_sentences < 0) throw ConfigError("bad synth span");
  windows.validate();
}

SynthCorpus generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  SynthCorpus out;
  for (std::size_t i = 0; i < config.background_vocab; ++i) {
    out.background_words.push_back(background_word(i));
  }
  for (std::size_t i = 0; i < config.event_vocab; ++i) {
    out.event_words.push_back(event_word(i));
  }
  const ZipfSampler zipf(config.background_vocab, config.zipf_exponent);

  std::vector<EntityNames> names;
  EntityLexicon lexicon;
  std::string lexicon_text;
  const std::size_t group_count = std::max<std::size_t>(1, (config.entities + 3) / 4);
  for (std::size_t i = 0; i < config.entities; ++i) {
    names.push_back(entity_names(i));
    std::string groups = fmt::format("C{}", i % group_count);
    if (i % 7 == 6 && group_count > 1) groups += fmt::format(",C{}", (i + 1) % group_count);
    lexicon_text += fmt::format("{}\t{}\t{}\tcs:{}\n", names[i].id, groups, names[i].name,
                                names[i].acronym);
  }
  out.lexicon = lexicon_text;
  lexicon = parse_lexicon(lexicon_text);

  // Events keep their outer windows inside the text span where possible.
  const int margin = std::min(config.windows.outer.hi + 10, config.span_days / 4);
  const int lo = margin;
  const int hi = std::max(lo, config.span_days - 1 - margin);
  std::vector<std::vector<Date>> entity_events(config.entities);
  const auto whole = static_cast<int>(std::floor(config.events_per_entity));
  const double frac = config.events_per_entity - whole;
  for (std::size_t e = 0; e < config.entities; ++e) {
    const int count = whole + (rng.bernoulli(frac) ? 1 : 0);
    std::vector<int> days;
    for (int attempt = 0; static_cast<int>(days.size()) < count && attempt < 1000; ++attempt) {
      const int day = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
      const bool clear = std::all_of(days.begin(), days.end(), [&](int d) {
        return std::abs(d - day) >= config.min_event_spacing;
      });
      if (clear) days.push_back(day);
    }
    std::sort(days.begin(), days.end());
    for (int d : days) {
      const Date date = add_days(config.start, d);
      entity_events[e].push_back(date);
      out.events.push_back({names[e].id, date});
    }
  }
  std::sort(out.events.begin(), out.events.end(), [](const Event& a, const Event& b) {
    return a.event_date != b.event_date ? a.event_date < b.event_date : a.entity_id < b.entity_id;
  });

  auto background_sentence = [&] {
    const int len = config.min_length +
                    static_cast<int>(rng.below(config.max_length - config.min_length + 1));
    std::vector<std::string> words;
    for (int i = 0; i < len; ++i) words.push_back(out.background_words[zipf(rng)]);
    return render(std::move(words));
  };

  // Documents are planned first; sentence ids come from ingesting the result.
  std::vector<Document> docs;
  std::map<std::pair<std::size_t, int>, SentencePlan> plans;  // (doc, position)
  for (int day = 0; day < config.span_days; ++day) {
    const Date date = add_days(config.start, day);
    for (std::size_t e = 0; e < config.entities; ++e) {
      const int n_docs = rng.poisson(config.sentences_per_entity_day);
      for (int k = 0; k < n_docs; ++k) {
        std::optional<Date> hit;
        for (const Date ev : entity_events[e]) {
          if (config.windows.inner.contains(day_offset(date, ev))) {
            hit = ev;
            break;
          }
        }
        const bool planted = hit && rng.bernoulli(config.lambda);

        const int len = config.min_length +
                        static_cast<int>(rng.below(config.max_length - config.min_length + 1));
        std::vector<std::string> words;
        for (int i = 0; i < len; ++i) {
          if (planted && rng.bernoulli(config.event_word_rate)) {
            words.push_back(out.event_words[rng.below(out.event_words.size())]);
          } else {
            words.push_back(out.background_words[zipf(rng)]);
          }
        }
        auto mention = [&](std::size_t entity) {
          const bool acronym = rng.bernoulli(0.3);
          const auto at = static_cast<std::ptrdiff_t>(rng.below(words.size() + 1));
          // Names go in as one element so a co-mention cannot split them.
          words.insert(words.begin() + at, acronym ? names[entity].acronym : names[entity].name);
        };
        mention(e);
        if (config.entities > 1 && rng.bernoulli(config.co_mention_rate)) {
          std::size_t other = rng.below(config.entities - 1);
          if (other >= e) ++other;
          mention(other);
        }

        const int before = static_cast<int>(rng.below(config.max_context_sentences + 1));
        const int after = static_cast<int>(rng.below(config.max_context_sentences + 1));
        std::vector<std::string> sentences;
        for (int i = 0; i < before; ++i) sentences.push_back(background_sentence());
        sentences.push_back(render(std::move(words)));
        for (int i = 0; i < after; ++i) sentences.push_back(background_sentence());

        const std::size_t doc_index = docs.size();
        plans[{doc_index, before}] = {sentences[before], planted, names[e].id,
                                      planted ? hit : std::nullopt};
        docs.push_back({fmt::format("d{:07d}", doc_index), date,
                        fmt::format("{}", fmt::join(sentences, " "))});
      }
    }
  }

  for (const Document& d : docs) {
    out.corpus += fmt::format("{}\t{}\t{}\n", d.doc_id, format_date(d.date),
                              escape_field(d.text));
  }

  const CorpusStore store = build_store(docs, lexicon);
  for (std::size_t idx : store.mention_index()) {
    const Sentence& s = store.sentences()[idx];
    ManifestRow row;
    row.sentence_id = *s.sentence_id;
    const auto it = plans.find({s.doc_index, s.position});
    if (it == plans.end()) {
      // A background sentence that happens to contain a name; not expected
      // with the disjoint alphabets.
      row.entity_id = s.mentions.front();
    } else {
      row.planted = it->second.planted;
      row.entity_id = it->second.entity;
      row.event_date = it->second.event_date;
    }
    out.manifest.push_back(std::move(row));
  }
  return out;
}

std::string format_manifest(const std::vector<ManifestRow>& rows) {
  std::string out = "sentence_id,planted,entity_id,event_date\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", r.sentence_id, r.planted ? 1 : 0,
                       csv_field(r.entity_id),
                       r.event_date ? format_date(*r.event_date) : std::string());
  }
  return out;
}

std::vector<ManifestRow> parse_manifest(std::string_view contents) {
  auto lines = split(contents, '\n');
  if (lines.empty() || lines[0] != "sentence_id,planted,entity_id,event_date") {
    throw DataError("manifest line 1: unexpected header");
  }
  std::vector<ManifestRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = parse_csv_line(lines[i]);
    if (f.size() != 4) throw DataError(fmt::format("manifest line {}: malformed", i + 1));
    ManifestRow r;
    auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), r.sentence_id);
    if (ec != std::errc()) throw DataError(fmt::format("manifest line {}: bad id", i + 1));
    r.planted = f[1] == "1";
    r.entity_id = f[2];
    if (!f[3].empty()) r.event_date = parse_date(f[3]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_synth(const SynthCorpus& synth, const SynthPaths& paths) {
  write_file(paths.corpus, synth.corpus);
  write_file(paths.lexicon, synth.lexicon);
  write_file(paths.events, format_events(synth.events));
  write_file(paths.manifest, format_manifest(synth.manifest));
}

}  // namespace distress
