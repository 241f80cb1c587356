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

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "distress/error.hpp"
#include "distress/synth.hpp"

using namespace distress;

namespace {

SynthConfig small_synth(std::uint64_t seed = 2) {
  SynthConfig c;
  c.entities = 5;
  c.events_per_entity = 1.5;
  c.span_days = 800;
  c.background_vocab = 120;
  c.event_vocab = 25;
  c.sentences_per_entity_day = 0.3;
  c.co_mention_rate = 0.1;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("background and event vocabularies are disjoint") {
  const SynthCorpus s = generate(small_synth());
  CHECK(s.background_words.size() == 120);
  CHECK(s.event_words.size() == 25);
  const std::set<std::string> background(s.background_words.begin(), s.background_words.end());
  CHECK(background.size() == s.background_words.size());
  for (const auto& w : s.event_words) CHECK(background.count(w) == 0);
}

TEST_CASE("generated files ingest and label cleanly") {
  const SynthConfig config = small_synth();
  const SynthCorpus s = generate(config);
  const auto dir = std::filesystem::temp_directory_path() / "distress_synth_test";
  std::filesystem::remove_all(dir);
  const SynthPaths paths{dir / "corpus.tsv", dir / "lexicon.tsv", dir / "events.csv",
                         dir / "manifest.csv"};
  write_synth(s, paths);
  const CorpusStore store = ingest(paths.corpus, paths.lexicon);
  CHECK(store.lexicon().entries.size() == config.entities);
  CHECK(read_events(paths.events) == s.events);
  const LabelSet labels = label_corpus(store, s.events, config.windows);
  CHECK(labels.stats.positives > 0);
  CHECK(labels.stats.negatives > 0);
  CHECK(s.manifest.size() == store.mention_count());
  std::filesystem::remove_all(dir);
}

TEST_CASE("events respect spacing and the span") {
  const SynthConfig config = small_synth();
  const SynthCorpus s = generate(config);
  std::map<EntityId, std::vector<Date>> by_entity;
  for (const auto& e : s.events) {
    CHECK(day_offset(e.event_date, config.start) >= 0);
    CHECK(day_offset(e.event_date, config.start) < config.span_days);
    by_entity[e.entity_id].push_back(e.event_date);
  }
  CHECK(by_entity.size() == config.entities);
  for (auto& [id, dates] : by_entity) {
    std::sort(dates.begin(), dates.end());
    for (std::size_t i = 1; i < dates.size(); ++i) {
      CHECK(day_offset(dates[i], dates[i - 1]) >= config.min_event_spacing);
    }
  }
}

TEST_CASE("planted sentences lie in the inner window and carry event words") {
  const SynthConfig config = small_synth();
  const SynthCorpus s = generate(config);
  const CorpusStore store = build_store(parse_corpus(s.corpus), parse_lexicon(s.lexicon));
  const std::set<std::string> event_words(s.event_words.begin(), s.event_words.end());
  std::set<std::pair<EntityId, Date>> events;
  for (const auto& e : s.events) events.insert({e.entity_id, e.event_date});

  std::size_t planted = 0;
  std::size_t with_event_words = 0;
  for (const auto& row : s.manifest) {
    const Sentence& sentence = store.by_id(row.sentence_id);
    CHECK(std::find(sentence.mentions.begin(), sentence.mentions.end(), row.entity_id) !=
          sentence.mentions.end());
    const bool has_event_word =
        std::any_of(sentence.tokens.begin(), sentence.tokens.end(),
                    [&](const std::string& t) { return event_words.count(t) != 0; });
    if (!row.planted) {
      CHECK_FALSE(row.event_date);
      CHECK_FALSE(has_event_word);
      continue;
    }
    ++planted;
    if (has_event_word) ++with_event_words;
    REQUIRE(row.event_date);
    CHECK(events.count({row.entity_id, *row.event_date}) == 1);
    CHECK(config.windows.inner.contains(day_offset(sentence.date, *row.event_date)));
  }
  CHECK(planted > 0);
  CHECK(with_event_words >= planted * 9 / 10);

  // Event words never appear outside planted mention sentences.
  std::set<SentenceId> planted_ids;
  for (const auto& row : s.manifest) {
    if (row.planted) planted_ids.insert(row.sentence_id);
  }
  for (const Sentence& sentence : store.sentences()) {
    if (sentence.sentence_id && planted_ids.count(*sentence.sentence_id)) continue;
    for (const auto& t : sentence.tokens) CHECK(event_words.count(t) == 0);
  }
}

TEST_CASE("lambda zero plants nothing") {
  SynthConfig config = small_synth();
  config.lambda = 0;
  const SynthCorpus s = generate(config);
  CHECK_FALSE(s.manifest.empty());
  for (const auto& row : s.manifest) CHECK_FALSE(row.planted);
}

TEST_CASE("generation is deterministic in the seed") {
  const SynthCorpus a = generate(small_synth(5));
  const SynthCorpus b = generate(small_synth(5));
  const SynthCorpus c = generate(small_synth(6));
  CHECK(a.corpus == b.corpus);
  CHECK(a.lexicon == b.lexicon);
  CHECK(a.events == b.events);
  CHECK(format_manifest(a.manifest) == format_manifest(b.manifest));
  CHECK(a.corpus != c.corpus);
}

TEST_CASE("manifest round trip and errors") {
  const SynthCorpus s = generate(small_synth());
  const std::string text = format_manifest(s.manifest);
  CHECK(text.starts_with("sentence_id,planted,entity_id,event_date\n"));
  CHECK(format_manifest(parse_manifest(text)) == text);
  CHECK_THROWS_AS(parse_manifest("id,planted\n"), DataError);
  CHECK_THROWS_AS(parse_manifest("sentence_id,planted,entity_id,event_date\nx,1,a,\n"),
                  DataError);
}

TEST_CASE("synth config validation") {
  SynthConfig c;
  CHECK_NOTHROW(c.validate());
  c.lambda = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.max_length = c.min_length - 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.entities = 0;
  CHECK_THROWS_AS(generate(c), ConfigError);
}
