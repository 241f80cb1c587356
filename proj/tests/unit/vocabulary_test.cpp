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

#include "distress/error.hpp"
#include "distress/vocabulary.hpp"

using namespace distress;

TEST_CASE("vocabulary orders by frequency then word") {
  const std::map<std::string, std::uint64_t> counts = {
      {"bank", 5}, {"fell", 3}, {"apple", 3}, {"rare", 1}};
  const Vocabulary v = Vocabulary::from_counts(counts, 2);
  REQUIRE(v.size() == 3);
  CHECK(v.word(0) == "bank");
  CHECK(v.word(1) == "apple");
  CHECK(v.word(2) == "fell");
  CHECK(v.find("fell") == 2);
  CHECK_FALSE(v.find("rare"));
  CHECK(v.frequencies() == std::vector<std::uint64_t>{5, 3, 3});
  CHECK(v.encode({"rare", "bank", "fell", "x"}) == std::vector<std::int32_t>{0, 2});
  CHECK(Vocabulary::from_entries(v.entries(), 2) == v);
  CHECK_THROWS_AS(Vocabulary::from_counts(counts, 10), ConfigError);
}

TEST_CASE("build_vocab counts mention sentences or everything") {
  const auto docs = std::vector<Document>{
      {"d1", Date{std::chrono::year{2008} / 1 / 1}, "Fortis fell hard. Markets fell."}};
  const CorpusStore store = build_store(docs, parse_lexicon("fortis\tBE\tfortis\n"));
  const Vocabulary mentions = build_vocab(store, 1, false);
  CHECK(mentions.find("hard"));
  CHECK_FALSE(mentions.find("markets"));
  const Vocabulary all = build_vocab(store, 1, true);
  CHECK(all.find("markets"));
  CHECK(all.count(*all.find("fell")) == 2);
}
