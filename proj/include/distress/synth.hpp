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

#ifndef DISTRESS_SYNTH_HPP_
#define DISTRESS_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "distress/corpus.hpp"
#include "distress/date.hpp"
#include "distress/labeling.hpp"

namespace distress {

struct SynthConfig {
  std::size_t entities = 8;
  double events_per_entity = 2.0;  // integer part per entity, fraction by coin flip
  Date start = Date{std::chrono::year{2007} / 1 / 1};
  int span_days = 3 * 365;
  std::size_t background_vocab = 1000;
  std::size_t event_vocab = 300;
  double lambda = 0.9;               // planted fraction of event-window mentions
  double event_word_rate = 0.6;      // event-vocabulary share of a planted sentence
  double sentences_per_entity_day = 0.3;
  int min_length = 8;
  int max_length = 14;
  int max_context_sentences = 2;     // background sentences on each side
  double co_mention_rate = 0.02;
  double zipf_exponent = 1.0;
  int min_event_spacing = 250;       // days between events of one entity
  WindowConfig windows;
  std::uint64_t seed = 1;

  void validate() const;
};

struct ManifestRow {
  SentenceId sentence_id = 0;
  bool planted = false;
  EntityId entity_id;
  std::optional<Date> event_date;
};

struct SynthCorpus {
  std::string corpus;   // corpus file contents
  std::string lexicon;  // lexicon file contents
  std::vector<Event> events;
  std::vector<ManifestRow> manifest;
  std::vector<std::string> background_words;
  std::vector<std::string> event_words;
};

// Background sentences draw Zipf-distributed background words. A mention of
// entity b dated inside the inner window of one of b's events is planted with
// probability lambda, mixing in uniformly drawn event words.
SynthCorpus generate(const SynthConfig& config);

std::string format_manifest(const std::vector<ManifestRow>& rows);
std::vector<ManifestRow> parse_manifest(std::string_view contents);

struct SynthPaths {
  std::filesystem::path corpus, lexicon, events, manifest;
};

void write_synth(const SynthCorpus& synth, const SynthPaths& paths);

}  // namespace distress

#endif  // DISTRESS_SYNTH_HPP_
