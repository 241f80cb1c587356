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

#ifndef DISTRESS_LABELING_HPP_
#define DISTRESS_LABELING_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distress/corpus.hpp"
#include "distress/date.hpp"

namespace distress {

struct Event {
  EntityId entity_id;
  Date event_date;

  bool operator==(const Event&) const = default;
};

// Closed interval of signed day offsets.
struct DayWindow {
  int lo = 0;
  int hi = 0;

  bool contains(int offset) const { return offset >= lo && offset <= hi; }
  bool contains(const DayWindow& other) const {
    return other.lo >= lo && other.hi <= hi;
  }
};

struct WindowConfig {
  DayWindow inner{-8, 45};
  DayWindow outer{-120, 120};
  int coverage_pad = 120;

  // Throws ConfigError unless lo <= hi, inner is inside outer and pad >= 0.
  void validate() const;
};

enum class Label { NonCoinciding = 0, Coinciding = 1, Undefined = -1 };

struct LabeledInstance {
  SentenceId sentence_id = 0;
  EntityId entity_id;
  int label = 0;

  bool operator==(const LabeledInstance&) const = default;
};

struct LabelStats {
  std::size_t pairs = 0;            // (mention sentence, entity) pairs seen
  std::size_t out_of_coverage = 0;  // dropped by the coverage span
  std::size_t undefined = 0;        // dropped as ambiguous
  std::size_t positives = 0;
  std::size_t negatives = 0;

  double positive_rate() const {
    const auto n = positives + negatives;
    return n == 0 ? 0.0 : static_cast<double>(positives) / static_cast<double>(n);
  }
};

struct LabelSet {
  std::vector<LabeledInstance> instances;
  LabelStats stats;
};

// Coinciding iff some event lies with (d_s - d_e) in the inner window;
// non-coinciding iff every event lies outside the outer window (vacuously so
// for an entity without events); undefined otherwise. `event_dates` must
// already be restricted to the entity in question.
Label label_pair(Date sentence_date, std::span<const Date> event_dates,
                 const WindowConfig& windows);

// Labels every (mention-bearing sentence, mentioned entity) pair inside the
// coverage span [min event - pad, max event + pad]. Ambiguous pairs are
// dropped. Throws DataError on an empty event set or unknown entities.
LabelSet label_corpus(const CorpusStore& store, std::span<const Event> events,
                      const WindowConfig& windows);

// Event CSV with header "entity_id,event_date".
std::vector<Event> parse_events(std::string_view contents);
std::vector<Event> read_events(const std::filesystem::path& path);
std::string format_events(std::span<const Event> events);

// Label dump CSV with header "sentence_id,entity_id,label".
std::string format_labels(std::span<const LabeledInstance> instances);
std::vector<LabeledInstance> parse_labels(std::string_view contents);

}  // namespace distress

#endif  // DISTRESS_LABELING_HPP_
