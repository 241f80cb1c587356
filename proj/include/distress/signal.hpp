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

#ifndef DISTRESS_SIGNAL_HPP_
#define DISTRESS_SIGNAL_HPP_

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distress/corpus.hpp"
#include "distress/date.hpp"

namespace distress {

enum class Granularity { Week, Month, Quarter };

Granularity parse_granularity(std::string_view name);
std::string_view granularity_name(Granularity g);

// A calendar period. For weeks, `year` is 0 and `index` counts Monday-based
// weeks since 1970; otherwise `index` is the month (1-12) or quarter (1-4).
struct Period {
  Granularity unit = Granularity::Month;
  int year = 0;
  int index = 0;

  auto operator<=>(const Period&) const = default;
  std::string label() const;
};

Period period_of(Date date, Granularity unit);
Date period_start(const Period& p);

enum class GroupMode { Literal, Normalized };

GroupMode parse_group_mode(std::string_view name);
std::string_view group_mode_name(GroupMode m);

// Mean of the posteriors; nullopt (a gap) when there are none.
std::optional<double> entity_index(std::span<const double> posteriors);
std::optional<double> global_index(std::span<const double> posteriors);

struct EntityPeriodValue {
  double index = 0;        // I(p, b)
  std::size_t count = 0;   // |S_{p,b}|
};

// Literal: sum_b I(p,b) |S_{p,b}| / |B_c|. Normalized: the same sum divided
// by sum_b |S_{p,b}|. `members` holds the entities with data in the period;
// `group_size` is |B_c|. nullopt when no member has data.
std::optional<double> group_index(std::span<const EntityPeriodValue> members,
                                  std::size_t group_size, GroupMode mode);

// Linear-interpolation percentiles at step, 2 step, ... <= 98.
std::vector<double> percentile_band(std::span<const double> scores, int step);

struct ScoredSentence {
  SentenceId id = 0;
  Date date;
  std::vector<EntityId> entities;
  double score = 0;
};

// Joins scores (by sentence id) with the store's dates and mentions.
std::vector<ScoredSentence> join_scores(const CorpusStore& store,
                                        const std::map<SentenceId, double>& scores);

struct IndexPoint {
  double value = 0;
  std::size_t count = 0;
  std::vector<double> band;
  bool in_sample = false;
  bool exceeds_unit = false;  // literal group values above 1
};

struct IndexSeries {
  std::string scope;  // "entity", "group" or "global"
  std::string scope_id;
  std::map<Period, IndexPoint> points;
};

struct IndexOptions {
  Granularity granularity = Granularity::Month;
  GroupMode group_mode = GroupMode::Normalized;
  int percentile_step = 2;
  // Periods overlapping [first, last] event date are flagged in-sample.
  std::optional<std::pair<Date, Date>> event_span;
};

struct IndexSet {
  std::vector<IndexSeries> entities;
  std::vector<IndexSeries> groups;
  IndexSeries global;
};

// A sentence mentioning several entities counts toward each of them; empty
// periods are left out of a series.
IndexSet build_indices(std::span<const ScoredSentence> sentences,
                       const EntityLexicon& lexicon, const IndexOptions& options);

// Columns: scope,scope_id,period,value,count,in_sample,pNN...
std::string format_index_csv(const IndexSet& indices, int percentile_step);

}  // namespace distress

#endif  // DISTRESS_SIGNAL_HPP_
