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

#include "distress/signal.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/text_io.hpp"

namespace distress {

Granularity parse_granularity(std::string_view name) {
  if (name == "week") return Granularity::Week;
  if (name == "month") return Granularity::Month;
  if (name == "quarter") return Granularity::Quarter;
  throw ConfigError(fmt::format("unknown period granularity '{}'", name));
}

GroupMode parse_group_mode(std::string_view name) {
  if (name == "literal") return GroupMode::Literal;
  if (name == "normalized") return GroupMode::Normalized;
  throw ConfigError(fmt::format("unknown group mode '{}'", name));
}

std::string_view granularity_name(Granularity g) {
  switch (g) {
    case Granularity::Week: return "week";
    case Granularity::Month: return "month";
    case Granularity::Quarter: return "quarter";
  }
  return "month";
}

std::string_view group_mode_name(GroupMode m) {
  return m == GroupMode::Literal ? "literal" : "normalized";
}

Period period_of(Date date, Granularity unit) {
  if (unit == Granularity::Week) {
    // 1970-01-01 was a Thursday; shift so weeks start on Monday.
    const long days = date.time_since_epoch().count() + 3;
    const long week = days >= 0 ? days / 7 : -((-days + 6) / 7);
    return {unit, 0, static_cast<int>(week)};
  }
  const std::chrono::year_month_day ymd{date};
  const int month = static_cast<int>(static_cast<unsigned>(ymd.month()));
  const int year = static_cast<int>(ymd.year());
  if (unit == Granularity::Month) return {unit, year, month};
  return {unit, year, (month - 1) / 3 + 1};
}

Date period_start(const Period& p) {
  using namespace std::chrono;
  switch (p.unit) {
    case Granularity::Week:
      return Date{days{static_cast<long>(p.index) * 7 - 3}};
    case Granularity::Month:
      return Date{year{p.year} / month{static_cast<unsigned>(p.index)} / day{1}};
    case Granularity::Quarter:
      return Date{year{p.year} / month{static_cast<unsigned>((p.index - 1) * 3 + 1)} / day{1}};
  }
  return Date{};
}

std::string Period::label() const {
  switch (unit) {
    case Granularity::Week: return "W" + format_date(period_start(*this));
    case Granularity::Month: return fmt::format("{:04d}-{:02d}", year, index);
    case Granularity::Quarter: return fmt::format("{:04d}Q{}", year, index);
  }
  return "?";
}

std::optional<double> entity_index(std::span<const double> posteriors) {
  if (posteriors.empty()) return std::nullopt;
  double sum = 0;
  for (double p : posteriors) sum += p;
  return sum / static_cast<double>(posteriors.size());
}

std::optional<double> global_index(std::span<const double> posteriors) {
  return entity_index(posteriors);
}

std::optional<double> group_index(std::span<const EntityPeriodValue> members,
                                  std::size_t group_size, GroupMode mode) {
  double weighted = 0;
  std::size_t count = 0;
  for (const auto& m : members) {
    weighted += m.index * static_cast<double>(m.count);
    count += m.count;
  }
  if (count == 0) return std::nullopt;
  if (mode == GroupMode::Literal) {
    if (group_size == 0) throw DataError("group size must be positive");
    return weighted / static_cast<double>(group_size);
  }
  return weighted / static_cast<double>(count);
}

std::vector<double> percentile_band(std::span<const double> scores, int step) {
  if (step <= 0 || step > 98) throw ConfigError("percentile step must be in 1..98");
  std::vector<double> out;
  if (scores.empty()) return out;
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  for (int q = step; q <= 98; q += step) {
    // rank q (n-1) / 100 in exact integer arithmetic.
    const std::size_t num = static_cast<std::size_t>(q) * (n - 1);
    const std::size_t lo = num / 100;
    const std::size_t rem = num % 100;
    if (rem == 0 || lo + 1 >= n) {
      out.push_back(sorted[lo]);
    } else {
      const double frac = static_cast<double>(rem) / 100.0;
      out.push_back(sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]));
    }
  }
  return out;
}

std::vector<ScoredSentence> join_scores(const CorpusStore& store,
                                        const std::map<SentenceId, double>& scores) {
  std::vector<ScoredSentence> out;
  out.reserve(scores.size());
  for (const auto& [id, score] : scores) {
    const Sentence& s = store.by_id(id);
    out.push_back({id, s.date, s.mentions, score});
  }
  return out;
}

namespace {

bool in_span(const Period& p, const IndexOptions& options) {
  if (!options.event_span) return false;
  const Period first = period_of(options.event_span->first, p.unit);
  const Period last = period_of(options.event_span->second, p.unit);
  return !(p < first) && !(last < p);
}

IndexPoint make_point(double value, std::span<const double> scores, const Period& p,
                      const IndexOptions& options) {
  IndexPoint point;
  point.value = value;
  point.count = scores.size();
  point.band = percentile_band(scores, options.percentile_step);
  point.in_sample = in_span(p, options);
  return point;
}

}  // namespace

IndexSet build_indices(std::span<const ScoredSentence> sentences,
                       const EntityLexicon& lexicon, const IndexOptions& options) {
  const Granularity unit = options.granularity;
  // Per entity, per period: the posteriors of its sentences.
  std::map<EntityId, std::map<Period, std::vector<double>>> per_entity;
  std::map<Period, std::vector<double>> per_period;
  // Per group, per period: the distinct sentences of its members.
  std::map<std::string, std::map<Period, std::set<std::size_t>>> group_sentences;
  std::map<EntityId, std::vector<std::string>> groups_of;
  for (const auto& [entity, groups] : lexicon.groups) groups_of[entity] = groups;

  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const ScoredSentence& s = sentences[i];
    const Period p = period_of(s.date, unit);
    per_period[p].push_back(s.score);
    for (const EntityId& e : s.entities) {
      per_entity[e][p].push_back(s.score);
      for (const auto& g : groups_of[e]) group_sentences[g][p].insert(i);
    }
  }

  IndexSet out;
  std::map<EntityId, std::map<Period, EntityPeriodValue>> entity_values;
  for (const auto& [entity, periods] : per_entity) {
    IndexSeries series{"entity", entity, {}};
    for (const auto& [p, scores] : periods) {
      const double value = *entity_index(scores);
      series.points.emplace(p, make_point(value, scores, p, options));
      entity_values[entity][p] = {value, scores.size()};
    }
    out.entities.push_back(std::move(series));
  }

  for (const std::string& group : lexicon.group_ids()) {
    const auto members = lexicon.members(group);
    IndexSeries series{"group", group, {}};
    for (const auto& [p, idx] : group_sentences[group]) {
      std::vector<EntityPeriodValue> values;
      for (const EntityId& e : members) {
        const auto it = entity_values.find(e);
        if (it == entity_values.end()) continue;
        const auto jt = it->second.find(p);
        if (jt != it->second.end()) values.push_back(jt->second);
      }
      const auto value = group_index(values, members.size(), options.group_mode);
      if (!value) continue;
      std::vector<double> scores;
      for (std::size_t i : idx) scores.push_back(sentences[i].score);
      IndexPoint point = make_point(*value, scores, p, options);
      std::size_t count = 0;
      for (const auto& v : values) count += v.count;
      point.count = count;
      point.exceeds_unit = *value > 1.0;
      series.points.emplace(p, std::move(point));
    }
    out.groups.push_back(std::move(series));
  }

  out.global = {"global", "all", {}};
  for (const auto& [p, scores] : per_period) {
    out.global.points.emplace(p, make_point(*global_index(scores), scores, p, options));
  }
  return out;
}

std::string format_index_csv(const IndexSet& indices, int percentile_step) {
  std::string out = "scope,scope_id,period,value,count,in_sample";
  for (int q = percentile_step; q <= 98; q += percentile_step) {
    out += fmt::format(",p{:02d}", q);
  }
  out += '\n';
  auto emit = [&](const IndexSeries& series) {
    for (const auto& [p, point] : series.points) {
      out += fmt::format("{},{},{},{:.17g},{},{}", series.scope, csv_field(series.scope_id), p.label(),
                         point.value, point.count, point.in_sample ? 1 : 0);
      for (double v : point.band) out += fmt::format(",{:.17g}", v);
      out += '\n';
    }
  };
  for (const auto& s : indices.entities) emit(s);
  for (const auto& s : indices.groups) emit(s);
  emit(indices.global);
  return out;
}

}  // namespace distress
