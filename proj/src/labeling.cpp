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

#include "distress/labeling.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/text_io.hpp"

namespace distress {

void WindowConfig::validate() const {
  if (inner.lo > inner.hi || outer.lo > outer.hi) {
    throw ConfigError("window bounds must satisfy lo <= hi");
  }
  if (!outer.contains(inner)) {
    throw ConfigError("inner window must lie inside the outer window");
  }
  if (coverage_pad < 0) throw ConfigError("coverage pad must be non-negative");
}

Label label_pair(Date sentence_date, std::span<const Date> event_dates,
                 const WindowConfig& windows) {
  bool all_outside_outer = true;
  for (const Date event : event_dates) {
    const int offset = day_offset(sentence_date, event);
    if (windows.inner.contains(offset)) return Label::Coinciding;
    if (windows.outer.contains(offset)) all_outside_outer = false;
  }
  return all_outside_outer ? Label::NonCoinciding : Label::Undefined;
}

LabelSet label_corpus(const CorpusStore& store, std::span<const Event> events,
                      const WindowConfig& windows) {
  windows.validate();
  if (events.empty()) throw DataError("event set is empty; nothing to supervise");

  std::map<EntityId, std::vector<Date>> by_entity;
  Date first = events.front().event_date;
  Date last = first;
  for (const Event& e : events) {
    if (!store.lexicon().contains(e.entity_id)) {
      throw DataError(fmt::format("event for unknown entity '{}'", e.entity_id));
    }
    by_entity[e.entity_id].push_back(e.event_date);
    first = std::min(first, e.event_date);
    last = std::max(last, e.event_date);
  }
  const Date cover_lo = add_days(first, -windows.coverage_pad);
  const Date cover_hi = add_days(last, windows.coverage_pad);

  LabelSet out;
  for (std::size_t idx : store.mention_index()) {
    const Sentence& s = store.sentences()[idx];
    for (const EntityId& entity : s.mentions) {
      ++out.stats.pairs;
      if (s.date < cover_lo || s.date > cover_hi) {
        ++out.stats.out_of_coverage;
        continue;
      }
      const auto it = by_entity.find(entity);
      const std::span<const Date> dates =
          it == by_entity.end() ? std::span<const Date>{} : std::span<const Date>{it->second};
      const Label label = label_pair(s.date, dates, windows);
      if (label == Label::Undefined) {
        ++out.stats.undefined;
        continue;
      }
      const int value = static_cast<int>(label);
      out.instances.push_back({*s.sentence_id, entity, value});
      if (value == 1) {
        ++out.stats.positives;
      } else {
        ++out.stats.negatives;
      }
    }
  }
  return out;
}

namespace {

std::vector<std::string_view> csv_lines(std::string_view contents) {
  auto lines = split(contents, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  return lines;
}

}  // namespace

std::vector<Event> parse_events(std::string_view contents) {
  const auto lines = csv_lines(contents);
  if (lines.empty() || lines[0] != "entity_id,event_date") {
    throw DataError("event file line 1: expected header 'entity_id,event_date'");
  }
  std::vector<Event> events;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = parse_csv_line(lines[i]);
    if (fields.size() != 2 || fields[0].empty()) {
      throw DataError(fmt::format("event file line {}: malformed record", i + 1));
    }
    const auto date = parse_date(fields[1]);
    if (!date) {
      throw DataError(
          fmt::format("event file line {}: invalid date '{}'", i + 1, fields[1]));
    }
    events.push_back({fields[0], *date});
  }
  return events;
}

std::vector<Event> read_events(const std::filesystem::path& path) {
  return parse_events(read_file(path));
}

std::string format_events(std::span<const Event> events) {
  std::string out = "entity_id,event_date\n";
  for (const Event& e : events) {
    out += fmt::format("{},{}\n", csv_field(e.entity_id), format_date(e.event_date));
  }
  return out;
}

std::string format_labels(std::span<const LabeledInstance> instances) {
  std::string out = "sentence_id,entity_id,label\n";
  for (const auto& inst : instances) {
    out += fmt::format("{},{},{}\n", inst.sentence_id, csv_field(inst.entity_id),
                       inst.label);
  }
  return out;
}

std::vector<LabeledInstance> parse_labels(std::string_view contents) {
  const auto lines = csv_lines(contents);
  if (lines.empty() || lines[0] != "sentence_id,entity_id,label") {
    throw DataError("label file line 1: expected header 'sentence_id,entity_id,label'");
  }
  std::vector<LabeledInstance> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = parse_csv_line(lines[i]);
    LabeledInstance inst;
    const auto bad = [&] {
      return DataError(fmt::format("label file line {}: malformed record", i + 1));
    };
    if (f.size() != 3) throw bad();
    auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), inst.sentence_id);
    if (ec != std::errc() || p != f[0].data() + f[0].size()) throw bad();
    if (f[2] != "0" && f[2] != "1") throw bad();
    inst.entity_id = f[1];
    inst.label = f[2] == "1" ? 1 : 0;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace distress
