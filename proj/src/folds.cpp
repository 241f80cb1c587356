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

#include "distress/folds.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/rng.hpp"

namespace distress {

Sampling parse_sampling(std::string_view name) {
  if (name == "random") return Sampling::Random;
  if (name == "leave-entities-out" || name == "entity") return Sampling::LeaveEntitiesOut;
  throw ConfigError(fmt::format("unknown sampling strategy '{}'", name));
}

std::string_view sampling_name(Sampling s) {
  return s == Sampling::Random ? "random" : "leave-entities-out";
}

namespace {

struct Unit {
  EntityId entity;
  int part = 0;  // 0 = whole or earlier half, 1 = later half
  std::uint64_t tie = 0;
  std::vector<std::size_t> items;
};

}  // namespace

FoldAssignment make_folds(std::span<const FoldItem> items, Sampling strategy, int k,
                          std::uint64_t seed, bool period_split) {
  if (k < 3) throw ConfigError("need at least 3 folds (train, validation, test)");
  FoldAssignment out;
  out.k = k;
  out.fold.assign(items.size(), 0);
  Rng rng(seed);

  if (strategy == Sampling::Random) {
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i = 0; i < order.size(); ++i) {
      out.fold[order[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
    return out;
  }

  std::map<EntityId, std::vector<std::size_t>> by_entity;
  for (std::size_t i = 0; i < items.size(); ++i) by_entity[items[i].entity].push_back(i);
  if (by_entity.size() < static_cast<std::size_t>(k)) {
    throw DataError(fmt::format("{} entities cannot fill {} folds", by_entity.size(), k));
  }

  const double limit = 2.0 * static_cast<double>(items.size()) / k;
  std::vector<Unit> units;
  for (auto& [entity, idx] : by_entity) {
    const std::uint64_t tie = rng.next();
    if (period_split && static_cast<double>(idx.size()) > limit) {
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return items[a].date < items[b].date;
      });
      const std::size_t half = idx.size() / 2;
      units.push_back({entity, 0, tie, {idx.begin(), idx.begin() + half}});
      units.push_back({entity, 1, tie, {idx.begin() + half, idx.end()}});
      out.split_entities.push_back(entity);
    } else {
      units.push_back({entity, 0, tie, idx});
    }
  }
  std::sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) {
    if (a.items.size() != b.items.size()) return a.items.size() > b.items.size();
    if (a.tie != b.tie) return a.tie < b.tie;
    return a.part < b.part;
  });

  // Seeded relabeling so reshuffles pair the folds differently.
  std::vector<int> label(static_cast<std::size_t>(k));
  std::iota(label.begin(), label.end(), 0);
  rng.shuffle(std::span<int>(label));

  std::vector<std::size_t> size(static_cast<std::size_t>(k), 0);
  std::map<std::pair<EntityId, int>, int> placed;
  for (const Unit& u : units) {
    const auto smallest =
        static_cast<std::size_t>(std::min_element(size.begin(), size.end()) - size.begin());
    size[smallest] += u.items.size();
    placed[{u.entity, u.part}] = label[smallest];
  }
  for (const EntityId& entity : out.split_entities) {
    int& early = placed[{entity, 0}];
    int& late = placed[{entity, 1}];
    if (late < early) std::swap(early, late);
  }
  for (const Unit& u : units) {
    const int f = placed[{u.entity, u.part}];
    for (std::size_t i : u.items) out.fold[i] = f;
  }
  return out;
}

}  // namespace distress
