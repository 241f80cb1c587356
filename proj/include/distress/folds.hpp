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

#ifndef DISTRESS_FOLDS_HPP_
#define DISTRESS_FOLDS_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "distress/corpus.hpp"
#include "distress/date.hpp"

namespace distress {

enum class Sampling { Random, LeaveEntitiesOut };

Sampling parse_sampling(std::string_view name);
std::string_view sampling_name(Sampling s);

struct FoldItem {
  EntityId entity;
  Date date;
};

struct FoldAssignment {
  int k = 0;
  std::vector<int> fold;               // per item, in [0, k)
  std::vector<EntityId> split_entities;  // entities divided by period
};

// Random: seeded shuffle dealt round-robin, so fold sizes differ by at most
// one. LeaveEntitiesOut: all items of an entity share a fold; entities are
// placed greedily, largest first, into the currently smallest fold (equal
// sizes in seeded order). An entity holding more than 2/k of all items is
// cut at its median date when `period_split` is set, and the more recent half
// goes to the higher-numbered fold. Throws ConfigError for k < 3 and
// DataError when there are fewer entities than folds.
FoldAssignment make_folds(std::span<const FoldItem> items, Sampling strategy, int k,
                          std::uint64_t seed, bool period_split = true);

}  // namespace distress

#endif  // DISTRESS_FOLDS_HPP_
