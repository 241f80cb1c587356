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

#include "distress/metrics.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "distress/error.hpp"

namespace distress {

namespace {

void require_both_classes(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
  const auto pos = std::count(labels.begin(), labels.end(), 1);
  if (pos == 0 || pos == static_cast<long>(labels.size())) {
    throw DataError("both classes must be present");
  }
}

}  // namespace

ConfusionMatrix confusion_at(std::span<const double> scores, std::span<const int> labels,
                             double threshold) {
  if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool pred = scores[i] >= threshold;
    if (labels[i] == 1) {
      pred ? ++cm.tp : ++cm.fn;
    } else {
      pred ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

Usefulness usefulness(const ConfusionMatrix& cm, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError(fmt::format("mu {} outside (0,1)", mu));
  const double total = static_cast<double>(cm.total());
  if (total <= 0) throw DataError("confusion matrix is empty");
  const double p_pos = static_cast<double>(cm.tp + cm.fn) / total;
  const double p_neg = static_cast<double>(cm.tn + cm.fp) / total;
  Usefulness u;
  u.baseline_loss = std::min(mu * p_pos, (1.0 - mu) * p_neg);
  if (u.baseline_loss <= 0.0) {
    throw DataError("baseline loss is zero (single-class data); U_r undefined");
  }
  u.model_loss = mu * (static_cast<double>(cm.fn) / total) +
                 (1.0 - mu) * (static_cast<double>(cm.fp) / total);
  u.absolute = u.baseline_loss - u.model_loss;
  u.relative = u.absolute / u.baseline_loss;
  return u;
}

double f_beta(const ConfusionMatrix& cm, double beta) {
  if (cm.tp == 0) return 0.0;
  const double precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
  const double recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  const double b2 = beta * beta;
  return (1.0 + b2) * precision * recall / (b2 * precision + recall);
}

double mu_to_beta(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError(fmt::format("mu {} outside (0,1)", mu));
  return mu / (1.0 - mu);
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  require_both_classes(scores, labels);
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of midranks of the positives.
  double rank_sum = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) rank_sum += midrank;
    }
    i = j;
  }
  const double pos = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  const double neg = static_cast<double>(n) - pos;
  return (rank_sum - pos * (pos + 1) / 2.0) / (pos * neg);
}

double optimize_threshold(std::span<const double> scores, std::span<const int> labels,
                          double mu) {
  require_both_classes(scores, labels);
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (labels[i] == 1 ? pos : neg).push_back(scores[i]);
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  std::vector<double> distinct(scores.begin(), scores.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> candidates{0.0, 1.0};
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    candidates.push_back(0.5 * (distinct[i] + distinct[i + 1]));
  }
  std::sort(candidates.begin(), candidates.end());

  auto at_least = [](const std::vector<double>& sorted, double t) {
    return static_cast<std::int64_t>(sorted.end() -
                                     std::lower_bound(sorted.begin(), sorted.end(), t));
  };
  double best_t = candidates.front();
  double best_ur = -std::numeric_limits<double>::infinity();
  for (const double t : candidates) {
    ConfusionMatrix cm;
    cm.tp = at_least(pos, t);
    cm.fn = static_cast<std::int64_t>(pos.size()) - cm.tp;
    cm.fp = at_least(neg, t);
    cm.tn = static_cast<std::int64_t>(neg.size()) - cm.fp;
    const double ur = usefulness(cm, mu).relative;
    if (ur > best_ur) {
      best_ur = ur;
      best_t = t;
    }
  }
  return best_t;
}

std::vector<double> default_mu_grid() {
  return {0.1, 0.3, 0.5, 0.6, 0.7, 0.8, 0.85, 0.875, 0.9, 0.925, 0.95};
}

}  // namespace distress
