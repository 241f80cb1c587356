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

#ifndef DISTRESS_METRICS_HPP_
#define DISTRESS_METRICS_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace distress {

struct ConfusionMatrix {
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  std::int64_t fp = 0;
  std::int64_t tp = 0;

  std::int64_t total() const { return tn + fn + fp + tp; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Predicted positive iff score >= threshold.
ConfusionMatrix confusion_at(std::span<const double> scores, std::span<const int> labels,
                             double threshold);

struct Usefulness {
  double baseline_loss = 0;  // L_b
  double model_loss = 0;     // L_m
  double absolute = 0;       // U_a = L_b - L_m
  double relative = 0;       // U_r = U_a / L_b
};

// Policymaker loss with preference mu on missed events. Throws DataError for
// an empty matrix or when L_b = 0 (single-class data), ConfigError for mu
// outside (0, 1).
Usefulness usefulness(const ConfusionMatrix& cm, double mu);

// (1 + b^2) P R / (b^2 P + R); 0 when TP = 0.
double f_beta(const ConfusionMatrix& cm, double beta);

// beta = mu / (1 - mu), so mu = 0.5 maps to F1.
double mu_to_beta(double mu);

// Mann-Whitney AUC with ties counted as one half. Throws DataError unless
// both classes are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

// Threshold maximizing U_r over {0, 1} and the midpoints of consecutive
// distinct scores; ties go to the smallest threshold. Throws DataError
// unless both classes are present.
double optimize_threshold(std::span<const double> scores, std::span<const int> labels,
                          double mu);

// Default grid of policymaker preferences mu.
std::vector<double> default_mu_grid();

}  // namespace distress

#endif  // DISTRESS_METRICS_HPP_
