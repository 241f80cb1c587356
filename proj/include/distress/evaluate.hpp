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

#ifndef DISTRESS_EVALUATE_HPP_
#define DISTRESS_EVALUATE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "distress/classifier.hpp"
#include "distress/corpus.hpp"
#include "distress/embedding.hpp"
#include "distress/folds.hpp"
#include "distress/labeling.hpp"
#include "distress/metrics.hpp"
#include "distress/signal.hpp"

namespace distress {

enum class EvalLevel { Vector, AggregatedEntity };

std::string_view level_name(EvalLevel level);

// Labeled instances joined with their sentence vectors and dates.
struct EvalInput {
  Dataset data;
  std::vector<EntityId> entities;
  std::vector<Date> dates;
  std::vector<SentenceId> sentence_ids;

  std::size_t size() const { return data.size(); }
};

EvalInput make_eval_input(const CorpusStore& store, const EmbeddingModel& model,
                          std::span<const LabeledInstance> instances);

// Copy with labels permuted at random (a no-signal control).
EvalInput with_shuffled_labels(EvalInput input, std::uint64_t seed);

struct EvalConfig {
  ClassifierConfig classifier;
  std::vector<double> mu_grid = default_mu_grid();
  int folds = 5;
  int reshuffles = 5;
  std::uint64_t seed = 1;
  Granularity granularity = Granularity::Month;
  bool period_split = true;
};

struct MuSummary {
  double mu = 0;
  double mean_ur = 0;
  double std_ur = 0;
  double mean_fbeta = 0;
  double std_fbeta = 0;
  double mean_tn = 0;
  double mean_fn = 0;
  double mean_fp = 0;
  double mean_tp = 0;
  double threshold_mean = 0;
  std::size_t runs = 0;
};

struct EvalReport {
  Sampling strategy = Sampling::Random;
  EvalLevel level = EvalLevel::Vector;
  std::vector<MuSummary> rows;  // one per mu in the grid
  double auc_mean = 0;
  double auc_std = 0;
  std::size_t runs = 0;     // fold evaluations that contributed
  std::size_t skipped = 0;  // folds lacking a class in validation or test
};

struct EvalReports {
  EvalReport vector;
  EvalReport aggregated;
};

// For every reshuffle and fold rotation (test = f, validation = f - 1): trains
// the classifier on the remaining folds, picks a threshold per mu on the
// validation fold and scores the test fold, both per instance and per
// (entity, period) where the score is the mean posterior and the observation
// is positive iff any of its instances is.
EvalReports evaluate_run(const EvalInput& input, const EvalConfig& config,
                         Sampling strategy);

// Trains the deployable classifier on every instance, holding out a random
// `valid_fraction` for best-epoch selection.
ClassifierTrainResult train_final(const EvalInput& input, const ClassifierConfig& config,
                                  double valid_fraction);

// mu,mean_Ur,std_Ur,mean_Fbeta,mean_TN,mean_FN,mean_FP,mean_TP,threshold_mean
std::string format_report_csv(const EvalReport& report);
std::string format_report_text(const EvalReport& report);

}  // namespace distress

#endif  // DISTRESS_EVALUATE_HPP_
