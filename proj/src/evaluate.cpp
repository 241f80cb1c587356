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

#include "distress/evaluate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/rng.hpp"

namespace distress {

std::string_view level_name(EvalLevel level) {
  return level == EvalLevel::Vector ? "vector" : "aggregated-entity";
}

EvalInput make_eval_input(const CorpusStore& store, const EmbeddingModel& model,
                          std::span<const LabeledInstance> instances) {
  EvalInput in;
  in.data.dim = model.dim();
  for (const auto& inst : instances) {
    const Sentence& s = store.by_id(inst.sentence_id);
    in.data.add(model.extract_vector(inst.sentence_id), inst.label);
    in.entities.push_back(inst.entity_id);
    in.dates.push_back(s.date);
    in.sentence_ids.push_back(inst.sentence_id);
  }
  return in;
}

EvalInput with_shuffled_labels(EvalInput input, std::uint64_t seed) {
  Rng rng(seed);
  rng.shuffle(std::span<int>(input.data.y));
  return input;
}

namespace {

struct Accumulator {
  std::vector<std::vector<double>> ur, fbeta, threshold;
  std::vector<std::array<double, 4>> cm_sum;
  std::vector<double> auc;
  std::size_t skipped = 0;

  explicit Accumulator(std::size_t grid)
      : ur(grid), fbeta(grid), threshold(grid), cm_sum(grid, {0, 0, 0, 0}) {}
};

bool both_classes(std::span<const int> labels) {
  const auto pos = std::count(labels.begin(), labels.end(), 1);
  return pos > 0 && pos < static_cast<long>(labels.size());
}

// Scores and labels of one evaluation set.
struct Scored {
  std::vector<double> scores;
  std::vector<int> labels;
};

Scored aggregate(const Scored& instances, std::span<const std::size_t> rows,
                 const EvalInput& input, Granularity unit) {
  std::map<std::pair<EntityId, Period>, std::pair<std::vector<double>, int>> groups;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = rows[k];
    auto& g = groups[{input.entities[i], period_of(input.dates[i], unit)}];
    g.first.push_back(instances.scores[k]);
    g.second = std::max(g.second, instances.labels[k]);
  }
  Scored out;
  for (const auto& [key, g] : groups) {
    out.scores.push_back(*entity_index(g.first));
    out.labels.push_back(g.second);
  }
  return out;
}

void evaluate_fold(const Scored& valid, const Scored& test, const EvalConfig& config,
                   Accumulator& acc) {
  if (!both_classes(valid.labels) || !both_classes(test.labels)) {
    ++acc.skipped;
    return;
  }
  acc.auc.push_back(roc_auc(test.scores, test.labels));
  for (std::size_t m = 0; m < config.mu_grid.size(); ++m) {
    const double mu = config.mu_grid[m];
    const double t = optimize_threshold(valid.scores, valid.labels, mu);
    const ConfusionMatrix cm = confusion_at(test.scores, test.labels, t);
    acc.ur[m].push_back(usefulness(cm, mu).relative);
    acc.fbeta[m].push_back(f_beta(cm, mu_to_beta(mu)));
    acc.threshold[m].push_back(t);
    acc.cm_sum[m][0] += static_cast<double>(cm.tn);
    acc.cm_sum[m][1] += static_cast<double>(cm.fn);
    acc.cm_sum[m][2] += static_cast<double>(cm.fp);
    acc.cm_sum[m][3] += static_cast<double>(cm.tp);
  }
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

EvalReport summarize(const Accumulator& acc, const EvalConfig& config, Sampling strategy,
                     EvalLevel level) {
  EvalReport r;
  r.strategy = strategy;
  r.level = level;
  r.runs = acc.auc.size();
  r.skipped = acc.skipped;
  std::tie(r.auc_mean, r.auc_std) = mean_std(acc.auc);
  for (std::size_t m = 0; m < config.mu_grid.size(); ++m) {
    MuSummary row;
    row.mu = config.mu_grid[m];
    row.runs = acc.ur[m].size();
    std::tie(row.mean_ur, row.std_ur) = mean_std(acc.ur[m]);
    std::tie(row.mean_fbeta, row.std_fbeta) = mean_std(acc.fbeta[m]);
    row.threshold_mean = mean_std(acc.threshold[m]).first;
    if (row.runs > 0) {
      const double n = static_cast<double>(row.runs);
      row.mean_tn = acc.cm_sum[m][0] / n;
      row.mean_fn = acc.cm_sum[m][1] / n;
      row.mean_fp = acc.cm_sum[m][2] / n;
      row.mean_tp = acc.cm_sum[m][3] / n;
    }
    r.rows.push_back(row);
  }
  return r;
}

Scored score_rows(const RelevanceClassifier& clf, const EvalInput& input,
                  std::span<const std::size_t> rows) {
  Scored out;
  for (std::size_t i : rows) {
    out.scores.push_back(clf.relevance(input.data.row(i)));
    out.labels.push_back(input.data.y[i]);
  }
  return out;
}

Dataset subset(const EvalInput& input, std::span<const std::size_t> rows) {
  Dataset d;
  d.dim = input.data.dim;
  d.x.reserve(rows.size() * d.dim);
  for (std::size_t i : rows) d.add(input.data.row(i), input.data.y[i]);
  return d;
}

}  // namespace

EvalReports evaluate_run(const EvalInput& input, const EvalConfig& config,
                         Sampling strategy) {
  if (input.size() == 0) throw DataError("no labeled instances to evaluate");
  if (config.reshuffles < 1) throw ConfigError("reshuffles must be at least 1");
  for (double mu : config.mu_grid) {
    if (!(mu > 0 && mu < 1)) throw ConfigError(fmt::format("mu {} outside (0,1)", mu));
  }
  ClassifierConfig clf_config = config.classifier;
  clf_config.input_dim = input.data.dim;

  std::vector<FoldItem> items;
  items.reserve(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    items.push_back({input.entities[i], input.dates[i]});
  }

  Accumulator vec_acc(config.mu_grid.size());
  Accumulator agg_acc(config.mu_grid.size());
  const int k = config.folds;
  for (int r = 0; r < config.reshuffles; ++r) {
    const FoldAssignment folds = make_folds(
        items, strategy, k, derive_seed(config.seed, 0xf01d, static_cast<std::uint64_t>(r)),
        config.period_split);
    for (int f = 0; f < k; ++f) {
      const int valid_fold = (f + k - 1) % k;
      std::vector<std::size_t> train_rows, valid_rows, test_rows;
      for (std::size_t i = 0; i < input.size(); ++i) {
        const int fi = folds.fold[i];
        if (fi == f) {
          test_rows.push_back(i);
        } else if (fi == valid_fold) {
          valid_rows.push_back(i);
        } else {
          train_rows.push_back(i);
        }
      }
      const Dataset train = subset(input, train_rows);
      if (!both_classes(train.y)) {
        ++vec_acc.skipped;
        ++agg_acc.skipped;
        continue;
      }
      const Dataset valid = subset(input, valid_rows);
      clf_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(r),
                                    static_cast<std::uint64_t>(f));
      const RelevanceClassifier clf = train_nag(train, valid, clf_config).classifier;

      const Scored valid_scored = score_rows(clf, input, valid_rows);
      const Scored test_scored = score_rows(clf, input, test_rows);
      evaluate_fold(valid_scored, test_scored, config, vec_acc);
      evaluate_fold(aggregate(valid_scored, valid_rows, input, config.granularity),
                    aggregate(test_scored, test_rows, input, config.granularity), config,
                    agg_acc);
    }
  }
  return {summarize(vec_acc, config, strategy, EvalLevel::Vector),
          summarize(agg_acc, config, strategy, EvalLevel::AggregatedEntity)};
}

ClassifierTrainResult train_final(const EvalInput& input, const ClassifierConfig& config,
                                  double valid_fraction) {
  if (!(valid_fraction >= 0 && valid_fraction < 1)) {
    throw ConfigError("valid_fraction must be in [0,1)");
  }
  std::vector<std::size_t> order(input.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(config.seed, 0xf1a1));
  rng.shuffle(std::span<std::size_t>(order));
  const auto n_valid = static_cast<std::size_t>(valid_fraction * static_cast<double>(order.size()));
  const std::span<const std::size_t> all(order);
  return train_nag(subset(input, all.subspan(n_valid)), subset(input, all.first(n_valid)), config);
}

std::string format_report_csv(const EvalReport& report) {
  std::string out =
      "mu,mean_Ur,std_Ur,mean_Fbeta,mean_TN,mean_FN,mean_FP,mean_TP,threshold_mean\n";
  for (const auto& row : report.rows) {
    out += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                       row.mu, row.mean_ur, row.std_ur, row.mean_fbeta, row.mean_tn,
                       row.mean_fn, row.mean_fp, row.mean_tp, row.threshold_mean);
  }
  return out;
}

std::string format_report_text(const EvalReport& report) {
  std::string out = fmt::format(
      "Sampling: {}   Level: {}\nAUC: {:.3f} (sd {:.3f}) over {} runs, {} skipped\n\n",
      sampling_name(report.strategy), level_name(report.level), report.auc_mean,
      report.auc_std, report.runs, report.skipped);
  out += fmt::format("{:>6} {:>8} {:>7} {:>8} {:>7} {:>9} {:>9} {:>9} {:>9} {:>7}\n", "mu",
                     "Ur", "sd_U", "Fbeta", "sd_F", "TN", "FN", "FP", "TP", "t");
  for (const auto& row : report.rows) {
    out += fmt::format(
        "{:>6} {:>8.3f} {:>7.3f} {:>8.3f} {:>7.3f} {:>9.1f} {:>9.1f} {:>9.1f} {:>9.1f} "
        "{:>7.3f}\n",
        row.mu, row.mean_ur, row.std_ur, row.mean_fbeta, row.std_fbeta, row.mean_tn,
        row.mean_fn, row.mean_fp, row.mean_tp, row.threshold_mean);
  }
  return out;
}

}  // namespace distress
