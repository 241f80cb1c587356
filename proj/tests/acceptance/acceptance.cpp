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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and runtime budgets are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "distress/classifier.hpp"
#include "distress/corpus.hpp"
#include "distress/describe.hpp"
#include "distress/error.hpp"
#include "distress/embedding.hpp"
#include "distress/evaluate.hpp"
#include "distress/huffman.hpp"
#include "distress/labeling.hpp"
#include "distress/metrics.hpp"
#include "distress/rng.hpp"
#include "distress/signal.hpp"
#include "distress/synth.hpp"
#include "distress/text_io.hpp"
#include "oracles.hpp"

using namespace distress;

namespace {

constexpr double kMetricTolerance = 1e-9;
constexpr double kHsTolerance = 1e-8;
constexpr double kGradientTolerance = 1e-4;
constexpr double kDecompositionTolerance = 1e-12;
constexpr double kRandomAucFloor = 0.9;
constexpr double kEntityAucFloor = 0.8;
constexpr double kCompareMu = 0.875;
constexpr int kPlantedTopFloor = 8;
constexpr double kIndexEntityShare = 0.8;
constexpr double kControlAucBand = 0.05;
constexpr double kControlUrCeiling = 0.05;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, std::string note) {
    if (!ok) pass = false;
    notes.push_back(fmt::format("{}{}", ok ? "" : "FAILED ", note));
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.check(false, fmt::format("exception: {}", e.what()));
  }
  const double elapsed = seconds_since(start);
  out.check(elapsed < budget_s, fmt::format("runtime {:.2f} s < {:.0f} s", elapsed, budget_s));
  if (!out.pass) ++failures;
  fmt::print("{} [{}] {}\n", out.pass ? "PASS" : "FAIL", id, name);
  for (const auto& n : out.notes) fmt::print("      {}\n", n);
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// Metric, labeling, numerical and Huffman oracles.

Outcome metric_oracle() {
  Outcome out;
  Rng rng(101);
  const auto grid = default_mu_grid();
  double worst_u = 0;
  double worst_f = 0;
  bool majority_ok = true;
  for (int i = 0; i < 100; ++i) {
    ConfusionMatrix cm;
    cm.tn = static_cast<std::int64_t>(rng.below(60));
    cm.fn = static_cast<std::int64_t>(rng.below(60));
    cm.fp = static_cast<std::int64_t>(rng.below(60));
    cm.tp = static_cast<std::int64_t>(rng.below(60));
    if (cm.tn + cm.fp == 0) cm.tn = 1;
    if (cm.tp + cm.fn == 0) cm.tp = 1;
    const double mu = i < 50 ? grid[static_cast<std::size_t>(i) % grid.size()]
                             : rng.uniform(0.01, 0.99);
    const auto u = usefulness(cm, mu);
    const auto o = oracle::brute_usefulness(cm, mu);
    worst_u = std::max({worst_u, std::abs(u.baseline_loss - o.baseline),
                        std::abs(u.model_loss - o.model), std::abs(u.absolute - o.absolute),
                        std::abs(u.relative - o.relative)});
    const double beta = mu_to_beta(mu);
    worst_f = std::max(worst_f, std::abs(f_beta(cm, beta) - oracle::brute_f_beta(cm, beta)));

    const std::int64_t pos = cm.tp + cm.fn;
    const std::int64_t neg = cm.tn + cm.fp;
    const ConfusionMatrix majority =
        pos > neg ? ConfusionMatrix{0, 0, neg, pos} : ConfusionMatrix{neg, pos, 0, 0};
    for (double m : grid) {
      if (usefulness(majority, m).absolute > 0) majority_ok = false;
    }
  }
  bool perfect_ok = true;
  for (double m : grid) {
    for (std::int64_t pos : {1, 7, 40}) {
      const ConfusionMatrix perfect{25, 0, 0, pos};
      if (std::abs(usefulness(perfect, m).relative - 1.0) > kMetricTolerance) perfect_ok = false;
    }
  }
  out.check(worst_u <= kMetricTolerance,
            fmt::format("usefulness vs brute force: max |diff| {:.2e} <= {:.0e}", worst_u,
                        kMetricTolerance));
  out.check(worst_f <= kMetricTolerance,
            fmt::format("f_beta vs brute force: max |diff| {:.2e} <= {:.0e}", worst_f,
                        kMetricTolerance));
  out.check(perfect_ok, "U_r = 1 for a perfect model at every mu");
  out.check(majority_ok, "U_a <= 0 for majority-class predictors at every mu");
  return out;
}

Outcome labeling_oracle() {
  Outcome out;
  const WindowConfig windows;  // inner [-8, 45], outer [-120, 120]
  out.check(windows.inner.lo == -8 && windows.inner.hi == 45 && windows.outer.lo == -120 &&
                windows.outer.hi == 120,
            "default windows [-8,45] and [-120,120]");
  Rng rng(202);
  const Date origin = *parse_date("2008-01-01");
  int mismatches = 0;
  std::map<Label, int> seen;
  for (int i = 0; i < 1000; ++i) {
    std::vector<int> event_days;
    std::vector<Date> event_dates;
    for (std::uint64_t k = rng.below(4); k > 0; --k) {
      const int d = static_cast<int>(rng.below(700)) - 350;
      event_days.push_back(d);
      event_dates.push_back(add_days(origin, d));
    }
    const int s = static_cast<int>(rng.below(700)) - 350;
    const Label got = label_pair(add_days(origin, s), event_dates, windows);
    if (got != oracle::brute_label(s, event_days, windows)) ++mismatches;
    ++seen[got];
  }
  out.check(mismatches == 0, fmt::format("1000 cases, {} mismatches", mismatches));
  out.check(seen.size() == 3,
            fmt::format("all three labels exercised ({} / {} / {})", seen[Label::Coinciding],
                        seen[Label::NonCoinciding], seen[Label::Undefined]));
  return out;
}

Outcome numerical_core() {
  Outcome out;
  double hs = 0;
  for (std::size_t v : {2u, 3u, 8u, 17u, 33u, 64u}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      hs = std::max(hs, oracle::hs_normalization_error(seed * 97 + v, v, 10));
    }
  }
  out.check(hs <= kHsTolerance,
            fmt::format("hierarchical softmax |sum p - 1| max {:.2e} <= {:.0e}", hs, kHsTolerance));
  double dm = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    dm = std::max({dm, oracle::dm_gradient_error(seed, false),
                   oracle::dm_gradient_error(seed + 500, true)});
  }
  out.check(dm < kGradientTolerance,
            fmt::format("embedding gradients max rel err {:.2e} < {:.0e}", dm, kGradientTolerance));
  double clf = 0;
  for (Activation act : {Activation::Relu, Activation::Logistic, Activation::Tanh}) {
    for (OutputForm form : {OutputForm::LinearLogits, OutputForm::LiteralSquashed}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        clf = std::max(clf, oracle::classifier_gradient_error(seed, act, form));
      }
    }
  }
  out.check(clf < kGradientTolerance, fmt::format("classifier gradients max rel err {:.2e} < {:.0e}",
                                                  clf, kGradientTolerance));
  return out;
}

Outcome huffman_check() {
  Outcome out;
  Rng rng(404);
  int bad_bound = 0;
  int bad_prefix = 0;
  int bad_cost = 0;
  for (int t = 0; t < 50; ++t) {
    const auto f = oracle::random_frequencies(rng, 2 + rng.below(300));
    const HuffmanTree tree = build_huffman(f);
    double total = 0;
    for (auto x : f) total += static_cast<double>(x);
    double len = 0;
    double entropy = 0;
    std::uint64_t cost = 0;
    for (std::size_t w = 0; w < f.size(); ++w) {
      const double p = static_cast<double>(f[w]) / total;
      len += p * static_cast<double>(tree.codes[w].size());
      entropy -= p * std::log2(p);
      cost += f[w] * tree.codes[w].size();
    }
    if (len > entropy + 1 + 1e-12) ++bad_bound;
    if (!oracle::prefix_free(tree.codes)) ++bad_prefix;
    if (cost != oracle::optimal_cost(f)) ++bad_cost;
  }
  out.check(bad_bound == 0, fmt::format("50 tables, {} exceed entropy + 1", bad_bound));
  out.check(bad_prefix == 0, fmt::format("50 tables, {} not prefix-free", bad_prefix));
  out.check(bad_cost == 0, fmt::format("50 tables, {} above the optimal cost", bad_cost));
  const HuffmanTree hand = build_huffman(std::vector<std::uint64_t>{4, 2, 1, 1});
  std::vector<std::size_t> lengths;
  for (const auto& c : hand.codes) lengths.push_back(c.size());
  out.check(lengths == std::vector<std::size_t>{1, 2, 3, 3}, "{4,2,1,1} -> lengths {1,2,3,3}");
  return out;
}

// ---------------------------------------------------------------------------
// Planted-signal pipeline.

SynthConfig planted_synth(double lambda) {
  SynthConfig c;
  c.entities = 20;
  c.events_per_entity = 2.5;
  c.lambda = lambda;
  c.span_days = 1095;
  c.sentences_per_entity_day = 0.76;
  c.seed = 11;
  return c;
}

EmbedConfig planted_embed() {
  EmbedConfig c;
  c.dim = 64;
  c.context_n = 5;
  c.seed = 12;
  return c;
}

ClassifierConfig planted_classifier() {
  ClassifierConfig c;
  c.input_dim = 64;
  c.hidden_units = 16;
  c.seed = 13;
  return c;
}

EvalConfig planted_eval() {
  EvalConfig c;
  c.classifier = planted_classifier();
  c.seed = 14;
  return c;
}

struct Pipeline {
  SynthCorpus synth;
  CorpusStore store;
  LabelSet labels;
  EmbeddingModel model;
  EvalInput input;
};

Pipeline run_pipeline(const SynthConfig& sc) {
  Pipeline p;
  p.synth = generate(sc);
  p.store = build_store(parse_corpus(p.synth.corpus), parse_lexicon(p.synth.lexicon));
  p.labels = label_corpus(p.store, p.synth.events, sc.windows);
  p.model = train_dm(p.store, planted_embed()).model;
  p.input = make_eval_input(p.store, p.model, p.labels.instances);
  return p;
}

std::vector<SentenceId> mention_ids(const CorpusStore& store) {
  std::vector<SentenceId> ids;
  for (std::size_t idx : store.mention_index()) ids.push_back(*store.sentences()[idx].sentence_id);
  return ids;
}

double ur_at(const EvalReport& r, double mu) {
  for (const auto& row : r.rows) {
    if (row.mu == mu) return row.mean_ur;
  }
  throw ConfigError(fmt::format("mu {} not in the grid", mu));
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// Shared with the index-algebra criterion.
std::vector<ScoredSentence> planted_scores;
Pipeline* planted_pipeline = nullptr;

Outcome planted_signal() {
  Outcome out;
  static Pipeline p = run_pipeline(planted_synth(0.9));
  planted_pipeline = &p;
  out.check(true, fmt::format("{} sentences, {} mention sentences, {} events, {} labeled "
                              "instances ({:.1f}% positive)",
                              p.store.sentences().size(), p.store.mention_count(),
                              p.synth.events.size(), p.labels.instances.size(),
                              100 * p.labels.stats.positive_rate()));

  const EvalConfig ec = planted_eval();
  const EvalReports random = evaluate_run(p.input, ec, Sampling::Random);
  const EvalReports entity = evaluate_run(p.input, ec, Sampling::LeaveEntitiesOut);
  out.check(random.vector.auc_mean >= kRandomAucFloor,
            fmt::format("random sampling AUC {:.3f} (sd {:.3f}) >= {}", random.vector.auc_mean,
                        random.vector.auc_std, kRandomAucFloor));
  out.check(entity.vector.auc_mean >= kEntityAucFloor,
            fmt::format("leave-entities-out AUC {:.3f} (sd {:.3f}) >= {}",
                        entity.vector.auc_mean, entity.vector.auc_std, kEntityAucFloor));
  for (const EvalReports* r : {&random, &entity}) {
    const double agg = ur_at(r->aggregated, kCompareMu);
    const double vec = ur_at(r->vector, kCompareMu);
    out.check(agg > vec, fmt::format("{}: aggregated U_r {:.3f} > vector U_r {:.3f} at mu {}",
                                     sampling_name(r->vector.strategy), agg, vec, kCompareMu));
  }

  const RelevanceClassifier clf =
      train_final(p.input, planted_classifier(), 0.2).classifier;
  const auto scores = score_all(clf, p.model, mention_ids(p.store));
  planted_scores = join_scores(p.store, scores);

  // Excerpts for the entity-month holding the most planted sentences.
  std::map<SentenceId, bool> planted;
  std::map<std::pair<EntityId, Period>, int> planted_count;
  for (const auto& row : p.synth.manifest) {
    planted[row.sentence_id] = row.planted;
    if (row.planted) {
      ++planted_count[{row.entity_id,
                       period_of(p.store.by_id(row.sentence_id).date, Granularity::Month)}];
    }
  }
  const auto busiest = std::max_element(
      planted_count.begin(), planted_count.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  const std::vector<EntityId> who = {busiest->first.first};
  ExcerptOptions xo;
  xo.infer.seed = 15;
  const ExcerptResult excerpts =
      rank_excerpts(clf, p.model, p.store, busiest->first.second, who, 10, xo);
  int hits = 0;
  for (const auto& e : excerpts.excerpts) hits += planted.at(e.center) ? 1 : 0;
  out.check(hits >= kPlantedTopFloor,
            fmt::format("{} {}: {} of top {} excerpts planted (>= {}), {} candidates",
                        who[0], busiest->first.second.label(), hits, excerpts.excerpts.size(),
                        kPlantedTopFloor, excerpts.candidates));

  // Entity index in event months against the median of months clear of
  // every event window.
  const IndexSet indices = build_indices(planted_scores, p.store.lexicon(), IndexOptions{});
  std::map<EntityId, std::vector<Date>> events;
  for (const auto& e : p.synth.events) events[e.entity_id].push_back(e.event_date);
  const WindowConfig w;
  int passing = 0;
  int with_events = 0;
  for (const auto& series : indices.entities) {
    const auto it = events.find(series.scope_id);
    if (it == events.end()) continue;
    ++with_events;
    std::set<Period> event_months;
    std::set<Period> touched;
    for (Date d : it->second) {
      event_months.insert(period_of(d, Granularity::Month));
      for (int k = w.inner.lo; k <= w.inner.hi; ++k) {
        touched.insert(period_of(add_days(d, k), Granularity::Month));
      }
    }
    std::vector<double> quiet;
    for (const auto& [period, point] : series.points) {
      if (!touched.count(period)) quiet.push_back(point.value);
    }
    const double base = median(quiet);
    bool all_above = true;
    for (const Period& m : event_months) {
      const auto pt = series.points.find(m);
      if (pt == series.points.end() || !(pt->second.value > base)) all_above = false;
    }
    passing += all_above ? 1 : 0;
  }
  const double share = with_events ? static_cast<double>(passing) / with_events : 0.0;
  out.check(share >= kIndexEntityShare,
            fmt::format("{} of {} entities above their non-event median in every event month "
                        "({:.0f}% >= {:.0f}%)",
                        passing, with_events, 100 * share, 100 * kIndexEntityShare));
  return out;
}

void check_control(Outcome& out, const std::string& name, const EvalReports& r) {
  for (const EvalReport* rep : {&r.vector, &r.aggregated}) {
    const std::string label =
        fmt::format("{} {} {}", name, sampling_name(rep->strategy), level_name(rep->level));
    out.check(std::abs(rep->auc_mean - 0.5) <= kControlAucBand,
              fmt::format("{}: AUC {:.3f} within 0.5 +- {}", label, rep->auc_mean,
                          kControlAucBand));
    double worst = -1e9;
    for (const auto& row : rep->rows) worst = std::max(worst, row.mean_ur);
    out.check(worst <= kControlUrCeiling,
              fmt::format("{}: max U_r over the grid {:.3f} <= {}", label, worst,
                          kControlUrCeiling));
  }
}

Outcome negative_controls() {
  Outcome out;
  const EvalConfig ec = planted_eval();
  const Pipeline null = run_pipeline(planted_synth(0.0));
  std::size_t planted = 0;
  for (const auto& row : null.synth.manifest) planted += row.planted ? 1 : 0;
  out.check(planted == 0, "lambda = 0 corpus has no planted sentences");
  check_control(out, "lambda=0", evaluate_run(null.input, ec, Sampling::Random));
  check_control(out, "lambda=0", evaluate_run(null.input, ec, Sampling::LeaveEntitiesOut));
  const Pipeline& p = *planted_pipeline;
  check_control(out, "shuffled", evaluate_run(with_shuffled_labels(p.input, 16), ec,
                                              Sampling::Random));
  return out;
}

// ---------------------------------------------------------------------------
// Determinism and index algebra.

struct SmallRun {
  std::string store, labels, embedding, classifier, scores, index, evaluation, excerpts;
};

SmallRun small_run() {
  SynthConfig sc;
  sc.entities = 5;
  sc.events_per_entity = 1.5;
  sc.span_days = 600;
  sc.background_vocab = 200;
  sc.event_vocab = 30;
  sc.sentences_per_entity_day = 0.4;
  sc.seed = 31;
  const SynthCorpus synth = generate(sc);
  const CorpusStore store = build_store(parse_corpus(synth.corpus), parse_lexicon(synth.lexicon));
  const LabelSet labels = label_corpus(store, synth.events, sc.windows);
  EmbedConfig ec;
  ec.dim = 16;
  ec.context_n = 3;
  ec.epochs = 3;
  ec.min_count = 2;
  ec.seed = 32;
  const EmbeddingModel model = train_dm(store, ec).model;
  const EvalInput input = make_eval_input(store, model, labels.instances);
  ClassifierConfig cc;
  cc.input_dim = 16;
  cc.hidden_units = 8;
  cc.epochs = 20;
  cc.seed = 33;
  const RelevanceClassifier clf = train_final(input, cc, 0.2).classifier;
  EvalConfig evc;
  evc.classifier = cc;
  evc.folds = 3;
  evc.reshuffles = 2;
  const EvalReports reports = evaluate_run(input, evc, Sampling::Random);
  const auto scores = score_all(clf, model, mention_ids(store));
  std::string score_csv = "sentence_id,score\n";
  for (const auto& [id, s] : scores) score_csv += fmt::format("{},{:.17g}\n", id, s);
  const IndexSet index = build_indices(join_scores(store, scores), store.lexicon(), IndexOptions{});
  ExcerptOptions xo;
  xo.infer_samples = 5;
  xo.infer.steps = 10;
  const Period month = period_of(synth.events.front().event_date, Granularity::Month);
  const auto excerpts = rank_excerpts(clf, model, store, month, {}, 10, xo);
  return {format_store(store),
          format_labels(labels.instances),
          model.serialize(),
          clf.serialize(),
          score_csv,
          format_index_csv(index, 2),
          format_report_csv(reports.vector) + format_report_csv(reports.aggregated),
          format_excerpts_csv(excerpts)};
}

Outcome determinism() {
  Outcome out;
  const SmallRun a = small_run();
  const SmallRun b = small_run();
  const std::vector<std::pair<std::string, std::pair<const std::string*, const std::string*>>>
      artifacts = {{"store", {&a.store, &b.store}},
                   {"labels", {&a.labels, &b.labels}},
                   {"embedding model", {&a.embedding, &b.embedding}},
                   {"classifier model", {&a.classifier, &b.classifier}},
                   {"scores", {&a.scores, &b.scores}},
                   {"index csv", {&a.index, &b.index}},
                   {"evaluation csv", {&a.evaluation, &b.evaluation}},
                   {"excerpts csv", {&a.excerpts, &b.excerpts}}};
  for (const auto& [name, pair] : artifacts) {
    out.check(*pair.first == *pair.second && !pair.first->empty(),
              fmt::format("{} identical across runs ({} bytes, fnv {:016x})", name,
                          pair.first->size(), fnv1a64(*pair.first)));
  }

  const auto dir = std::filesystem::temp_directory_path() / "distress_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const EmbeddingModel model = EmbeddingModel::deserialize(a.embedding);
  const RelevanceClassifier clf = RelevanceClassifier::deserialize(a.classifier);
  model.save(dir / "embedding.bin");
  clf.save(dir / "classifier.bin");
  const EmbeddingModel model_back = EmbeddingModel::load(dir / "embedding.bin");
  const RelevanceClassifier clf_back = RelevanceClassifier::load(dir / "classifier.bin");
  out.check(model_back == model && read_file(dir / "embedding.bin") == a.embedding &&
                model_back.serialize() == a.embedding,
            "embedding save/load round trip bit-exact");
  out.check(clf_back == clf && read_file(dir / "classifier.bin") == a.classifier &&
                clf_back.serialize() == a.classifier,
            "classifier save/load round trip bit-exact");
  const CorpusStore store = parse_store(a.store);
  out.check(format_store(store) == a.store, "corpus store round trip bit-exact");
  std::filesystem::remove_all(dir);
  return out;
}

Outcome index_algebra() {
  Outcome out;
  if (planted_scores.empty()) {
    out.check(false, "planted corpus scores unavailable");
    return out;
  }
  const IndexSet set =
      build_indices(planted_scores, planted_pipeline->store.lexicon(), IndexOptions{});
  std::map<std::pair<EntityId, Period>, double> direct;
  for (const auto& s : planted_scores) {
    for (const auto& e : s.entities) direct[{e, period_of(s.date, Granularity::Month)}] += s.score;
  }
  double worst = 0;
  std::size_t points = 0;
  for (const auto& series : set.entities) {
    for (const auto& [p, point] : series.points) {
      worst = std::max(worst, std::abs(point.value * static_cast<double>(point.count) -
                                       direct.at({series.scope_id, p})));
      ++points;
    }
  }
  out.check(points == direct.size() && worst <= kDecompositionTolerance,
            fmt::format("sum I*|S| = sum M over {} entity-months: max |diff| {:.2e} <= {:.0e}",
                        points, worst, kDecompositionTolerance));

  const std::vector<EntityPeriodValue> members = {{0.3, 2}, {0.5, 4}};
  const double literal = *group_index(members, 2, GroupMode::Literal);
  const double normalized = *group_index(members, 2, GroupMode::Normalized);
  out.check(std::abs(literal - 1.3) <= kDecompositionTolerance,
            fmt::format("literal group index {:.4f} = 1.3", literal));
  out.check(std::abs(normalized - 13.0 / 30.0) <= kDecompositionTolerance,
            fmt::format("normalized group index {:.4f} = 0.4333", normalized));
  return out;
}

}  // namespace

int main() {
  report(1, "metric oracle", 1, metric_oracle);
  report(2, "labeling oracle", 1, labeling_oracle);
  report(3, "numerical core", 30, numerical_core);
  report(4, "huffman", 1, huffman_check);
  report(5, "end-to-end planted signal", 300, planted_signal);
  report(6, "negative controls", 300, negative_controls);
  report(7, "determinism and persistence", 120, determinism);
  report(8, "index algebra", 1, index_algebra);
  fmt::print("{} of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
