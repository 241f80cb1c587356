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

#include "distress/describe.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/rng.hpp"
#include "distress/text_io.hpp"

namespace distress {

namespace {

std::size_t corpus_position(const CorpusStore& store, const Sentence& s) {
  return static_cast<std::size_t>(&s - store.sentences().data());
}

bool has_vocab_token(const EmbeddingModel& model, const Sentence& s) {
  return std::any_of(s.tokens.begin(), s.tokens.end(),
                     [&](const std::string& t) { return model.vocabulary().find(t).has_value(); });
}

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < t; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += t) fn(i);
    });
  }
  for (auto& worker : workers) worker.join();
}

}  // namespace

std::optional<double> neighbor_relevance(const RelevanceClassifier& clf,
                                         const EmbeddingModel& model,
                                         const CorpusStore& store, const Sentence& neighbor,
                                         const ExcerptOptions& options) {
  if (options.infer_samples < 1) throw ConfigError("infer_samples must be at least 1");
  if (!has_vocab_token(model, neighbor)) return std::nullopt;
  const std::size_t position = corpus_position(store, neighbor);
  std::vector<double> mean(model.dim(), 0.0);
  for (int j = 0; j < options.infer_samples; ++j) {
    InferOptions infer = options.infer;
    infer.seed = derive_seed(options.infer.seed + static_cast<std::uint64_t>(j), position);
    const auto v = infer_vector(model, neighbor.tokens, infer);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
  }
  for (double& x : mean) x /= static_cast<double>(options.infer_samples);
  return clf.relevance(mean);
}

ExcerptScore score_excerpt(const RelevanceClassifier& clf, const EmbeddingModel& model,
                           const CorpusStore& store, SentenceId center,
                           const ExcerptOptions& options) {
  const Sentence& s = store.by_id(center);
  ExcerptScore out;
  out.center = clf.relevance(model.extract_vector(center));
  out.score = out.center;
  if (const Sentence* prev = store.neighbor(s, -1)) {
    out.prev = neighbor_relevance(clf, model, store, *prev, options);
  }
  if (const Sentence* next = store.neighbor(s, +1)) {
    out.next = neighbor_relevance(clf, model, store, *next, options);
  }
  if (out.prev) out.score = std::max(out.score, *out.prev);
  if (out.next) out.score = std::max(out.score, *out.next);
  return out;
}

ExcerptResult rank_excerpts(const RelevanceClassifier& clf, const EmbeddingModel& model,
                            const CorpusStore& store, const Period& period,
                            std::span<const EntityId> entity_set, std::size_t k,
                            const ExcerptOptions& options) {
  const std::set<EntityId> wanted(entity_set.begin(), entity_set.end());
  std::vector<SentenceId> candidates;
  for (std::size_t idx : store.mention_index()) {
    const Sentence& s = store.sentences()[idx];
    if (period_of(s.date, period.unit) != period) continue;
    const bool match =
        wanted.empty() || std::any_of(s.mentions.begin(), s.mentions.end(),
                                      [&](const EntityId& e) { return wanted.count(e) != 0; });
    if (match) candidates.push_back(*s.sentence_id);
  }

  // Neighbor terms depend only on the neighbor, so each is computed once.
  std::vector<const Sentence*> neighbors;
  std::map<std::size_t, std::size_t> slot;
  for (SentenceId id : candidates) {
    const Sentence& s = store.by_id(id);
    for (int delta : {-1, 1}) {
      if (const Sentence* n = store.neighbor(s, delta)) {
        if (slot.emplace(corpus_position(store, *n), neighbors.size()).second) {
          neighbors.push_back(n);
        }
      }
    }
  }
  std::vector<std::optional<double>> terms(neighbors.size());
  parallel_for(neighbors.size(), options.threads, [&](std::size_t i) {
    terms[i] = neighbor_relevance(clf, model, store, *neighbors[i], options);
  });

  struct Scored {
    SentenceId id;
    double score;
  };
  std::vector<Scored> scored;
  for (SentenceId id : candidates) {
    const Sentence& s = store.by_id(id);
    double x = clf.relevance(model.extract_vector(id));
    for (int delta : {-1, 1}) {
      if (const Sentence* n = store.neighbor(s, delta)) {
        if (const auto& term = terms[slot.at(corpus_position(store, *n))]) {
          x = std::max(x, *term);
        }
      }
    }
    scored.push_back({id, x});
  }
  std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    const Sentence& sa = store.by_id(a.id);
    const Sentence& sb = store.by_id(b.id);
    if (sa.date != sb.date) return sa.date < sb.date;
    const auto& da = store.doc_id(sa);
    const auto& db = store.doc_id(sb);
    if (da != db) return da < db;
    return sa.position < sb.position;
  });

  ExcerptResult result;
  result.candidates = candidates.size();
  std::set<std::vector<std::string>> seen;
  for (const Scored& c : scored) {
    const Sentence& s = store.by_id(c.id);
    if (!seen.insert(s.tokens).second) {
      result.deduplicated.push_back(c.id);
      continue;
    }
    if (result.excerpts.size() >= k) continue;
    Excerpt e;
    e.rank = static_cast<int>(result.excerpts.size()) + 1;
    e.center = c.id;
    e.score = c.score;
    e.date = s.date;
    e.doc_id = store.doc_id(s);
    e.entities = s.mentions;
    if (const Sentence* p = store.neighbor(s, -1)) e.prev_text = p->text;
    e.center_text = s.text;
    if (const Sentence* n = store.neighbor(s, +1)) e.next_text = n->text;
    result.excerpts.push_back(std::move(e));
  }
  return result;
}

std::string format_excerpts_csv(const ExcerptResult& result) {
  std::string out = "rank,score,date,doc_id,entity_ids,prev,center,next\n";
  for (const auto& e : result.excerpts) {
    out += fmt::format("{},{:.17g},{},{},{},{},{},{}\n", e.rank, e.score,
                       format_date(e.date), csv_field(e.doc_id),
                       csv_field(fmt::format("{}", fmt::join(e.entities, " "))),
                       csv_field(e.prev_text.value_or("")), csv_field(e.center_text),
                       csv_field(e.next_text.value_or("")));
  }
  return out;
}

std::string format_excerpts_text(const ExcerptResult& result) {
  std::string out;
  for (const auto& e : result.excerpts) {
    out += fmt::format("{} {}, relevance {:.3f}, rank {} [{}]\n", e.doc_id,
                       format_date(e.date), e.score, e.rank, fmt::join(e.entities, ", "));
    if (e.prev_text) out += fmt::format("    {}\n", *e.prev_text);
    out += fmt::format("  > {}\n", e.center_text);
    if (e.next_text) out += fmt::format("    {}\n", *e.next_text);
    out += '\n';
  }
  return out;
}

}  // namespace distress
