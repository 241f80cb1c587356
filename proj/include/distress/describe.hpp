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

#ifndef DISTRESS_DESCRIBE_HPP_
#define DISTRESS_DESCRIBE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distress/classifier.hpp"
#include "distress/corpus.hpp"
#include "distress/embedding.hpp"
#include "distress/signal.hpp"

namespace distress {

struct ExcerptOptions {
  int infer_samples = 100;
  InferOptions infer;  // infer.seed is the base seed
  int threads = 1;
};

struct ExcerptScore {
  double score = 0;  // x_i
  double center = 0;
  std::optional<double> prev;
  std::optional<double> next;
};

// M of the mean of `infer_samples` inferred vectors of `neighbor`; sample j
// is seeded from (seed + j, neighbor's corpus position). nullopt when every
// token is out of vocabulary.
std::optional<double> neighbor_relevance(const RelevanceClassifier& clf,
                                         const EmbeddingModel& model,
                                         const CorpusStore& store, const Sentence& neighbor,
                                         const ExcerptOptions& options);

// x_i = max(M(V_center), neighbor terms for the sentences right before and
// after, when present).
ExcerptScore score_excerpt(const RelevanceClassifier& clf, const EmbeddingModel& model,
                           const CorpusStore& store, SentenceId center,
                           const ExcerptOptions& options);

struct Excerpt {
  int rank = 0;
  SentenceId center = 0;
  double score = 0;
  Date date;
  std::string doc_id;
  std::vector<EntityId> entities;
  std::optional<std::string> prev_text;
  std::string center_text;
  std::optional<std::string> next_text;
};

struct ExcerptResult {
  std::size_t candidates = 0;
  std::vector<Excerpt> excerpts;
  std::vector<SentenceId> deduplicated;  // dropped as exact token duplicates
};

// Candidates: mention-bearing sentences in `period` mentioning any entity of
// `entity_set` (every entity when the set is empty). Sorted by x_i
// descending, then date, doc_id and position; duplicates by token sequence
// keep their best-ranked instance. Returns at most k.
ExcerptResult rank_excerpts(const RelevanceClassifier& clf, const EmbeddingModel& model,
                            const CorpusStore& store, const Period& period,
                            std::span<const EntityId> entity_set, std::size_t k,
                            const ExcerptOptions& options);

// rank,score,date,doc_id,entity_ids,prev,center,next
std::string format_excerpts_csv(const ExcerptResult& result);
std::string format_excerpts_text(const ExcerptResult& result);

}  // namespace distress

#endif  // DISTRESS_DESCRIBE_HPP_
