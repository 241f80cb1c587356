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

#ifndef DISTRESS_EMBEDDING_HPP_
#define DISTRESS_EMBEDDING_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distress/corpus.hpp"
#include "distress/huffman.hpp"
#include "distress/vocabulary.hpp"

namespace distress {

template <typename T>
T logistic(T a) {
  if (a >= 0) return T(1) / (T(1) + std::exp(-a));
  const T e = std::exp(a);
  return e / (T(1) + e);
}

template <typename T>
T log_logistic(T a) {
  return a >= 0 ? -std::log1p(std::exp(-a)) : a - std::log1p(std::exp(a));
}

// Parameters of the distributed-memory model, row-major.
template <typename T>
struct DmParams {
  std::size_t dim = 0;
  std::vector<T> word_vecs;   // |V| x dim
  std::vector<T> sent_vecs;   // sentences x dim
  std::vector<T> node_vecs;   // (|V|-1) x dim, hierarchical softmax
  std::vector<T> projection;  // dim x dim (U)
  std::vector<T> bias;        // dim (beta)

  T* word(std::size_t id) { return word_vecs.data() + id * dim; }
  const T* word(std::size_t id) const { return word_vecs.data() + id * dim; }
  T* sentence(std::size_t row) { return sent_vecs.data() + row * dim; }
  const T* sentence(std::size_t row) const { return sent_vecs.data() + row * dim; }
  T* node(std::size_t id) { return node_vecs.data() + id * dim; }
  const T* node(std::size_t id) const { return node_vecs.data() + id * dim; }

  bool operator==(const DmParams&) const = default;
};

// One prediction: the target word from the preceding context words, with the
// sentence vector joining the average unless `sentence` is null.
template <typename T>
struct DmWindow {
  const T* sentence = nullptr;
  std::span<const std::int32_t> context;
  std::int32_t target = 0;
};

template <typename T>
struct WindowGrad {
  std::vector<T> input;      // x, mean of the input vectors
  std::vector<T> hidden;     // h = beta + U x (or x)
  std::vector<T> d_hidden;   // dL/dh
  std::vector<T> d_input;    // dL/dx; each averaged vector receives d_input / inputs
  std::vector<T> node_coef;  // dL/dz_j; dL/d(node_j) = node_coef[j] * h
  T log_prob = 0;
  std::size_t inputs = 0;
};

// h = beta + U x, or h = x without a projection.
template <typename T>
void project(const DmParams<T>& p, const T* x, bool use_projection, T* h) {
  const std::size_t d = p.dim;
  if (!use_projection) {
    for (std::size_t i = 0; i < d; ++i) h[i] = x[i];
    return;
  }
  for (std::size_t r = 0; r < d; ++r) {
    T acc = p.bias[r];
    const T* row = p.projection.data() + r * d;
    for (std::size_t c = 0; c < d; ++c) acc += row[c] * x[c];
    h[r] = acc;
  }
}

// log p(word | h) under the hierarchical softmax: bit 0 takes sigma(z),
// bit 1 takes sigma(-z), z = node . h.
template <typename T>
T hs_log_prob(const DmParams<T>& p, const HuffmanTree& tree, const T* h,
              std::int32_t word) {
  const auto& code = tree.codes[word];
  const auto& path = tree.paths[word];
  T total = 0;
  for (std::size_t j = 0; j < code.size(); ++j) {
    const T* node = p.node(path[j]);
    T z = 0;
    for (std::size_t i = 0; i < p.dim; ++i) z += node[i] * h[i];
    total += log_logistic(code[j] == 0 ? z : -z);
  }
  return total;
}

// Loss is -log p(target | window). Fills every field of `g`.
template <typename T>
void dm_forward_backward(const DmParams<T>& p, const HuffmanTree& tree,
                         const DmWindow<T>& w, bool use_projection, WindowGrad<T>& g) {
  const std::size_t d = p.dim;
  g.input.assign(d, T(0));
  g.hidden.resize(d);
  g.d_hidden.assign(d, T(0));
  g.d_input.resize(d);
  g.inputs = w.context.size() + (w.sentence ? 1 : 0);

  if (w.sentence) {
    for (std::size_t i = 0; i < d; ++i) g.input[i] += w.sentence[i];
  }
  for (const std::int32_t c : w.context) {
    const T* v = p.word(c);
    for (std::size_t i = 0; i < d; ++i) g.input[i] += v[i];
  }
  const T inv = T(1) / static_cast<T>(g.inputs);
  for (std::size_t i = 0; i < d; ++i) g.input[i] *= inv;
  project(p, g.input.data(), use_projection, g.hidden.data());

  const auto& code = tree.codes[w.target];
  const auto& path = tree.paths[w.target];
  g.node_coef.resize(code.size());
  g.log_prob = 0;
  for (std::size_t j = 0; j < code.size(); ++j) {
    const T* node = p.node(path[j]);
    T z = 0;
    for (std::size_t i = 0; i < d; ++i) z += node[i] * g.hidden[i];
    const T sign = code[j] == 0 ? T(1) : T(-1);
    g.log_prob += log_logistic(sign * z);
    // d/dz of -log sigma(sign z)
    const T coef = -sign * (T(1) - logistic(sign * z));
    g.node_coef[j] = coef;
    for (std::size_t i = 0; i < d; ++i) g.d_hidden[i] += coef * node[i];
  }

  if (!use_projection) {
    g.d_input = g.d_hidden;
    return;
  }
  std::fill(g.d_input.begin(), g.d_input.end(), T(0));
  for (std::size_t r = 0; r < d; ++r) {
    const T* row = p.projection.data() + r * d;
    const T dh = g.d_hidden[r];
    for (std::size_t c = 0; c < d; ++c) g.d_input[c] += row[c] * dh;
  }
}

struct EmbedConfig {
  std::size_t dim = 600;
  std::size_t context_n = 5;
  int epochs = 10;
  double lr_initial = 0.025;
  double lr_final = 0.0001;
  std::uint64_t min_count = 5;
  std::uint64_t seed = 1;
  bool word_only_pass = true;
  bool learn_projection = false;
  int threads = 1;

  void validate() const;
};

struct InferOptions {
  int steps = 50;
  double lr_initial = 0.0125;
  double lr_final = 0.0001;
  std::uint64_t seed = 1;
};

class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  // Fresh model: word and sentence vectors uniform in +-0.5/dim, output node
  // vectors zero, identity projection and zero bias.
  static EmbeddingModel create(Vocabulary vocab, std::size_t dim, std::size_t context_n,
                               std::size_t sentence_count, bool learn_projection,
                               std::uint64_t seed);

  std::size_t dim() const { return params_.dim; }
  std::size_t context_n() const { return context_n_; }
  bool learn_projection() const { return learn_projection_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const HuffmanTree& tree() const { return tree_; }
  const DmParams<float>& params() const { return params_; }
  DmParams<float>& params() { return params_; }
  std::size_t sentence_count() const { return untrained_.size(); }
  // True for sentences too short to yield a training window.
  bool untrained(SentenceId id) const;
  void set_untrained(SentenceId id, bool flag) { untrained_.at(id) = flag ? 1 : 0; }

  // beta + U D_s. Throws DataError for an unknown id.
  std::vector<double> extract_vector(SentenceId id) const;
  // beta + U row for an arbitrary raw input row.
  std::vector<double> project_row(std::span<const float> row) const;

  // p(word | input) with input projected through beta + U. Throws DataError
  // for a word outside the vocabulary.
  double hs_prob(std::span<const double> input, std::string_view word) const;

  // p(target | sentence, context) for in-vocabulary ids.
  double window_prob(std::optional<SentenceId> sentence,
                     std::span<const std::int32_t> context, std::int32_t target) const;

  std::string serialize() const;
  static EmbeddingModel deserialize(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static EmbeddingModel load(const std::filesystem::path& path);

  bool operator==(const EmbeddingModel& other) const {
    return context_n_ == other.context_n_ &&
           learn_projection_ == other.learn_projection_ && vocab_ == other.vocab_ &&
           tree_ == other.tree_ && params_ == other.params_ &&
           untrained_ == other.untrained_;
  }

 private:
  std::size_t context_n_ = 5;
  bool learn_projection_ = false;
  Vocabulary vocab_;
  HuffmanTree tree_;
  DmParams<float> params_;
  std::vector<std::uint8_t> untrained_;
};

struct EmbedTrainResult {
  EmbeddingModel model;
  std::vector<double> epoch_objective;  // mean log probability per epoch
  std::size_t windows_per_epoch = 0;
  std::size_t skipped_sentences = 0;  // mention sentences with no window
};

// Trains one vector per mention-bearing sentence (row = sentence_id), plus
// word-only windows over the other sentences when enabled.
EmbedTrainResult train_dm(const CorpusStore& store, const EmbedConfig& config);

// Mean log p(next word | sentence, context) over every window of the
// mention-bearing sentences.
double mean_log_prob(const EmbeddingModel& model, const CorpusStore& store);

// Fits a fresh sentence vector to `tokens` with all shared parameters frozen
// and returns its projected form. Throws DataError when no token is in the
// vocabulary.
std::vector<double> infer_vector(const EmbeddingModel& model,
                                 const std::vector<std::string>& tokens,
                                 const InferOptions& options);

}  // namespace distress

#endif  // DISTRESS_EMBEDDING_HPP_
