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

#include "distress/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/rng.hpp"
#include "distress/text_io.hpp"

namespace distress {

namespace {

constexpr char kMagic[8] = {'D', 'S', 'E', 'M', 'B', 'E', 'D', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

void init_uniform(std::span<float> values, std::size_t dim, Rng& rng) {
  const double scale = 1.0 / static_cast<double>(dim);
  for (float& v : values) v = static_cast<float>((rng.uniform() - 0.5) * scale);
}

// SGD step on the output nodes, projection and context word vectors of a
// window whose gradient is in `g`.
void update_shared(DmParams<float>& p, const HuffmanTree& tree, const DmWindow<float>& w,
                   bool use_projection, const WindowGrad<float>& g, float lr) {
  const std::size_t d = p.dim;
  const auto& path = tree.paths[w.target];
  for (std::size_t j = 0; j < path.size(); ++j) {
    float* node = p.node(path[j]);
    const float step = lr * g.node_coef[j];
    for (std::size_t i = 0; i < d; ++i) node[i] -= step * g.hidden[i];
  }
  if (use_projection) {
    for (std::size_t r = 0; r < d; ++r) {
      const float dh = lr * g.d_hidden[r];
      p.bias[r] -= dh;
      float* row = p.projection.data() + r * d;
      for (std::size_t c = 0; c < d; ++c) row[c] -= dh * g.input[c];
    }
  }
  const float step = lr / static_cast<float>(g.inputs);
  for (const std::int32_t c : w.context) {
    float* v = p.word(c);
    for (std::size_t i = 0; i < d; ++i) v[i] -= step * g.d_input[i];
  }
}

void update_sentence(std::span<float> sentence, const WindowGrad<float>& g, float lr) {
  const float step = lr / static_cast<float>(g.inputs);
  for (std::size_t i = 0; i < sentence.size(); ++i) sentence[i] -= step * g.d_input[i];
}

std::size_t window_count(std::size_t length, std::size_t n) {
  return length > n ? length - n : 0;
}

struct TrainUnit {
  std::optional<std::size_t> row;  // sentence row, empty for word-only units
  std::vector<std::int32_t> ids;
};

}  // namespace

void EmbedConfig::validate() const {
  if (dim == 0) throw ConfigError("embedding dim must be positive");
  if (context_n == 0) throw ConfigError("context_n must be positive");
  if (epochs < 1) throw ConfigError("embedding epochs must be at least 1");
  if (!(lr_initial > lr_final && lr_final > 0)) {
    throw ConfigError("learning rates must satisfy initial > final > 0");
  }
  if (min_count < 1) throw ConfigError("min_count must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

EmbeddingModel EmbeddingModel::create(Vocabulary vocab, std::size_t dim,
                                      std::size_t context_n, std::size_t sentence_count,
                                      bool learn_projection, std::uint64_t seed) {
  if (dim == 0 || context_n == 0) throw ConfigError("dim and context_n must be positive");
  EmbeddingModel m;
  m.tree_ = build_huffman(vocab.frequencies());
  m.vocab_ = std::move(vocab);
  m.context_n_ = context_n;
  m.learn_projection_ = learn_projection;
  auto& p = m.params_;
  p.dim = dim;
  p.word_vecs.resize(m.vocab_.size() * dim);
  p.sent_vecs.resize(sentence_count * dim);
  p.node_vecs.assign((m.vocab_.size() - 1) * dim, 0.0f);
  p.projection.assign(dim * dim, 0.0f);
  for (std::size_t i = 0; i < dim; ++i) p.projection[i * dim + i] = 1.0f;
  p.bias.assign(dim, 0.0f);
  Rng rng(seed);
  init_uniform(p.word_vecs, dim, rng);
  init_uniform(p.sent_vecs, dim, rng);
  m.untrained_.assign(sentence_count, 0);
  return m;
}

bool EmbeddingModel::untrained(SentenceId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= untrained_.size()) {
    throw DataError(fmt::format("unknown sentence id {}", id));
  }
  return untrained_[id] != 0;
}

std::vector<double> EmbeddingModel::project_row(std::span<const float> row) const {
  const std::size_t d = dim();
  std::vector<double> out(d);
  if (!learn_projection_) {
    // Identity projection with zero bias.
    for (std::size_t i = 0; i < d; ++i) out[i] = row[i];
    return out;
  }
  for (std::size_t r = 0; r < d; ++r) {
    double acc = params_.bias[r];
    const float* u = params_.projection.data() + r * d;
    for (std::size_t c = 0; c < d; ++c) acc += static_cast<double>(u[c]) * row[c];
    out[r] = acc;
  }
  return out;
}

std::vector<double> EmbeddingModel::extract_vector(SentenceId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= sentence_count()) {
    throw DataError(fmt::format("unknown sentence id {}", id));
  }
  return project_row({params_.sentence(static_cast<std::size_t>(id)), dim()});
}

double EmbeddingModel::hs_prob(std::span<const double> input,
                               std::string_view word) const {
  const auto id = vocab_.find(word);
  if (!id) throw DataError(fmt::format("word '{}' is not in the vocabulary", word));
  if (input.size() != dim()) throw DataError("input vector has the wrong dimension");
  const std::size_t d = dim();
  std::vector<double> h(d);
  for (std::size_t r = 0; r < d; ++r) {
    double acc = params_.bias[r];
    const float* u = params_.projection.data() + r * d;
    for (std::size_t c = 0; c < d; ++c) acc += static_cast<double>(u[c]) * input[c];
    h[r] = acc;
  }
  double log_p = 0;
  const auto& code = tree_.codes[*id];
  const auto& path = tree_.paths[*id];
  for (std::size_t j = 0; j < code.size(); ++j) {
    const float* node = params_.node(path[j]);
    double z = 0;
    for (std::size_t i = 0; i < d; ++i) z += static_cast<double>(node[i]) * h[i];
    log_p += log_logistic(code[j] == 0 ? z : -z);
  }
  return std::exp(log_p);
}

double EmbeddingModel::window_prob(std::optional<SentenceId> sentence,
                                   std::span<const std::int32_t> context,
                                   std::int32_t target) const {
  DmWindow<float> w;
  if (sentence) {
    if (*sentence < 0 || static_cast<std::size_t>(*sentence) >= sentence_count()) {
      throw DataError(fmt::format("unknown sentence id {}", *sentence));
    }
    w.sentence = params_.sentence(static_cast<std::size_t>(*sentence));
  }
  w.context = context;
  w.target = target;
  WindowGrad<float> g;
  dm_forward_backward(params_, tree_, w, learn_projection_, g);
  return std::exp(static_cast<double>(g.log_prob));
}

EmbedTrainResult train_dm(const CorpusStore& store, const EmbedConfig& config) {
  config.validate();
  Vocabulary vocab = build_vocab(store, config.min_count, config.word_only_pass);
  if (vocab.size() < 2) throw ConfigError("vocabulary needs at least two words");

  EmbedTrainResult result;
  result.model = EmbeddingModel::create(std::move(vocab), config.dim, config.context_n,
                                        store.mention_count(), config.learn_projection,
                                        config.seed);
  EmbeddingModel& model = result.model;
  const std::size_t n = config.context_n;

  std::vector<TrainUnit> units;
  for (const Sentence& s : store.sentences()) {
    if (!s.sentence_id && !config.word_only_pass) continue;
    TrainUnit unit;
    if (s.sentence_id) unit.row = static_cast<std::size_t>(*s.sentence_id);
    unit.ids = model.vocabulary().encode(s.tokens);
    const std::size_t windows = window_count(unit.ids.size(), n);
    if (windows == 0) {
      if (unit.row) {
        model.set_untrained(*s.sentence_id, true);
        ++result.skipped_sentences;
      }
      continue;
    }
    result.windows_per_epoch += windows;
    units.push_back(std::move(unit));
  }
  if (result.windows_per_epoch == 0) {
    throw DataError("corpus yields no training windows");
  }

  auto& params = model.params();
  const HuffmanTree& tree = model.tree();
  const bool use_projection = config.learn_projection;
  const double total =
      static_cast<double>(result.windows_per_epoch) * static_cast<double>(config.epochs);
  std::atomic<std::uint64_t> processed{0};

  // Trains units[order[begin..end)] and returns the summed log probability.
  auto run_range = [&](const std::vector<std::size_t>& order, std::size_t begin,
                       std::size_t end) {
    WindowGrad<float> g;
    double objective = 0;
    for (std::size_t k = begin; k < end; ++k) {
      const TrainUnit& unit = units[order[k]];
      float* sentence = unit.row ? params.sentence(*unit.row) : nullptr;
      const std::size_t windows = window_count(unit.ids.size(), n);
      for (std::size_t i = 0; i < windows; ++i) {
        const double progress =
            static_cast<double>(processed.fetch_add(1, std::memory_order_relaxed)) / total;
        const float lr = static_cast<float>(
            config.lr_initial - (config.lr_initial - config.lr_final) * progress);
        DmWindow<float> w{sentence, std::span<const std::int32_t>(unit.ids).subspan(i, n),
                          unit.ids[i + n]};
        dm_forward_backward<float>(params, tree, w, use_projection, g);
        objective += g.log_prob;
        update_shared(params, tree, w, use_projection, g, lr);
        if (sentence) update_sentence({sentence, params.dim}, g, lr);
      }
    }
    return objective;
  };

  std::vector<std::size_t> order(units.size());
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(config.seed, 0x5eed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(std::span<std::size_t>(order));

    double objective = 0;
    if (config.threads == 1) {
      objective = run_range(order, 0, order.size());
    } else {
      // Workers update the shared parameters without locking.
      const std::size_t t = static_cast<std::size_t>(config.threads);
      std::vector<double> partial(t, 0.0);
      std::vector<std::thread> workers;
      for (std::size_t w = 0; w < t; ++w) {
        const std::size_t begin = order.size() * w / t;
        const std::size_t end = order.size() * (w + 1) / t;
        workers.emplace_back([&, w, begin, end] { partial[w] = run_range(order, begin, end); });
      }
      for (auto& worker : workers) worker.join();
      objective = std::accumulate(partial.begin(), partial.end(), 0.0);
    }
    result.epoch_objective.push_back(objective /
                                     static_cast<double>(result.windows_per_epoch));
  }
  return result;
}

double mean_log_prob(const EmbeddingModel& model, const CorpusStore& store) {
  const std::size_t n = model.context_n();
  WindowGrad<float> g;
  double total = 0;
  std::size_t windows = 0;
  for (std::size_t idx : store.mention_index()) {
    const Sentence& s = store.sentences()[idx];
    if (static_cast<std::size_t>(*s.sentence_id) >= model.sentence_count()) continue;
    const auto ids = model.vocabulary().encode(s.tokens);
    const float* row = model.params().sentence(static_cast<std::size_t>(*s.sentence_id));
    for (std::size_t i = 0; i < window_count(ids.size(), n); ++i) {
      DmWindow<float> w{row, std::span<const std::int32_t>(ids).subspan(i, n), ids[i + n]};
      dm_forward_backward<float>(model.params(), model.tree(), w, model.learn_projection(),
                                 g);
      total += g.log_prob;
      ++windows;
    }
  }
  if (windows == 0) throw DataError("no windows to evaluate");
  return total / static_cast<double>(windows);
}

std::vector<double> infer_vector(const EmbeddingModel& model,
                                 const std::vector<std::string>& tokens,
                                 const InferOptions& options) {
  const auto ids = model.vocabulary().encode(tokens);
  if (ids.empty()) throw DataError("no token of the sentence is in the vocabulary");
  if (options.steps < 0) throw ConfigError("inference steps must be non-negative");

  const std::size_t d = model.dim();
  const std::size_t n = model.context_n();
  std::vector<float> row(d);
  Rng rng(options.seed);
  init_uniform(row, d, rng);

  const std::size_t windows = window_count(ids.size(), n);
  const double total = static_cast<double>(windows) * options.steps;
  WindowGrad<float> g;
  std::size_t done = 0;
  for (int step = 0; step < options.steps; ++step) {
    for (std::size_t i = 0; i < windows; ++i) {
      const double progress = static_cast<double>(done++) / total;
      const float lr = static_cast<float>(
          options.lr_initial - (options.lr_initial - options.lr_final) * progress);
      DmWindow<float> w{row.data(), std::span<const std::int32_t>(ids).subspan(i, n),
                        ids[i + n]};
      dm_forward_backward<float>(model.params(), model.tree(), w, model.learn_projection(),
                                 g);
      update_sentence(row, g, lr);
    }
  }
  return model.project_row(row);
}

// File layout (little-endian):
//   magic[8] version:u32 dim:u32 context_n:u32 flags:u32
//   min_count:u64 vocab_size:u64 { word:str count:u64 }*
//   { code_len:u32 code:u8[code_len] path:i32[code_len] }*   (per word)
//   sentence_count:u64 untrained:u8[sentence_count]
//   f32 matrices: words, sentences, nodes, projection, bias
std::string EmbeddingModel::serialize() const {
  std::ostringstream out(std::ios::binary);
  BinaryWriter w(out);
  w.bytes({kMagic, sizeof kMagic});
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(dim()));
  w.u32(static_cast<std::uint32_t>(context_n_));
  w.u32(learn_projection_ ? 1u : 0u);
  w.u64(vocab_.min_count());
  w.u64(vocab_.size());
  for (const auto& e : vocab_.entries()) {
    w.str(e.word);
    w.u64(e.count);
  }
  for (std::size_t i = 0; i < tree_.leaves(); ++i) {
    w.u32(static_cast<std::uint32_t>(tree_.codes[i].size()));
    for (auto bit : tree_.codes[i]) w.bytes({reinterpret_cast<const char*>(&bit), 1});
    for (auto node : tree_.paths[i]) w.i32(node);
  }
  w.u64(untrained_.size());
  for (auto flag : untrained_) w.bytes({reinterpret_cast<const char*>(&flag), 1});
  w.f32s(params_.word_vecs);
  w.f32s(params_.sent_vecs);
  w.f32s(params_.node_vecs);
  w.f32s(params_.projection);
  w.f32s(params_.bias);
  return std::move(out).str();
}

EmbeddingModel EmbeddingModel::deserialize(std::string_view bytes) {
  std::istringstream in{std::string(bytes), std::ios::binary};
  BinaryReader r(in);
  if (r.bytes(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw DataError("not an embedding model file");
  }
  if (const auto v = r.u32(); v != kFormatVersion) {
    throw DataError(fmt::format("unsupported embedding model version {}", v));
  }
  EmbeddingModel m;
  const std::size_t dim = r.u32();
  m.context_n_ = r.u32();
  m.learn_projection_ = (r.u32() & 1u) != 0;
  const std::uint64_t min_count = r.u64();
  const std::uint64_t vocab_size = r.u64();
  if (dim == 0 || vocab_size < 2 || vocab_size > (1u << 26)) {
    throw DataError("embedding model header out of range");
  }
  std::vector<Vocabulary::Entry> entries(vocab_size);
  for (auto& e : entries) {
    e.word = r.str();
    e.count = r.u64();
  }
  m.vocab_ = Vocabulary::from_entries(std::move(entries), min_count);
  m.tree_.codes.resize(vocab_size);
  m.tree_.paths.resize(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    const std::uint32_t len = r.u32();
    if (len == 0 || len >= vocab_size) throw DataError("corrupt Huffman code length");
    const std::string code = r.bytes(len);
    m.tree_.codes[i].assign(code.begin(), code.end());
    m.tree_.paths[i].resize(len);
    for (auto& node : m.tree_.paths[i]) {
      node = r.i32();
      if (node < 0 || static_cast<std::uint64_t>(node) >= vocab_size - 1) {
        throw DataError("corrupt Huffman path");
      }
    }
  }
  const std::uint64_t sentences = r.u64();
  const std::string flags = r.bytes(sentences);
  m.untrained_.assign(flags.begin(), flags.end());
  auto& p = m.params_;
  p.dim = dim;
  p.word_vecs.resize(vocab_size * dim);
  p.sent_vecs.resize(sentences * dim);
  p.node_vecs.resize((vocab_size - 1) * dim);
  p.projection.resize(dim * dim);
  p.bias.resize(dim);
  r.f32s(p.word_vecs);
  r.f32s(p.sent_vecs);
  r.f32s(p.node_vecs);
  r.f32s(p.projection);
  r.f32s(p.bias);
  return m;
}

void EmbeddingModel::save(const std::filesystem::path& path) const {
  write_file(path, serialize());
}

EmbeddingModel EmbeddingModel::load(const std::filesystem::path& path) {
  return deserialize(read_file(path));
}

}  // namespace distress
