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

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "distress/embedding.hpp"
#include "distress/error.hpp"
#include "distress/synth.hpp"
#include "oracles.hpp"

using namespace distress;

namespace {

CorpusStore small_corpus(std::uint64_t seed = 4) {
  SynthConfig sc;
  sc.entities = 3;
  sc.events_per_entity = 1;
  sc.span_days = 200;
  sc.background_vocab = 60;
  sc.event_vocab = 15;
  sc.sentences_per_entity_day = 0.5;
  sc.seed = seed;
  const SynthCorpus synth = generate(sc);
  return build_store(parse_corpus(synth.corpus), parse_lexicon(synth.lexicon));
}

EmbedConfig small_config() {
  EmbedConfig c;
  c.dim = 12;
  c.context_n = 3;
  c.epochs = 3;
  c.min_count = 2;
  c.seed = 9;
  return c;
}

}  // namespace

TEST_CASE("hierarchical softmax sums to one over the vocabulary") {
  for (std::size_t v : {2u, 3u, 5u, 17u, 40u, 64u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CHECK(oracle::hs_normalization_error(seed * 100 + v, v, 7) <= 1e-8);
    }
  }
}

TEST_CASE("analytic window gradients match central differences") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CHECK(oracle::dm_gradient_error(seed, false) < 1e-4);
    CHECK(oracle::dm_gradient_error(seed + 1000, true) < 1e-4);
  }
}

TEST_CASE("embed config validation") {
  EmbedConfig c;
  CHECK_NOTHROW(c.validate());
  c.dim = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.lr_final = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("training raises the window log-likelihood") {
  const CorpusStore store = small_corpus();
  const EmbedConfig config = small_config();
  const EmbedTrainResult trained = train_dm(store, config);
  REQUIRE(trained.epoch_objective.size() == 3);
  CHECK(trained.windows_per_epoch > 0);

  const EmbeddingModel fresh = EmbeddingModel::create(
      trained.model.vocabulary(), config.dim, config.context_n, store.mention_count(), false,
      config.seed);
  CHECK(mean_log_prob(trained.model, store) > mean_log_prob(fresh, store));
  CHECK(trained.epoch_objective.back() > trained.epoch_objective.front());
}

TEST_CASE("model hs_prob is normalized") {
  const CorpusStore store = small_corpus();
  EmbedConfig config = small_config();
  config.learn_projection = true;
  const EmbeddingModel model = train_dm(store, config).model;
  for (SentenceId id : {SentenceId{0}, SentenceId{5}}) {
    const auto v = model.extract_vector(id);
    double total = 0;
    for (const auto& e : model.vocabulary().entries()) total += model.hs_prob(v, e.word);
    CHECK(std::abs(total - 1.0) <= 1e-8);
  }
  CHECK_THROWS_AS(model.hs_prob(model.extract_vector(0), "no-such-word"), DataError);
}

TEST_CASE("single-threaded training is deterministic and persists bit-exactly") {
  const CorpusStore store = small_corpus();
  const EmbedConfig config = small_config();
  const EmbeddingModel a = train_dm(store, config).model;
  const EmbeddingModel b = train_dm(store, config).model;
  CHECK(a.serialize() == b.serialize());

  EmbedConfig other = config;
  other.seed = 10;
  CHECK(train_dm(store, other).model.serialize() != a.serialize());

  const auto path = std::filesystem::temp_directory_path() / "distress_embed_test.bin";
  a.save(path);
  const EmbeddingModel loaded = EmbeddingModel::load(path);
  CHECK(loaded == a);
  CHECK(loaded.serialize() == a.serialize());
  std::filesystem::remove(path);

  std::string corrupt = a.serialize();
  corrupt[0] = 'X';
  CHECK_THROWS_AS(EmbeddingModel::deserialize(corrupt), DataError);
  CHECK_THROWS_AS(EmbeddingModel::deserialize(a.serialize().substr(0, 40)), DataError);
}

TEST_CASE("learned projection: extract_vector is beta + U D_s") {
  const CorpusStore store = small_corpus();
  EmbedConfig config = small_config();
  config.learn_projection = true;
  const EmbeddingModel model = train_dm(store, config).model;
  const auto& p = model.params();
  const std::size_t d = model.dim();
  bool moved = false;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      moved = moved || p.projection[r * d + c] != (r == c ? 1.0f : 0.0f);
    }
  }
  CHECK(moved);
  const SentenceId id = 3;
  const auto v = model.extract_vector(id);
  for (std::size_t r = 0; r < d; ++r) {
    double expect = p.bias[r];
    for (std::size_t c = 0; c < d; ++c) {
      expect += static_cast<double>(p.projection[r * d + c]) * p.sentence(id)[c];
    }
    CHECK(v[r] == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK_THROWS_AS(model.extract_vector(static_cast<SentenceId>(store.mention_count())),
                  DataError);
}

TEST_CASE("multi-threaded training produces a usable model") {
  const CorpusStore store = small_corpus();
  EmbedConfig config = small_config();
  config.threads = 3;
  const EmbedTrainResult r = train_dm(store, config);
  for (float x : r.model.params().sent_vecs) CHECK(std::isfinite(x));
  CHECK(std::isfinite(mean_log_prob(r.model, store)));
}

TEST_CASE("inference is seeded and rejects out-of-vocabulary input") {
  const CorpusStore store = small_corpus();
  const EmbeddingModel model = train_dm(store, small_config()).model;
  const auto& tokens = store.by_id(2).tokens;
  InferOptions opts;
  opts.steps = 20;
  opts.seed = 5;
  const auto a = infer_vector(model, tokens, opts);
  const auto b = infer_vector(model, tokens, opts);
  CHECK(a == b);
  CHECK(a.size() == model.dim());
  opts.seed = 6;
  CHECK(infer_vector(model, tokens, opts) != a);
  CHECK_THROWS_AS(infer_vector(model, {"qqq", "zzz"}, opts), DataError);
}

TEST_CASE("inference leaves the model untouched") {
  const CorpusStore store = small_corpus();
  const EmbeddingModel model = train_dm(store, small_config()).model;
  const std::string before = model.serialize();
  infer_vector(model, store.by_id(1).tokens, InferOptions{});
  CHECK(model.serialize() == before);
}
