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

// Small end-to-end fixture shared by the describe and evaluate tests.

#ifndef DISTRESS_TESTS_PIPELINE_HPP_
#define DISTRESS_TESTS_PIPELINE_HPP_

#include "distress/classifier.hpp"
#include "distress/corpus.hpp"
#include "distress/embedding.hpp"
#include "distress/evaluate.hpp"
#include "distress/labeling.hpp"
#include "distress/synth.hpp"

namespace distress::fixture {

struct SmallPipeline {
  SynthCorpus synth;
  CorpusStore store;
  LabelSet labels;
  EmbeddingModel model;
  EvalInput input;
  RelevanceClassifier classifier;
};

inline ClassifierConfig small_classifier(std::size_t dim) {
  ClassifierConfig c;
  c.input_dim = dim;
  c.hidden_units = 8;
  c.epochs = 100;
  c.lr = 0.05;
  c.seed = 5;
  return c;
}

inline SmallPipeline build_small_pipeline(double lambda = 0.9) {
  SmallPipeline p;
  SynthConfig sc;
  sc.entities = 4;
  sc.events_per_entity = 1;
  sc.span_days = 500;
  sc.background_vocab = 150;
  sc.event_vocab = 20;
  sc.sentences_per_entity_day = 0.4;
  sc.lambda = lambda;
  sc.seed = 21;
  p.synth = generate(sc);
  p.store = build_store(parse_corpus(p.synth.corpus), parse_lexicon(p.synth.lexicon));
  p.labels = label_corpus(p.store, p.synth.events, WindowConfig{});
  EmbedConfig ec;
  ec.dim = 32;
  ec.context_n = 3;
  ec.epochs = 5;
  ec.min_count = 2;
  ec.seed = 3;
  p.model = train_dm(p.store, ec).model;
  p.input = make_eval_input(p.store, p.model, p.labels.instances);
  p.classifier = train_final(p.input, small_classifier(ec.dim), 0.2).classifier;
  return p;
}

inline const SmallPipeline& small_pipeline() {
  static const SmallPipeline p = build_small_pipeline();
  return p;
}

}  // namespace distress::fixture

#endif  // DISTRESS_TESTS_PIPELINE_HPP_
