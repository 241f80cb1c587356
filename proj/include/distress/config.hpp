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

#ifndef DISTRESS_CONFIG_HPP_
#define DISTRESS_CONFIG_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distress/classifier.hpp"
#include "distress/describe.hpp"
#include "distress/embedding.hpp"
#include "distress/evaluate.hpp"
#include "distress/folds.hpp"
#include "distress/labeling.hpp"
#include "distress/signal.hpp"
#include "distress/synth.hpp"

namespace distress {

// Flat `key = value` pipeline configuration. Blank lines and `#` comments are
// ignored; every key has a default and unknown keys are rejected.
struct PipelineConfig {
  // Empty input paths resolve under <output_dir>/data, an empty model_dir to
  // <output_dir>/model.
  std::filesystem::path corpus;
  std::filesystem::path lexicon;
  std::filesystem::path events;
  std::filesystem::path manifest;
  std::filesystem::path model_dir;
  std::filesystem::path output_dir = "out";

  std::uint64_t seed = 1;
  int threads = 1;

  EmbedConfig embed;
  WindowConfig windows;
  ClassifierConfig classifier;
  double valid_fraction = 0.2;

  std::vector<double> mu_grid = default_mu_grid();
  int folds = 5;
  int reshuffles = 5;
  std::vector<Sampling> strategies = {Sampling::Random, Sampling::LeaveEntitiesOut};
  bool period_split = true;

  Granularity period = Granularity::Month;
  GroupMode group_mode = GroupMode::Normalized;
  int percentile_step = 2;

  int infer_samples = 100;
  InferOptions infer;
  std::optional<Date> describe_date;  // unset: period with the highest global index
  std::vector<EntityId> describe_entities;
  std::size_t top_k = 10;

  SynthConfig synth;

  std::filesystem::path corpus_path() const;
  std::filesystem::path lexicon_path() const;
  std::filesystem::path events_path() const;
  std::filesystem::path manifest_path() const;
  std::filesystem::path model_path() const;

  // Pushes seed, threads and windows into the per-module configs.
  EmbedConfig embed_config() const;
  ClassifierConfig classifier_config() const;
  EvalConfig eval_config() const;
  IndexOptions index_options() const;
  ExcerptOptions excerpt_options() const;
  SynthConfig synth_config() const;

  void validate() const;
};

// Throws ConfigError naming the offending line.
PipelineConfig parse_config(std::string_view text);
PipelineConfig read_config(const std::filesystem::path& path);

// Applies one `key = value` assignment; throws ConfigError on unknown keys or
// bad values.
void set_config_value(PipelineConfig& config, std::string_view key, std::string_view value);

// Canonical dump of every key in a fixed order; parse_config(format_config(c))
// reproduces c.
std::string format_config(const PipelineConfig& config);

}  // namespace distress

#endif  // DISTRESS_CONFIG_HPP_
