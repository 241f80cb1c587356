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

#include <filesystem>

#include "distress/config.hpp"
#include "distress/error.hpp"
#include "distress/text_io.hpp"

using namespace distress;

TEST_CASE("defaults") {
  const PipelineConfig c = parse_config("");
  CHECK(c.embed.dim == 600);
  CHECK(c.embed.context_n == 5);
  CHECK(c.classifier.hidden_units == 50);
  CHECK(c.windows.inner.lo == -8);
  CHECK(c.windows.inner.hi == 45);
  CHECK(c.windows.outer.lo == -120);
  CHECK(c.windows.outer.hi == 120);
  CHECK(c.folds == 5);
  CHECK(c.group_mode == GroupMode::Normalized);
  CHECK(c.percentile_step == 2);
  CHECK(c.corpus_path() == std::filesystem::path("out") / "data" / "corpus.tsv");
  CHECK(c.model_path() == std::filesystem::path("out") / "model");
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("values, comments and derived module configs") {
  const PipelineConfig c = parse_config(
      "# comment\n"
      "\n"
      "seed = 42\n"
      "dim=32\n"
      "window_inner = -3,10\n"
      "strategy = random\n"
      "group_mode = literal\n"
      "corpus = /tmp/c.tsv\n"
      "describe_date = 2008-09-15\n"
      "describe_entities = a,b\n");
  CHECK(c.seed == 42);
  CHECK(c.corpus_path() == "/tmp/c.tsv");
  CHECK(c.strategies == std::vector<Sampling>{Sampling::Random});
  CHECK(c.group_mode == GroupMode::Literal);
  CHECK(c.describe_date == parse_date("2008-09-15"));
  CHECK(c.describe_entities == std::vector<EntityId>{"a", "b"});
  CHECK(c.embed_config().dim == 32);
  CHECK(c.embed_config().seed == 42);
  CHECK(c.classifier_config().input_dim == 32);
  CHECK(c.eval_config().seed == 42);
  CHECK(c.synth_config().windows.inner.lo == -3);
  CHECK(c.synth_config().windows.inner.hi == 10);
}

TEST_CASE("errors name the line") {
  const auto message = [](std::string_view text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("seed = 1\nnot_a_key = 3\n").find("line 2") != std::string::npos);
  CHECK(message("seed = 1\nnot_a_key = 3\n").find("not_a_key") != std::string::npos);
  CHECK(message("dim = many\n").find("line 1") != std::string::npos);
  CHECK(message("just text\n").find("line 1") != std::string::npos);
  CHECK_THROWS_AS(parse_config("window_inner = -200,10\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("period = year\n"), ConfigError);
  CHECK_THROWS_AS(read_config("/nonexistent/distress.conf"), ConfigError);
}

TEST_CASE("format_config round trips") {
  PipelineConfig c;
  set_config_value(c, "seed", "9");
  set_config_value(c, "mu_grid", "0.5,0.75");
  set_config_value(c, "activation", "tanh");
  set_config_value(c, "synth_lambda", "0.25");
  set_config_value(c, "describe_date", "2009-01-02");
  set_config_value(c, "embed_lr", "0.05");
  const std::string text = format_config(c);
  const PipelineConfig back = parse_config(text);
  CHECK(format_config(back) == text);
  CHECK(back.seed == 9);
  CHECK(back.mu_grid == std::vector<double>{0.5, 0.75});
  CHECK(back.classifier.activation == Activation::Tanh);
  CHECK(back.synth.lambda == 0.25);
  CHECK(back.embed.lr_initial == 0.05);
  CHECK(format_config(PipelineConfig{}) == format_config(parse_config(format_config({}))));
}

TEST_CASE("later assignments override earlier ones") {
  PipelineConfig c = parse_config("seed = 1\nseed = 2\n");
  CHECK(c.seed == 2);
  set_config_value(c, "seed", "3");
  CHECK(c.seed == 3);
  CHECK_THROWS_AS(set_config_value(c, "bogus", "1"), ConfigError);
}
