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

#ifndef DISTRESS_CLASSIFIER_HPP_
#define DISTRESS_CLASSIFIER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distress/corpus.hpp"
#include "distress/embedding.hpp"

namespace distress {

enum class Activation { Relu, Logistic, Tanh };
enum class OutputForm { LinearLogits, LiteralSquashed };

Activation parse_activation(std::string_view name);
std::string_view activation_name(Activation a);
OutputForm parse_output_form(std::string_view name);
std::string_view output_form_name(OutputForm f);

struct ClassifierConfig {
  std::size_t input_dim = 600;
  std::size_t hidden_units = 50;
  Activation activation = Activation::Relu;
  OutputForm output_form = OutputForm::LinearLogits;
  double lr = 0.01;
  double momentum = 0.9;
  int epochs = 100;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Posterior {
  double p0 = 0.5;
  double p1 = 0.5;
};

// Numerically stable two-way softmax.
Posterior softmax2(double y0, double y1);

// Row-major feature matrix with binary labels.
struct Dataset {
  std::size_t dim = 0;
  std::vector<double> x;
  std::vector<int> y;

  std::size_t size() const { return y.size(); }
  std::span<const double> row(std::size_t i) const { return {x.data() + i * dim, dim}; }
  void add(std::span<const double> features, int label);
};

// Three-layer network: hidden = act(b1 + W1 v), logits = b2 + W2 hidden (or
// act of that in the literal-squashed form), posterior = softmax(logits).
// Parameters live in one flat vector ordered W1, b1, W2, b2.
class RelevanceClassifier {
 public:
  RelevanceClassifier() = default;
  // Zero parameters; the posterior is 0.5 everywhere.
  RelevanceClassifier(std::size_t input_dim, std::size_t hidden, Activation activation,
                      OutputForm output_form);
  // Uniform in +-1/sqrt(fan_in), seeded.
  static RelevanceClassifier initialized(const ClassifierConfig& config);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t hidden() const { return hidden_; }
  Activation activation() const { return activation_; }
  OutputForm output_form() const { return output_form_; }

  std::span<double> theta() { return theta_; }
  std::span<const double> theta() const { return theta_; }
  std::span<double> w1() { return theta().subspan(0, hidden_ * input_dim_); }
  std::span<double> b1() { return theta().subspan(hidden_ * input_dim_, hidden_); }
  std::span<double> w2() { return theta().subspan(hidden_ * (input_dim_ + 1), 2 * hidden_); }
  std::span<double> b2() { return theta().subspan(hidden_ * (input_dim_ + 3), 2); }

  // Output-layer values fed to the softmax. Throws DataError on a dimension
  // mismatch.
  std::pair<double, double> logits(std::span<const double> v) const;
  Posterior forward(std::span<const double> v) const;
  // M(v) = p(e = 1 | v).
  double relevance(std::span<const double> v) const { return forward(v).p1; }

  // Mean cross-entropy over `rows` of `data` and its gradient w.r.t. theta.
  double loss_and_gradient(const Dataset& data, std::span<const std::size_t> rows,
                           std::span<double> grad) const;
  double loss(const Dataset& data) const;

  std::string serialize() const;
  static RelevanceClassifier deserialize(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static RelevanceClassifier load(const std::filesystem::path& path);

  bool operator==(const RelevanceClassifier&) const = default;

 private:
  std::size_t input_dim_ = 0;
  std::size_t hidden_ = 0;
  Activation activation_ = Activation::Relu;
  OutputForm output_form_ = OutputForm::LinearLogits;
  std::vector<double> theta_;
};

// One Nesterov step on a mini-batch:
//   velocity <- momentum * velocity - lr * grad(theta + momentum * velocity)
//   theta    <- theta + velocity
// Returns the batch loss at the look-ahead point.
double nag_step(RelevanceClassifier& clf, std::span<double> velocity, const Dataset& data,
                std::span<const std::size_t> batch, double lr, double momentum);

struct ClassifierTrainResult {
  RelevanceClassifier classifier;
  double initial_train_loss = 0;
  std::vector<double> train_losses;  // after each epoch
  std::vector<double> valid_losses;  // empty when no validation data
  int best_epoch = 0;                // 1-based epoch whose parameters are returned
};

// Throws DataError unless the training set holds both classes.
ClassifierTrainResult train_nag(const Dataset& train, const Dataset& valid,
                                const ClassifierConfig& config);

std::map<SentenceId, double> score_all(const RelevanceClassifier& clf,
                                       const EmbeddingModel& model,
                                       std::span<const SentenceId> ids);

}  // namespace distress

#endif  // DISTRESS_CLASSIFIER_HPP_
