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

#include "distress/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/rng.hpp"
#include "distress/text_io.hpp"

namespace distress {

namespace {

constexpr char kMagic[8] = {'D', 'S', 'C', 'L', 'F', '\0', '\0', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

double activate(Activation a, double z) {
  switch (a) {
    case Activation::Relu: return z > 0 ? z : 0.0;
    case Activation::Logistic: return logistic(z);
    case Activation::Tanh: return std::tanh(z);
  }
  return z;
}

// Derivative expressed through the pre-activation z and output a.
double activate_grad(Activation a, double z, double out) {
  switch (a) {
    case Activation::Relu: return z > 0 ? 1.0 : 0.0;
    case Activation::Logistic: return out * (1.0 - out);
    case Activation::Tanh: return 1.0 - out * out;
  }
  return 1.0;
}

}  // namespace

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::Relu;
  if (name == "logistic") return Activation::Logistic;
  if (name == "tanh") return Activation::Tanh;
  throw ConfigError(fmt::format("unknown activation '{}'", name));
}

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::Relu: return "relu";
    case Activation::Logistic: return "logistic";
    case Activation::Tanh: return "tanh";
  }
  return "?";
}

OutputForm parse_output_form(std::string_view name) {
  if (name == "linear-logits") return OutputForm::LinearLogits;
  if (name == "literal-squashed") return OutputForm::LiteralSquashed;
  throw ConfigError(fmt::format("unknown output form '{}'", name));
}

std::string_view output_form_name(OutputForm f) {
  return f == OutputForm::LinearLogits ? "linear-logits" : "literal-squashed";
}

void ClassifierConfig::validate() const {
  if (input_dim == 0) throw ConfigError("classifier input_dim must be positive");
  if (hidden_units < 1) throw ConfigError("hidden_units must be at least 1");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("momentum must be in [0,1)");
  if (!(lr > 0)) throw ConfigError("classifier lr must be positive");
  if (epochs < 1) throw ConfigError("classifier epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch_size must be at least 1");
}

Posterior softmax2(double y0, double y1) {
  const double m = std::max(y0, y1);
  const double e0 = std::exp(y0 - m);
  const double e1 = std::exp(y1 - m);
  const double z = e0 + e1;
  return {e0 / z, e1 / z};
}

void Dataset::add(std::span<const double> features, int label) {
  if (dim == 0 && y.empty()) dim = features.size();
  if (features.size() != dim) throw DataError("dataset row has the wrong dimension");
  x.insert(x.end(), features.begin(), features.end());
  y.push_back(label);
}

RelevanceClassifier::RelevanceClassifier(std::size_t input_dim, std::size_t hidden,
                                         Activation activation, OutputForm output_form)
    : input_dim_(input_dim),
      hidden_(hidden),
      activation_(activation),
      output_form_(output_form),
      theta_(hidden * (input_dim + 3) + 2, 0.0) {}

RelevanceClassifier RelevanceClassifier::initialized(const ClassifierConfig& config) {
  config.validate();
  RelevanceClassifier clf(config.input_dim, config.hidden_units, config.activation,
                          config.output_form);
  Rng rng(config.seed);
  const double r1 = 1.0 / std::sqrt(static_cast<double>(config.input_dim));
  const double r2 = 1.0 / std::sqrt(static_cast<double>(config.hidden_units));
  for (double& v : clf.w1()) v = rng.uniform(-r1, r1);
  for (double& v : clf.b1()) v = rng.uniform(-r1, r1);
  for (double& v : clf.w2()) v = rng.uniform(-r2, r2);
  for (double& v : clf.b2()) v = rng.uniform(-r2, r2);
  return clf;
}

std::pair<double, double> RelevanceClassifier::logits(std::span<const double> v) const {
  if (v.size() != input_dim_) {
    throw DataError(fmt::format("classifier expects dimension {}, got {}", input_dim_,
                                v.size()));
  }
  const double* w1 = theta_.data();
  const double* b1 = w1 + hidden_ * input_dim_;
  const double* w2 = b1 + hidden_;
  const double* b2 = w2 + 2 * hidden_;
  double y0 = b2[0];
  double y1 = b2[1];
  for (std::size_t h = 0; h < hidden_; ++h) {
    double z = b1[h];
    const double* row = w1 + h * input_dim_;
    for (std::size_t i = 0; i < input_dim_; ++i) z += row[i] * v[i];
    const double a = activate(activation_, z);
    y0 += w2[h] * a;
    y1 += w2[hidden_ + h] * a;
  }
  if (output_form_ == OutputForm::LiteralSquashed) {
    y0 = activate(activation_, y0);
    y1 = activate(activation_, y1);
  }
  return {y0, y1};
}

Posterior RelevanceClassifier::forward(std::span<const double> v) const {
  const auto [y0, y1] = logits(v);
  return softmax2(y0, y1);
}

double RelevanceClassifier::loss_and_gradient(const Dataset& data,
                                              std::span<const std::size_t> rows,
                                              std::span<double> grad) const {
  if (data.dim != input_dim_) throw DataError("dataset dimension mismatch");
  std::fill(grad.begin(), grad.end(), 0.0);
  if (rows.empty()) return 0.0;
  const std::size_t d = input_dim_;
  const std::size_t H = hidden_;
  const double* w1 = theta_.data();
  const double* b1 = w1 + H * d;
  const double* w2 = b1 + H;
  const double* b2 = w2 + 2 * H;
  double* gw1 = grad.data();
  double* gb1 = gw1 + H * d;
  double* gw2 = gb1 + H;
  double* gb2 = gw2 + 2 * H;

  std::vector<double> z(H), a(H), da(H);
  double total = 0;
  for (const std::size_t r : rows) {
    const auto v = data.row(r);
    double o0 = b2[0], o1 = b2[1];
    for (std::size_t h = 0; h < H; ++h) {
      double acc = b1[h];
      const double* row = w1 + h * d;
      for (std::size_t i = 0; i < d; ++i) acc += row[i] * v[i];
      z[h] = acc;
      a[h] = activate(activation_, acc);
      o0 += w2[h] * a[h];
      o1 += w2[H + h] * a[h];
    }
    double y0 = o0, y1 = o1;
    if (output_form_ == OutputForm::LiteralSquashed) {
      y0 = activate(activation_, o0);
      y1 = activate(activation_, o1);
    }
    const Posterior p = softmax2(y0, y1);
    const int label = data.y[r];
    const double p_true = label == 1 ? p.p1 : p.p0;
    total -= std::log(std::max(p_true, 1e-300));

    double dy0 = p.p0 - (label == 0 ? 1.0 : 0.0);
    double dy1 = p.p1 - (label == 1 ? 1.0 : 0.0);
    if (output_form_ == OutputForm::LiteralSquashed) {
      dy0 *= activate_grad(activation_, o0, y0);
      dy1 *= activate_grad(activation_, o1, y1);
    }
    gb2[0] += dy0;
    gb2[1] += dy1;
    for (std::size_t h = 0; h < H; ++h) {
      gw2[h] += dy0 * a[h];
      gw2[H + h] += dy1 * a[h];
      da[h] = (dy0 * w2[h] + dy1 * w2[H + h]) * activate_grad(activation_, z[h], a[h]);
    }
    for (std::size_t h = 0; h < H; ++h) {
      if (da[h] == 0.0) continue;
      gb1[h] += da[h];
      double* grow = gw1 + h * d;
      for (std::size_t i = 0; i < d; ++i) grow[i] += da[h] * v[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (double& g : grad) g *= inv;
  return total * inv;
}

double RelevanceClassifier::loss(const Dataset& data) const {
  if (data.size() == 0) return 0.0;
  double total = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Posterior p = forward(data.row(i));
    total -= std::log(std::max(data.y[i] == 1 ? p.p1 : p.p0, 1e-300));
  }
  return total / static_cast<double>(data.size());
}

double nag_step(RelevanceClassifier& clf, std::span<double> velocity, const Dataset& data,
                std::span<const std::size_t> batch, double lr, double momentum) {
  auto theta = clf.theta();
  std::vector<double> saved(theta.begin(), theta.end());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] += momentum * velocity[i];
  std::vector<double> grad(theta.size());
  const double loss = clf.loss_and_gradient(data, batch, grad);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    velocity[i] = momentum * velocity[i] - lr * grad[i];
    theta[i] = saved[i] + velocity[i];
  }
  return loss;
}

ClassifierTrainResult train_nag(const Dataset& train, const Dataset& valid,
                                const ClassifierConfig& config) {
  config.validate();
  if (train.size() == 0) throw DataError("training set is empty");
  if (train.dim != config.input_dim) {
    throw DataError(fmt::format("training vectors have dimension {}, expected {}",
                                train.dim, config.input_dim));
  }
  const auto positives = std::count(train.y.begin(), train.y.end(), 1);
  if (positives == 0 || positives == static_cast<long>(train.size())) {
    throw DataError("training set must contain both classes");
  }

  ClassifierTrainResult result;
  RelevanceClassifier clf = RelevanceClassifier::initialized(config);
  result.initial_train_loss = clf.loss(train);
  std::vector<double> velocity(clf.theta().size(), 0.0);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(config.seed, 0xc1f));

  double best = std::numeric_limits<double>::infinity();
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t len = std::min(config.batch_size, order.size() - start);
      nag_step(clf, velocity, train, std::span<const std::size_t>(order).subspan(start, len),
               config.lr, config.momentum);
    }
    const double train_loss = clf.loss(train);
    result.train_losses.push_back(train_loss);
    double score = train_loss;
    if (valid.size() > 0) {
      score = clf.loss(valid);
      result.valid_losses.push_back(score);
    }
    if (score < best) {
      best = score;
      result.best_epoch = epoch;
      result.classifier = clf;
    }
  }
  if (result.best_epoch == 0) {
    // Every epoch produced a non-finite loss; keep the last parameters.
    result.best_epoch = config.epochs;
    result.classifier = clf;
  }
  return result;
}

std::map<SentenceId, double> score_all(const RelevanceClassifier& clf,
                                       const EmbeddingModel& model,
                                       std::span<const SentenceId> ids) {
  std::map<SentenceId, double> out;
  for (const SentenceId id : ids) out[id] = clf.relevance(model.extract_vector(id));
  return out;
}

// Layout: magic[8] version:u32 input_dim:u32 hidden:u32 activation:u32
// output_form:u32, then f64 parameters W1, b1, W2, b2 (row-major).
std::string RelevanceClassifier::serialize() const {
  std::ostringstream out(std::ios::binary);
  BinaryWriter w(out);
  w.bytes({kMagic, sizeof kMagic});
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(input_dim_));
  w.u32(static_cast<std::uint32_t>(hidden_));
  w.u32(static_cast<std::uint32_t>(activation_));
  w.u32(static_cast<std::uint32_t>(output_form_));
  w.f64s(theta_);
  return std::move(out).str();
}

RelevanceClassifier RelevanceClassifier::deserialize(std::string_view bytes) {
  std::istringstream in{std::string(bytes), std::ios::binary};
  BinaryReader r(in);
  if (r.bytes(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw DataError("not a classifier file");
  }
  if (const auto v = r.u32(); v != kFormatVersion) {
    throw DataError(fmt::format("unsupported classifier version {}", v));
  }
  const std::size_t input_dim = r.u32();
  const std::size_t hidden = r.u32();
  const std::uint32_t act = r.u32();
  const std::uint32_t form = r.u32();
  if (input_dim == 0 || hidden == 0 || act > 2 || form > 1) {
    throw DataError("classifier header out of range");
  }
  RelevanceClassifier clf(input_dim, hidden, static_cast<Activation>(act),
                          static_cast<OutputForm>(form));
  r.f64s(clf.theta_);
  return clf;
}

void RelevanceClassifier::save(const std::filesystem::path& path) const {
  write_file(path, serialize());
}

RelevanceClassifier RelevanceClassifier::load(const std::filesystem::path& path) {
  return deserialize(read_file(path));
}

}  // namespace distress
