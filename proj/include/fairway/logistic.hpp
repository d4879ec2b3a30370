/*
 * Copyright 2026 The Fairway Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FAIRWAY_LOGISTIC_HPP_
#define FAIRWAY_LOGISTIC_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "fairway/dataset.hpp"
#include "fairway/error.hpp"
#include "fairway/matrix.hpp"

namespace fairway {

// Training hyperparameters. Defaults follow the usual scikit-learn
// LogisticRegression defaults (C=1, L2 penalty, 100 iterations).
struct LrHyper {
  double c = 1.0;  // inverse regularization strength
  int max_iter = 100;
  double tol = 1e-4;

  void validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw ConfigError("LR hyperparameter c must be positive");
    }
    if (max_iter < 1) throw ConfigError("LR max_iter must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("LR tol must be positive");
  }

  bool operator==(const LrHyper&) const = default;
};

// weights[0] is the intercept (paired with an implicit constant-1 feature);
// weights[1 + j] multiplies feature j.
struct LogisticModel {
  std::vector<double> weights;
  LrHyper hyper;
  bool converged = false;
  int iterations_used = 0;
  // Column names seen at fit time; empty when fit on a bare matrix.
  std::vector<std::string> feature_names;

  std::size_t input_dim() const { return weights.empty() ? 0 : weights.size() - 1; }

  bool operator==(const LogisticModel&) const = default;
};

namespace detail {

inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

inline double logit(std::span<const double> weights,
                    std::span<const double> x) {
  double z = weights[0];
  for (std::size_t j = 0; j < x.size(); ++j) z += weights[j + 1] * x[j];
  return z;
}

inline void check_shapes(const Matrix& x, std::span<const int> labels) {
  if (labels.size() != x.rows()) {
    throw DimensionMismatch("have " + std::to_string(labels.size()) +
                            " labels for " + std::to_string(x.rows()) +
                            " rows");
  }
}

}  // namespace detail

// Regularized objective: mean logistic loss plus ||w_{1..d}||^2 / (2 c n).
// The intercept is not penalized.
inline double lr_loss(const Matrix& x, std::span<const int> labels,
                      std::span<const double> weights, double c) {
  detail::check_shapes(x, labels);
  const std::size_t n = x.rows();
  double data = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = detail::logit(weights, x.row(i));
    data += detail::softplus(z) - labels[i] * z;
  }
  double penalty = 0.0;
  for (std::size_t j = 1; j < weights.size(); ++j) {
    penalty += weights[j] * weights[j];
  }
  const double nd = static_cast<double>(n);
  return data / nd + penalty / (2.0 * c * nd);
}

inline std::vector<double> lr_gradient(const Matrix& x,
                                       std::span<const int> labels,
                                       std::span<const double> weights,
                                       double c) {
  detail::check_shapes(x, labels);
  const std::size_t n = x.rows();
  std::vector<double> g(weights.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = x.row(i);
    const double r = detail::sigmoid(detail::logit(weights, row)) - labels[i];
    g[0] += r;
    for (std::size_t j = 0; j < row.size(); ++j) g[j + 1] += r * row[j];
  }
  const double nd = static_cast<double>(n);
  for (auto& v : g) v /= nd;
  for (std::size_t j = 1; j < weights.size(); ++j) {
    g[j] += weights[j] / (c * nd);
  }
  return g;
}

// Full-batch gradient descent from zero weights. Each step starts from a
// Barzilai-Borwein trial length and backtracks until the Armijo condition
// holds, so the objective never increases. Stops when the largest gradient
// component drops below tol or after max_iter steps.
//
// If loss_trace is given it receives the objective before the first step and
// after every accepted step.
inline LogisticModel lr_fit(const Matrix& x, std::span<const int> labels,
                            const LrHyper& hyper = {},
                            std::vector<double>* loss_trace = nullptr) {
  hyper.validate();
  detail::check_shapes(x, labels);
  if (x.rows() < 2) throw SingleClass("logistic regression needs >= 2 rows");
  const auto positives = std::count(labels.begin(), labels.end(), 1);
  if (positives == 0 || positives == static_cast<long>(labels.size())) {
    throw SingleClass("labels contain a single class");
  }
  for (double v : x.data()) {
    if (!std::isfinite(v)) throw DataError("non-finite feature value");
  }

  const std::size_t dim = x.cols() + 1;
  LogisticModel model;
  model.hyper = hyper;
  model.weights.assign(dim, 0.0);

  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-14;
  constexpr double kMaxStep = 1e6;

  std::vector<double>& w = model.weights;
  double f = lr_loss(x, labels, w, hyper.c);
  std::vector<double> g = lr_gradient(x, labels, w, hyper.c);
  if (loss_trace) loss_trace->assign(1, f);

  std::vector<double> prev_w, prev_g, trial(dim);
  double step = 1.0;
  for (int iter = 0;; ++iter) {
    double gmax = 0.0, gsq = 0.0;
    for (double v : g) {
      gmax = std::max(gmax, std::abs(v));
      gsq += v * v;
    }
    if (gmax < hyper.tol) {
      model.converged = true;
      break;
    }
    if (iter == hyper.max_iter) break;

    if (!prev_w.empty()) {
      double ss = 0.0, sy = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double s = w[j] - prev_w[j];
        const double y = g[j] - prev_g[j];
        ss += s * s;
        sy += s * y;
      }
      if (sy > 0.0) step = std::clamp(ss / sy, kMinStep, kMaxStep);
    }

    double f_trial = 0.0;
    bool accepted = false;
    while (step >= kMinStep) {
      for (std::size_t j = 0; j < dim; ++j) trial[j] = w[j] - step * g[j];
      f_trial = lr_loss(x, labels, trial, hyper.c);
      if (f_trial <= f - kArmijo * step * gsq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no further decrease representable

    prev_w = w;
    prev_g = g;
    w = trial;
    f = f_trial;
    g = lr_gradient(x, labels, w, hyper.c);
    model.iterations_used = iter + 1;
    if (loss_trace) loss_trace->push_back(f);
  }
  return model;
}

inline LogisticModel lr_fit(const EncodedDataset& data,
                            const LrHyper& hyper = {}) {
  LogisticModel m = lr_fit(data.features(), data.labels(), hyper);
  m.feature_names = data.column_names();
  return m;
}

inline void check_model_input(const LogisticModel& model, const Matrix& x) {
  if (model.weights.empty() || model.input_dim() != x.cols()) {
    throw DimensionMismatch("model expects " +
                            std::to_string(model.input_dim()) +
                            " features, data has " + std::to_string(x.cols()));
  }
}

inline std::vector<double> lr_decision(const LogisticModel& model,
                                       const Matrix& x) {
  check_model_input(model, x);
  std::vector<double> z(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    z[i] = detail::logit(model.weights, x.row(i));
  }
  return z;
}

inline std::vector<double> lr_predict_proba(const LogisticModel& model,
                                            const Matrix& x) {
  std::vector<double> p = lr_decision(model, x);
  for (auto& v : p) v = detail::sigmoid(v);
  return p;
}

// Class 1 iff the logit is >= 0; a zero logit goes to the favorable class.
inline std::vector<int> lr_predict(const LogisticModel& model,
                                   const Matrix& x) {
  std::vector<double> z = lr_decision(model, x);
  std::vector<int> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] >= 0.0 ? 1 : 0;
  return out;
}

}  // namespace fairway

#endif  // FAIRWAY_LOGISTIC_HPP_
