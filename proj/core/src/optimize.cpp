// Copyright 2026 The qcll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qcll/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qcll/format.hpp"
#include "qcll/random.hpp"

namespace qcll::optimize {

void LossSpec::validate() const {
  if (kind == LossKind::kSoftmaxCrossEntropy && class_count < 2) {
    throw std::invalid_argument("LossSpec: cross-entropy needs at least 2 classes, got " +
                                std::to_string(class_count));
  }
}

double squared_error(double y, double yhat) noexcept {
  const double r = y - yhat;
  return r * r;
}

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty logits");
  const double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t c = 0; c < logits.size(); ++c) {
    p[c] = std::exp(logits[c] - m);
    total += p[c];
  }
  for (double& v : p) v /= total;
  return p;
}

double cross_entropy(std::size_t label, std::span<const double> p) {
  if (label >= p.size()) {
    throw std::invalid_argument("cross_entropy: label " + std::to_string(label) + " out of range for " +
                                std::to_string(p.size()) + " classes");
  }
  return -std::log(std::max(p[label], kProbabilityFloor));
}

std::vector<double> Parameters::flatten() const {
  std::vector<double> flat;
  flat.reserve(size());
  flat.insert(flat.end(), a.begin(), a.end());
  flat.insert(flat.end(), b.begin(), b.end());
  flat.insert(flat.end(), theta.begin(), theta.end());
  return flat;
}

Parameters Parameters::unflatten(std::span<const double> flat, std::size_t heads) {
  if (flat.size() < 2 * heads) throw std::invalid_argument("Parameters::unflatten: vector too short");
  Parameters p;
  p.a.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(heads));
  p.b.assign(flat.begin() + static_cast<std::ptrdiff_t>(heads), flat.begin() + static_cast<std::ptrdiff_t>(2 * heads));
  p.theta.assign(flat.begin() + static_cast<std::ptrdiff_t>(2 * heads), flat.end());
  return p;
}

Eigen::MatrixXd head_outputs(const Eigen::MatrixXd& z, const Parameters& params, const LossSpec& loss) {
  const std::size_t heads = loss.heads();
  if (params.a.size() != heads || params.b.size() != heads || static_cast<std::size_t>(z.cols()) != heads) {
    throw std::invalid_argument("head_outputs: expected " + std::to_string(heads) + " heads");
  }
  Eigen::MatrixXd out(z.rows(), z.cols());
  for (std::size_t c = 0; c < heads; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    out.col(ci) = (params.a[c] * z.col(ci)).array() + params.b[c];
  }
  return out;
}

Objective::Objective(const ReadoutModel& model, const Eigen::MatrixXd& X, std::vector<double> y, LossSpec loss)
    : model_(model), y_(std::move(y)), loss_(loss) {
  loss_.validate();
  if (y_.empty() || X.rows() == 0) throw std::invalid_argument("Objective: empty training data");
  if (static_cast<std::size_t>(X.rows()) != y_.size()) {
    throw std::invalid_argument("Objective: " + std::to_string(X.rows()) + " inputs but " +
                                std::to_string(y_.size()) + " targets");
  }
  if (model_.num_observables() != loss_.heads()) {
    throw std::invalid_argument("Objective: model has " + std::to_string(model_.num_observables()) +
                                " observables but the loss needs " + std::to_string(loss_.heads()));
  }
  for (double t : y_) {
    if (!std::isfinite(t)) throw std::invalid_argument("Objective: non-finite target");
    if (loss_.kind == LossKind::kSoftmaxCrossEntropy &&
        (t < 0.0 || t != std::floor(t) || t >= static_cast<double>(loss_.class_count))) {
      throw std::invalid_argument("Objective: invalid class label " + format_double(t));
    }
  }
  batch_ = model_.encode(X);
}

void Objective::check_size(std::size_t n) const {
  if (n != num_parameters()) {
    throw std::invalid_argument("Objective: expected " + std::to_string(num_parameters()) + " parameters, got " +
                                std::to_string(n));
  }
}

double Objective::loss_from_readouts(const Eigen::MatrixXd& z, std::span<const double> params,
                                     Eigen::MatrixXd* dout) const {
  const std::size_t heads = loss_.heads();
  const std::span<const double> a = params.subspan(0, heads);
  const std::span<const double> b = params.subspan(heads, heads);
  const auto n_samples = z.rows();
  if (dout) dout->resize(n_samples, static_cast<Eigen::Index>(heads));
  double total = 0.0;
  if (loss_.kind == LossKind::kSquaredError) {
    for (Eigen::Index n = 0; n < n_samples; ++n) {
      const double yhat = a[0] * z(n, 0) + b[0];
      const double r = yhat - y_[static_cast<std::size_t>(n)];
      total += r * r;
      if (dout) (*dout)(n, 0) = 2.0 * r;
    }
    return total;
  }
  std::vector<double> logits(heads);
  for (Eigen::Index n = 0; n < n_samples; ++n) {
    for (std::size_t c = 0; c < heads; ++c) logits[c] = a[c] * z(n, static_cast<Eigen::Index>(c)) + b[c];
    const std::vector<double> p = softmax(logits);
    const auto label = static_cast<std::size_t>(y_[static_cast<std::size_t>(n)]);
    const bool clamped = p[label] < kProbabilityFloor;
    if (clamped) {
      total += -std::log(kProbabilityFloor);
    } else {
      // log p[label] = l_label - logsumexp(l), evaluated stably.
      const double m = *std::max_element(logits.begin(), logits.end());
      double s = 0.0;
      for (double l : logits) s += std::exp(l - m);
      total += m + std::log(s) - logits[label];
    }
    if (dout) {
      for (std::size_t c = 0; c < heads; ++c) {
        (*dout)(n, static_cast<Eigen::Index>(c)) = clamped ? 0.0 : p[c] - (c == label ? 1.0 : 0.0);
      }
    }
  }
  return total;
}

double Objective::cost(std::span<const double> params) const {
  check_size(params.size());
  const std::size_t heads = loss_.heads();
  const Eigen::MatrixXd z = model_.readouts(params.subspan(2 * heads), *batch_);
  return loss_from_readouts(z, params, nullptr);
}

double Objective::cost_and_gradient(std::span<const double> params, std::span<double> grad) const {
  check_size(params.size());
  if (grad.size() != params.size()) throw std::invalid_argument("Objective: gradient buffer has the wrong size");
  const std::size_t heads = loss_.heads();
  double total = 0.0;
  Eigen::MatrixXd dout;
  const auto weights = [&](const Eigen::MatrixXd& z) {
    total = loss_from_readouts(z, params, &dout);
    Eigen::MatrixXd w = dout;
    for (std::size_t c = 0; c < heads; ++c) w.col(static_cast<Eigen::Index>(c)) *= params[c];
    return w;
  };
  const Eigen::MatrixXd z = model_.readouts_with_vjp(params.subspan(2 * heads), *batch_, weights, grad.subspan(2 * heads));
  for (std::size_t c = 0; c < heads; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    grad[c] = dout.col(ci).dot(z.col(ci));
    grad[heads + c] = dout.col(ci).sum();
  }
  return total;
}

double cost(const ReadoutModel& model, const Eigen::MatrixXd& X, std::span<const double> y, const LossSpec& loss,
            const Parameters& params) {
  const Objective obj(model, X, std::vector<double>(y.begin(), y.end()), loss);
  return obj.cost(params.flatten());
}

std::vector<double> cost_gradient(const ReadoutModel& model, const Eigen::MatrixXd& X, std::span<const double> y,
                                  const LossSpec& loss, const Parameters& params) {
  const Objective obj(model, X, std::vector<double>(y.begin(), y.end()), loss);
  const std::vector<double> flat = params.flatten();
  std::vector<double> grad(flat.size());
  obj.cost_and_gradient(flat, grad);
  return grad;
}

void TrainConfig::validate() const {
  if (restarts == 0) throw std::invalid_argument("TrainConfig: restarts must be >= 1");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("TrainConfig: tolerance must be >= 0");
  if (!(theta_high >= theta_low)) throw std::invalid_argument("TrainConfig: empty theta range");
  if (!(a_spread >= 0.0) || !(b_spread >= 0.0)) throw std::invalid_argument("TrainConfig: negative init spread");
  if (optimizer == OptimizerKind::kLbfgs && lbfgs_memory == 0) {
    throw std::invalid_argument("TrainConfig: lbfgs_memory must be >= 1");
  }
  if (optimizer == OptimizerKind::kAdam && !(adam_learning_rate > 0.0)) {
    throw std::invalid_argument("TrainConfig: adam_learning_rate must be > 0");
  }
}

Parameters initial_parameters(const TrainConfig& config, std::size_t restart, std::size_t heads, std::size_t angles) {
  Rng rng(derive_seed(config.seed, {restart}));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Parameters p;
  p.theta.resize(angles);
  for (double& t : p.theta) t = config.theta_low + (config.theta_high - config.theta_low) * unit(rng);
  p.a.resize(heads);
  p.b.resize(heads);
  for (double& a : p.a) a = config.a_center + config.a_spread * (2.0 * unit(rng) - 1.0);
  for (double& b : p.b) b = config.b_center + config.b_spread * (2.0 * unit(rng) - 1.0);
  return p;
}

namespace {

using Vec = Eigen::VectorXd;

struct RestartOutcome {
  Vec x;
  RestartTrace trace;
};

struct NonFiniteCost : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double evaluate(const Objective& obj, const Vec& x, Vec& g) {
  g.resize(x.size());
  const double f = obj.cost_and_gradient({x.data(), static_cast<std::size_t>(x.size())},
                                         {g.data(), static_cast<std::size_t>(g.size())});
  if (!std::isfinite(f) || !g.allFinite()) throw NonFiniteCost("non-finite cost or gradient");
  return f;
}

// Two-loop recursion: returns -H g for the L-BFGS inverse Hessian estimate.
Vec lbfgs_direction(const Vec& g, const std::deque<Vec>& s, const std::deque<Vec>& y) {
  Vec q = -g;
  const std::size_t m = s.size();
  std::vector<double> alpha(m), rho(m);
  for (std::size_t k = m; k-- > 0;) {
    rho[k] = 1.0 / y[k].dot(s[k]);
    alpha[k] = rho[k] * s[k].dot(q);
    q -= alpha[k] * y[k];
  }
  if (m > 0) q *= s.back().dot(y.back()) / y.back().squaredNorm();
  for (std::size_t k = 0; k < m; ++k) {
    const double beta = rho[k] * y[k].dot(q);
    q += (alpha[k] - beta) * s[k];
  }
  return q;
}

void run_lbfgs(const Objective& obj, const TrainConfig& config, RestartOutcome& out) {
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxBacktracks = 40;
  Vec& x = out.x;
  Vec g, g_new;
  double f = evaluate(obj, x, g);
  out.trace.costs.push_back(f);
  std::deque<Vec> s_hist, y_hist;
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    bool accepted = false;
    Vec x_new;
    double f_new = f;
    // Second attempt, if needed, discards the curvature memory and uses steepest descent.
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      if (attempt == 1) {
        if (s_hist.empty()) break;
        s_hist.clear();
        y_hist.clear();
      }
      Vec d = lbfgs_direction(g, s_hist, y_hist);
      double slope = g.dot(d);
      if (!(slope < 0.0)) {
        s_hist.clear();
        y_hist.clear();
        d = -g;
        slope = -g.squaredNorm();
      }
      if (slope == 0.0) break;
      // Without curvature information, cap the first trial step at unit length.
      double step = s_hist.empty() ? std::min(1.0, 1.0 / d.norm()) : 1.0;
      for (int k = 0; k < kMaxBacktracks; ++k, step *= 0.5) {
        x_new = x + step * d;
        f_new = evaluate(obj, x_new, g_new);
        if (f_new <= f + kArmijo * step * slope) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) break;  // no descent possible at working precision
    Vec s = x_new - x;
    Vec y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      if (s_hist.size() > config.lbfgs_memory) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }
    const double change = f - f_new;
    x = std::move(x_new);
    f = f_new;
    g.swap(g_new);
    out.trace.costs.push_back(f);
    if (std::abs(change) < config.tolerance) break;
  }
}

void run_adam(const Objective& obj, const TrainConfig& config, RestartOutcome& out) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  Vec& x = out.x;
  Vec g;
  double f = evaluate(obj, x, g);
  out.trace.costs.push_back(f);
  Vec m = Vec::Zero(x.size());
  Vec v = Vec::Zero(x.size());
  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    m = kBeta1 * m + (1.0 - kBeta1) * g;
    v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseAbs2();
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(it));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(it));
    x.array() -= config.adam_learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + kEps);
    const double f_new = evaluate(obj, x, g);
    out.trace.costs.push_back(f_new);
    const double change = f - f_new;
    f = f_new;
    if (std::abs(change) < config.tolerance) break;
  }
}

}  // namespace

TrainResult train(const Objective& objective, const TrainConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t heads = objective.loss().heads();
  const std::size_t angles = objective.model().num_angles();
  TrainResult result;
  result.traces.resize(config.restarts);
  bool any = false;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    const std::vector<double> init = initial_parameters(config, r, heads, angles).flatten();
    RestartOutcome out;
    out.x = Eigen::Map<const Vec>(init.data(), static_cast<Eigen::Index>(init.size()));
    try {
      if (config.optimizer == OptimizerKind::kLbfgs) {
        run_lbfgs(objective, config, out);
      } else {
        run_adam(objective, config, out);
      }
    } catch (const NonFiniteCost& e) {
      out.trace.failed = true;
      out.trace.failure = e.what();
    }
    const bool usable = !out.trace.failed && !out.trace.costs.empty();
    if (usable && (!any || out.trace.costs.back() < result.best_cost)) {
      any = true;
      result.best_cost = out.trace.costs.back();
      result.best_restart = r;
      result.best = Parameters::unflatten({out.x.data(), static_cast<std::size_t>(out.x.size())}, heads);
    }
    result.traces[r] = std::move(out.trace);
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!any) throw std::runtime_error("train: all " + std::to_string(config.restarts) + " restarts failed");
  return result;
}

TrainResult train(const ReadoutModel& model, const Eigen::MatrixXd& X, std::vector<double> y, const LossSpec& loss,
                  const TrainConfig& config) {
  const Objective obj(model, X, std::move(y), loss);
  return train(obj, config);
}

void write_trace_csv(const TrainResult& result, std::ostream& out) {
  out << "restart,iteration,cost\n";
  for (std::size_t r = 0; r < result.traces.size(); ++r) {
    const auto& costs = result.traces[r].costs;
    for (std::size_t i = 0; i < costs.size(); ++i) out << r << ',' << i << ',' << format_double(costs[i]) << '\n';
  }
}

}  // namespace qcll::optimize
