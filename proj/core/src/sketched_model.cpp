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

#include "qcll/sketched_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcll/qcl_reference.hpp"
#include "qcll/random.hpp"

namespace qcll::sketched {

namespace {

struct SpectrumBatch final : EncodedBatch {
  Eigen::MatrixXcd spectra;  // K' x N, column n = input_spectrum(x_n)
  std::size_t size() const noexcept override { return static_cast<std::size_t>(spectra.cols()); }
};

const SpectrumBatch& as_spectra(const EncodedBatch& batch) {
  const auto* sb = dynamic_cast<const SpectrumBatch*>(&batch);
  if (!sb) throw std::invalid_argument("QcllReadout: batch was not produced by a sketched model");
  return *sb;
}

// prefix.row(p) = prod_{q < p} factors.row(q); prefix has P + 1 rows.
void prefix_products(const Eigen::MatrixXcd& factors, Eigen::MatrixXcd& prefix) {
  prefix.resize(factors.rows() + 1, factors.cols());
  prefix.row(0).setOnes();
  for (Eigen::Index p = 0; p < factors.rows(); ++p) prefix.row(p + 1) = prefix.row(p).cwiseProduct(factors.row(p));
}

}  // namespace

void QcllConfig::validate() const {
  encoding.validate();
  if (sketch_dim == 0) throw std::invalid_argument("QcllConfig: sketch_dim must be >= 1");
  if (num_angles == 0) throw std::invalid_argument("QcllConfig: num_angles must be >= 1");
  if (num_outputs == 0) throw std::invalid_argument("QcllConfig: num_outputs must be >= 1");
}

QcllModel::QcllModel(QcllConfig config) : config_(std::move(config)) {
  config_.validate();
  const std::size_t kp = config_.sketch_dim;
  const std::size_t q_total = config_.encoding.total_qubits();
  input_sketches_.reserve(q_total);
  for (std::size_t q = 0; q < q_total; ++q)
    input_sketches_.push_back(sketch::sample_count_sketch(2, kp, derive_seed(config_.seed, {0, q})));
  weight_sketches_.reserve(config_.num_outputs * config_.num_angles);
  for (std::size_t i = 0; i < config_.num_outputs; ++i)
    for (std::size_t p = 0; p < config_.num_angles; ++p)
      weight_sketches_.push_back(sketch::sample_count_sketch(2, kp, derive_seed(config_.seed, {1, i, p})));
  if (config_.variant == OutputVariant::kRandomUnitary) {
    Rng rng(derive_seed(config_.seed, {2}));
    mixing_ = qcl::haar_unitary(kp, rng);
  }
  roots_.resize(kp);
  for (std::size_t k = 0; k < kp; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(kp);
    roots_[k] = {std::cos(angle), std::sin(angle)};
  }
}

QcllModel::QcllModel(QcllConfig config, Eigen::MatrixXcd mixing) : QcllModel([&] {
  config.variant = OutputVariant::kInnerProduct;  // skip sampling; R is installed below
  return std::move(config);
}()) {
  const auto kp = static_cast<Eigen::Index>(sketch_dim());
  if (mixing.rows() != kp || mixing.cols() != kp) {
    throw std::invalid_argument("QcllModel: mixing matrix must be " + std::to_string(kp) + " x " + std::to_string(kp));
  }
  const double err = (mixing.adjoint() * mixing - Eigen::MatrixXcd::Identity(kp, kp)).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw std::invalid_argument("QcllModel: mixing matrix is not unitary");
  config_.variant = OutputVariant::kRandomUnitary;
  mixing_ = std::move(mixing);
}

const sketch::CountSketchMatrix& QcllModel::weight_sketch(std::size_t output, std::size_t angle) const {
  if (output >= num_outputs() || angle >= num_angles()) {
    throw std::invalid_argument("QcllModel::weight_sketch: index (" + std::to_string(output) + ", " +
                                std::to_string(angle) + ") out of range");
  }
  return weight_sketches_[output * num_angles() + angle];
}

void QcllModel::check_theta(std::span<const double> theta) const {
  if (theta.size() != num_angles()) {
    throw std::invalid_argument("QcllModel: expected " + std::to_string(num_angles()) + " angles, got " +
                                std::to_string(theta.size()));
  }
}

sketch::SketchVector QcllModel::sketch_input(std::span<const double> x) const {
  sketch::FactorList f{encoding_factors(x, config_.encoding), input_sketches_};
  return sketch::tensor_sketch(f);
}

sketch::SketchVector QcllModel::sketch_weight(std::span<const double> theta, std::size_t i) const {
  check_theta(theta);
  if (i >= num_outputs()) {
    throw std::invalid_argument("QcllModel::sketch_weight: output index " + std::to_string(i) + " out of range");
  }
  sketch::FactorList f;
  f.factors.reserve(theta.size());
  for (double t : theta) f.factors.push_back({Complex{std::cos(t), 0.0}, Complex{std::sin(t), 0.0}});
  const auto first = weight_sketches_.begin() + static_cast<std::ptrdiff_t>(i * num_angles());
  f.sketches.assign(first, first + static_cast<std::ptrdiff_t>(num_angles()));
  return sketch::tensor_sketch(f);
}

ComplexVector QcllModel::output_vector(std::span<const double> x, std::span<const double> theta) const {
  check_theta(theta);
  sketch::SketchVector v = sketch_input(x);
  if (mixing_) {
    Eigen::Map<Eigen::VectorXcd> vm(v.data(), static_cast<Eigen::Index>(v.size()));
    vm = (*mixing_ * vm).eval();
  }
  ComplexVector out(num_outputs());
  for (std::size_t i = 0; i < num_outputs(); ++i) out[i] = sketch::estimate_inner(sketch_weight(theta, i), v);
  return out;
}

ComplexVector QcllModel::input_spectrum(std::span<const double> x) const {
  sketch::SketchVector v = sketch_input(x);
  if (mixing_) {
    Eigen::Map<Eigen::VectorXcd> vm(v.data(), static_cast<Eigen::Index>(v.size()));
    vm = (*mixing_ * vm).eval();
  }
  spectral::plan_for(v.size()).forward(v);
  return v;
}

void QcllModel::factor_spectra(std::span<const double> theta, std::size_t i, bool derivative,
                               Eigen::MatrixXcd& out) const {
  check_theta(theta);
  const std::size_t kp = sketch_dim();
  const std::size_t pc = num_angles();
  out.resize(static_cast<Eigen::Index>(pc), static_cast<Eigen::Index>(kp));
  for (std::size_t p = 0; p < pc; ++p) {
    const auto& c = weight_sketches_[i * pc + p];
    const double cs = std::cos(theta[p]);
    const double sn = std::sin(theta[p]);
    const double w0 = static_cast<double>(c.sign(0)) * (derivative ? -sn : cs);
    const double w1 = static_cast<double>(c.sign(1)) * (derivative ? cs : sn);
    const std::size_t h0 = c.row(0);
    const std::size_t h1 = c.row(1);
    std::size_t k0 = 0;
    std::size_t k1 = 0;
    for (std::size_t j = 0; j < kp; ++j) {
      out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) = w0 * roots_[k0] + w1 * roots_[k1];
      k0 += h0;
      if (k0 >= kp) k0 -= kp;
      k1 += h1;
      if (k1 >= kp) k1 -= kp;
    }
  }
}

Eigen::MatrixXcd QcllModel::output_gradient(std::span<const double> x, std::span<const double> theta) const {
  check_theta(theta);
  const ComplexVector spectrum = input_spectrum(x);
  const auto kp = static_cast<Eigen::Index>(sketch_dim());
  const auto pc = static_cast<Eigen::Index>(num_angles());
  Eigen::Map<const Eigen::RowVectorXcd> v(spectrum.data(), kp);
  const double inv_kp = 1.0 / static_cast<double>(kp);

  Eigen::MatrixXcd grad(static_cast<Eigen::Index>(num_outputs()), pc);
  Eigen::MatrixXcd f, fd, prefix;
  Eigen::RowVectorXcd suffix(kp);
  for (std::size_t i = 0; i < num_outputs(); ++i) {
    factor_spectra(theta, i, false, f);
    factor_spectra(theta, i, true, fd);
    prefix_products(f, prefix);
    suffix.setOnes();
    for (Eigen::Index p = pc; p-- > 0;) {
      const Eigen::RowVectorXcd shifted = prefix.row(p).cwiseProduct(fd.row(p)).cwiseProduct(suffix);
      grad(static_cast<Eigen::Index>(i), p) = inv_kp * shifted.conjugate().cwiseProduct(v).sum();
      suffix = suffix.cwiseProduct(f.row(p));
    }
  }
  return grad;
}

double QcllModel::predict(std::span<const double> x, std::span<const double> theta, double a, double b,
                          const Observable& observable, const std::function<double(double)>& f) const {
  const ComplexVector out = output_vector(x, theta);
  const double linear = a * observable.expectation(out) + b;
  return f ? f(linear) : linear;
}

QcllReadout::QcllReadout(std::shared_ptr<const QcllModel> model, std::vector<Observable> observables)
    : model_(std::move(model)), observables_(std::move(observables)) {
  if (!model_) throw std::invalid_argument("QcllReadout: null model");
  if (observables_.empty()) throw std::invalid_argument("QcllReadout: at least one observable is required");
  std::vector<bool> used(model_->num_outputs(), false);
  for (const auto& b : observables_) {
    if (b.dim() != model_->num_outputs()) {
      throw std::invalid_argument("QcllReadout: observable dimension " + std::to_string(b.dim()) +
                                  " does not match the " + std::to_string(model_->num_outputs()) + " outputs");
    }
    for (std::size_t i : b.support()) used[i] = true;
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) active_.push_back(i);
  const auto na = static_cast<Eigen::Index>(active_.size());
  for (const auto& b : observables_) {
    const Eigen::MatrixXcd full = b.dense();
    Eigen::MatrixXcd r(na, na);
    for (Eigen::Index r0 = 0; r0 < na; ++r0)
      for (Eigen::Index c0 = 0; c0 < na; ++c0)
        r(r0, c0) = full(static_cast<Eigen::Index>(active_[static_cast<std::size_t>(r0)]),
                         static_cast<Eigen::Index>(active_[static_cast<std::size_t>(c0)]));
    restricted_.push_back(std::move(r));
  }
}

std::unique_ptr<EncodedBatch> QcllReadout::encode(const Eigen::MatrixXd& X) const {
  if (static_cast<std::size_t>(X.cols()) != input_dim()) {
    throw std::invalid_argument("QcllReadout::encode: expected " + std::to_string(input_dim()) + " features");
  }
  auto batch = std::make_unique<SpectrumBatch>();
  batch->spectra.resize(static_cast<Eigen::Index>(model_->sketch_dim()), X.rows());
  std::vector<double> row(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index n = 0; n < X.rows(); ++n) {
    for (Eigen::Index d = 0; d < X.cols(); ++d) row[static_cast<std::size_t>(d)] = X(n, d);
    const ComplexVector s = model_->input_spectrum(row);
    batch->spectra.col(n) = Eigen::Map<const Eigen::VectorXcd>(s.data(), static_cast<Eigen::Index>(s.size()));
  }
  return batch;
}

Eigen::MatrixXcd QcllReadout::active_outputs(std::span<const double> theta, const Eigen::MatrixXcd& spectra,
                                             std::vector<Eigen::MatrixXcd>* factor_cache) const {
  const auto kp = static_cast<Eigen::Index>(model_->sketch_dim());
  const double inv_kp = 1.0 / static_cast<double>(kp);
  Eigen::MatrixXcd w(static_cast<Eigen::Index>(active_.size()), kp);
  Eigen::MatrixXcd f;
  if (factor_cache) factor_cache->resize(active_.size());
  for (std::size_t a = 0; a < active_.size(); ++a) {
    model_->factor_spectra(theta, active_[a], false, f);
    w.row(static_cast<Eigen::Index>(a)) = inv_kp * f.colwise().prod().conjugate();
    if (factor_cache) (*factor_cache)[a] = f;
  }
  return w * spectra;
}

Eigen::MatrixXd QcllReadout::readouts(std::span<const double> theta, const EncodedBatch& batch) const {
  const Eigen::MatrixXcd out = active_outputs(theta, as_spectra(batch).spectra, nullptr);
  Eigen::MatrixXd z(out.cols(), static_cast<Eigen::Index>(observables_.size()));
  for (std::size_t c = 0; c < observables_.size(); ++c) {
    const Eigen::MatrixXcd bout = restricted_[c] * out;
    z.col(static_cast<Eigen::Index>(c)) = out.cwiseProduct(bout.conjugate()).colwise().sum().real().transpose();
  }
  return z;
}

Eigen::MatrixXd QcllReadout::readouts_with_vjp(std::span<const double> theta, const EncodedBatch& batch,
                                               const ReadoutWeights& weights, std::span<double> grad_theta) const {
  if (grad_theta.size() != num_angles()) throw std::invalid_argument("QcllReadout: gradient buffer has the wrong size");
  const Eigen::MatrixXcd& spectra = as_spectra(batch).spectra;
  std::vector<Eigen::MatrixXcd> factors;
  const Eigen::MatrixXcd out = active_outputs(theta, spectra, &factors);

  Eigen::MatrixXd z(out.cols(), static_cast<Eigen::Index>(observables_.size()));
  std::vector<Eigen::MatrixXcd> bout(observables_.size());
  for (std::size_t c = 0; c < observables_.size(); ++c) {
    bout[c] = restricted_[c] * out;
    z.col(static_cast<Eigen::Index>(c)) = out.cwiseProduct(bout[c].conjugate()).colwise().sum().real().transpose();
  }

  const Eigen::MatrixXd g = weights(z);
  // Cotangent of the outputs: cot_i(n) = sum_c g(n, c) (B_c out_n)_i.
  Eigen::MatrixXcd cot = Eigen::MatrixXcd::Zero(out.rows(), out.cols());
  for (std::size_t c = 0; c < observables_.size(); ++c)
    cot += bout[c] * g.col(static_cast<Eigen::Index>(c)).cast<Complex>().asDiagonal();
  // Fold the samples into the spectral domain once: y_i[j] = sum_n conj(V(j, n)) cot_i(n).
  const Eigen::MatrixXcd y = spectra.conjugate() * cot.transpose();

  const auto kp = static_cast<Eigen::Index>(model_->sketch_dim());
  const auto pc = static_cast<Eigen::Index>(num_angles());
  const double scale = 2.0 / static_cast<double>(kp);
  std::fill(grad_theta.begin(), grad_theta.end(), 0.0);
  Eigen::MatrixXcd fd, prefix;
  Eigen::RowVectorXcd tail(kp);
  for (std::size_t a = 0; a < active_.size(); ++a) {
    const Eigen::MatrixXcd& f = factors[a];
    model_->factor_spectra(theta, active_[a], true, fd);
    prefix_products(f, prefix);
    tail = y.col(static_cast<Eigen::Index>(a)).transpose();
    for (Eigen::Index p = pc; p-- > 0;) {
      const Complex s = prefix.row(p).cwiseProduct(fd.row(p)).cwiseProduct(tail).sum();
      grad_theta[static_cast<std::size_t>(p)] += scale * s.real();
      tail = tail.cwiseProduct(f.row(p));
    }
  }
  return z;
}

}  // namespace qcll::sketched
