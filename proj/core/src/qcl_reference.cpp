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

#include "qcll/qcl_reference.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcll/sketch.hpp"

namespace qcll::qcl {

namespace {

struct StatevectorBatch final : EncodedBatch {
  Eigen::MatrixXcd states;  // one encoded input per column
  std::size_t size() const noexcept override { return static_cast<std::size_t>(states.cols()); }
};

const StatevectorBatch& as_statevectors(const EncodedBatch& batch) {
  const auto* sv = dynamic_cast<const StatevectorBatch*>(&batch);
  if (!sv) throw std::invalid_argument("QclReadout: batch was not produced by a statevector model");
  return *sv;
}

void check_theta(const CircuitSpec& spec, std::span<const double> theta) {
  if (theta.size() != spec.num_angles()) {
    throw std::invalid_argument("QCL circuit: expected " + std::to_string(spec.num_angles()) + " angles, got " +
                                std::to_string(theta.size()));
  }
}

// 2 Re <lambda| G_q |phi> summed over columns, G_q = [[0, -1], [1, 0]] on qubit q.
double generator_overlap(const Eigen::MatrixXcd& lambda, const Eigen::MatrixXcd& phi, std::size_t num_qubits,
                         std::size_t qubit) {
  const std::size_t dim = static_cast<std::size_t>(phi.rows());
  const std::size_t stride = std::size_t{1} << (num_qubits - 1 - qubit);
  double total = 0.0;
  for (Eigen::Index n = 0; n < phi.cols(); ++n) {
    const Complex* l = lambda.col(n).data();
    const Complex* p = phi.col(n).data();
    double acc = 0.0;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        acc += (std::conj(l[i + stride]) * p[i] - std::conj(l[i]) * p[i + stride]).real();
      }
    }
    total += 2.0 * acc;
  }
  return total;
}

}  // namespace

Statevector::Statevector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  const auto n = static_cast<std::size_t>(amplitudes_.size());
  if (n == 0 || !std::has_single_bit(n)) {
    throw std::invalid_argument("Statevector: length " + std::to_string(n) + " is not a power of two");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("Statevector: norm " + std::to_string(norm) + " differs from 1");
  }
  num_qubits_ = static_cast<std::size_t>(std::countr_zero(n));
}

Statevector encode(std::span<const double> x, const EncodingSpec& spec) {
  spec.validate_for_statevector();
  const auto factors = encoding_factors(x, spec);
  const ComplexVector amps = sketch::kronecker_product(factors);
  return Statevector(Eigen::Map<const Eigen::VectorXcd>(amps.data(), static_cast<Eigen::Index>(amps.size())));
}

Eigen::MatrixXcd haar_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex{re, im};
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex{1.0, 0.0};
  }
  return q;
}

CircuitSpec::CircuitSpec(std::size_t num_qubits, std::vector<Eigen::MatrixXcd> layers, std::uint64_t seed)
    : num_qubits_(num_qubits), layers_(std::move(layers)), seed_(seed) {}

CircuitSpec CircuitSpec::sample(std::size_t num_qubits, std::size_t depth, std::uint64_t seed) {
  if (num_qubits == 0 || num_qubits > kMaxStatevectorQubits) {
    throw std::invalid_argument("CircuitSpec: qubit count " + std::to_string(num_qubits) + " outside [1, " +
                                std::to_string(kMaxStatevectorQubits) + "]");
  }
  std::vector<Eigen::MatrixXcd> layers;
  layers.reserve(depth);
  for (std::size_t m = 0; m < depth; ++m) {
    Rng rng(derive_seed(seed, {m}));
    layers.push_back(haar_unitary(std::size_t{1} << num_qubits, rng));
  }
  return CircuitSpec(num_qubits, std::move(layers), seed);
}

CircuitSpec CircuitSpec::from_layers(std::size_t num_qubits, std::vector<Eigen::MatrixXcd> layers) {
  if (num_qubits == 0 || num_qubits > kMaxStatevectorQubits) {
    throw std::invalid_argument("CircuitSpec: qubit count outside the supported range");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  for (std::size_t m = 0; m < layers.size(); ++m) {
    const auto& u = layers[m];
    if (u.rows() != dim || u.cols() != dim) {
      throw std::invalid_argument("CircuitSpec: layer " + std::to_string(m) + " has the wrong shape");
    }
    const double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) throw std::invalid_argument("CircuitSpec: layer " + std::to_string(m) + " is not unitary");
  }
  return CircuitSpec(num_qubits, std::move(layers), 0);
}

void apply_rotation_layer(std::span<const double> angles, Eigen::Ref<Eigen::MatrixXcd> states) {
  const std::size_t q_count = angles.size();
  const auto dim = static_cast<std::size_t>(states.rows());
  if (q_count >= 64 || dim != (std::size_t{1} << q_count)) {
    throw std::invalid_argument("apply_rotation_layer: " + std::to_string(q_count) +
                                " angles do not match a state of dimension " + std::to_string(dim));
  }
  for (std::size_t q = 0; q < q_count; ++q) {
    const double c = std::cos(angles[q]);
    const double s = std::sin(angles[q]);
    const std::size_t stride = std::size_t{1} << (q_count - 1 - q);
    for (Eigen::Index n = 0; n < states.cols(); ++n) {
      Complex* psi = states.col(n).data();
      for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
          const Complex a0 = psi[i];
          const Complex a1 = psi[i + stride];
          psi[i] = c * a0 - s * a1;
          psi[i + stride] = s * a0 + c * a1;
        }
      }
    }
  }
}

void apply_circuit(const CircuitSpec& spec, std::span<const double> theta, Eigen::Ref<Eigen::MatrixXcd> states) {
  check_theta(spec, theta);
  if (static_cast<std::size_t>(states.rows()) != spec.dim()) {
    throw std::invalid_argument("apply_circuit: state dimension does not match the circuit");
  }
  const std::size_t q = spec.num_qubits();
  for (std::size_t m = 0; m < spec.depth(); ++m) {
    states = spec.layers()[m] * states;
    apply_rotation_layer(theta.subspan(m * q, q), states);
  }
}

Statevector apply_circuit(const CircuitSpec& spec, std::span<const double> theta, const Statevector& state) {
  Eigen::MatrixXcd work = state.amplitudes();
  apply_circuit(spec, theta, work);
  return Statevector(work.col(0));
}

double expectation(const Statevector& state, const Observable& b) { return b.expectation(state.span()); }

double predict_qcl(const CircuitSpec& spec, std::span<const double> theta, double a, double b,
                   std::span<const double> x, const EncodingSpec& encoding, const Observable& observable,
                   const OutputMap& f) {
  const Statevector out = apply_circuit(spec, theta, encode(x, encoding));
  const double linear = a * expectation(out, observable) + b;
  return f ? f(linear) : linear;
}

std::vector<double> gradient_qcl(const CircuitSpec& spec, std::span<const double> theta, std::span<const double> x,
                                 const EncodingSpec& encoding, const Observable& observable) {
  check_theta(spec, theta);
  const Statevector input = encode(x, encoding);
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  // The rotation carries the full angle, so <B> is a trigonometric
  // polynomial of frequency 2 in each theta_p and the exact two-point rule
  // uses shifts of pi/4 with unit weight.
  constexpr double kShift = std::numbers::pi / 4.0;
  for (std::size_t p = 0; p < theta.size(); ++p) {
    shifted[p] = theta[p] + kShift;
    const double plus = expectation(apply_circuit(spec, shifted, input), observable);
    shifted[p] = theta[p] - kShift;
    const double minus = expectation(apply_circuit(spec, shifted, input), observable);
    shifted[p] = theta[p];
    grad[p] = plus - minus;
  }
  return grad;
}

QclReadout::QclReadout(EncodingSpec encoding, CircuitSpec circuit, std::vector<Observable> observables)
    : encoding_(std::move(encoding)), circuit_(std::move(circuit)), observables_(std::move(observables)) {
  encoding_.validate_for_statevector();
  if (encoding_.total_qubits() != circuit_.num_qubits()) {
    throw std::invalid_argument("QclReadout: encoding uses " + std::to_string(encoding_.total_qubits()) +
                                " qubits but the circuit has " + std::to_string(circuit_.num_qubits()));
  }
  if (observables_.empty()) throw std::invalid_argument("QclReadout: at least one observable is required");
  for (const auto& b : observables_) {
    if (b.dim() != circuit_.dim()) throw std::invalid_argument("QclReadout: observable dimension mismatch");
  }
}

std::unique_ptr<EncodedBatch> QclReadout::encode(const Eigen::MatrixXd& X) const {
  if (static_cast<std::size_t>(X.cols()) != input_dim()) {
    throw std::invalid_argument("QclReadout::encode: expected " + std::to_string(input_dim()) + " features");
  }
  auto batch = std::make_unique<StatevectorBatch>();
  batch->states.resize(static_cast<Eigen::Index>(circuit_.dim()), X.rows());
  std::vector<double> row(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index n = 0; n < X.rows(); ++n) {
    for (Eigen::Index d = 0; d < X.cols(); ++d) row[static_cast<std::size_t>(d)] = X(n, d);
    batch->states.col(n) = qcl::encode(row, encoding_).amplitudes();
  }
  return batch;
}

Eigen::MatrixXd QclReadout::readouts(std::span<const double> theta, const EncodedBatch& batch) const {
  Eigen::MatrixXcd phi = as_statevectors(batch).states;
  apply_circuit(circuit_, theta, phi);
  Eigen::MatrixXd z(phi.cols(), static_cast<Eigen::Index>(observables_.size()));
  for (std::size_t c = 0; c < observables_.size(); ++c)
    for (Eigen::Index n = 0; n < phi.cols(); ++n)
      z(n, static_cast<Eigen::Index>(c)) =
          observables_[c].expectation({phi.col(n).data(), static_cast<std::size_t>(phi.rows())});
  return z;
}

Eigen::MatrixXd QclReadout::readouts_with_vjp(std::span<const double> theta, const EncodedBatch& batch,
                                              const ReadoutWeights& weights, std::span<double> grad_theta) const {
  if (grad_theta.size() != num_angles()) throw std::invalid_argument("QclReadout: gradient buffer has the wrong size");
  Eigen::MatrixXcd phi = as_statevectors(batch).states;
  apply_circuit(circuit_, theta, phi);

  const auto n_samples = phi.cols();
  Eigen::MatrixXd z(n_samples, static_cast<Eigen::Index>(observables_.size()));
  for (std::size_t c = 0; c < observables_.size(); ++c)
    for (Eigen::Index n = 0; n < n_samples; ++n)
      z(n, static_cast<Eigen::Index>(c)) =
          observables_[c].expectation({phi.col(n).data(), static_cast<std::size_t>(phi.rows())});

  const Eigen::MatrixXd w = weights(z);
  // lambda_n = sum_c w(n, c) B_c phi_n: the cotangent of the output state.
  Eigen::MatrixXcd lambda = Eigen::MatrixXcd::Zero(phi.rows(), n_samples);
  for (std::size_t c = 0; c < observables_.size(); ++c)
    lambda += observables_[c].apply(phi) * w.col(static_cast<Eigen::Index>(c)).cast<Complex>().asDiagonal();

  const std::size_t q = circuit_.num_qubits();
  std::vector<double> inverse(q);
  for (std::size_t m = circuit_.depth(); m-- > 0;) {
    const auto angles = theta.subspan(m * q, q);
    for (std::size_t k = 0; k < q; ++k) grad_theta[m * q + k] = generator_overlap(lambda, phi, q, k);
    for (std::size_t k = 0; k < q; ++k) inverse[k] = -angles[k];
    apply_rotation_layer(inverse, phi);
    apply_rotation_layer(inverse, lambda);
    if (m > 0) {
      const Eigen::MatrixXcd& u = circuit_.layers()[m];
      phi = u.adjoint() * phi;
      lambda = u.adjoint() * lambda;
    }
  }
  return z;
}

}  // namespace qcll::qcl
