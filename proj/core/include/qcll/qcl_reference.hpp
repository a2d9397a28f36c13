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

/**
 * @file
 * Exact statevector implementation of a quantum-circuit learner.
 *
 * An input x is encoded as the product state
 *   |in(x)> = (x) over d, then over the Q_d qubits of d, of (x_d, sqrt(1 - x_d^2)),
 * transformed by U(theta) = R_M U_M ... R_1 U_1 with frozen Haar-random U_m
 * and per-qubit y-rotation layers R_m, and read out as <out|B|out>.
 *
 * Qubit ordering: qubit 0 is the first Kronecker factor and occupies the most
 * significant bit of the amplitude index. Angle theta[m * Q + q] rotates
 * qubit q in layer m.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcll/encoding.hpp"
#include "qcll/observable.hpp"
#include "qcll/random.hpp"
#include "qcll/readout_model.hpp"

namespace qcll::qcl {

/// Unit-norm amplitude vector of length 2^Q.
class Statevector {
 public:
  /// Throws std::invalid_argument unless the length is a power of two and
  /// the norm is 1 to within 1e-10.
  explicit Statevector(Eigen::VectorXcd amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  std::span<const Complex> span() const noexcept { return {amplitudes_.data(), dim()}; }

 private:
  Eigen::VectorXcd amplitudes_;
  std::size_t num_qubits_;
};

/// Product-state encoding of x. Throws std::domain_error when |x_d| > 1 and
/// std::invalid_argument when the encoding exceeds the statevector cap.
Statevector encode(std::span<const double> x, const EncodingSpec& spec);

/// Haar-distributed unitary: QR of a complex Ginibre matrix, with the
/// columns rephased so that diag(R) is positive real.
Eigen::MatrixXcd haar_unitary(std::size_t dim, Rng& rng);

/// Frozen circuit structure: Q qubits, M layers of (U_m, then R_m).
class CircuitSpec {
 public:
  /// Samples M Haar unitaries on 2^Q dimensions from `seed`.
  static CircuitSpec sample(std::size_t num_qubits, std::size_t depth, std::uint64_t seed);
  /// Injects explicit layer unitaries. Throws std::invalid_argument when a
  /// layer has the wrong shape or is not unitary to within 1e-10.
  static CircuitSpec from_layers(std::size_t num_qubits, std::vector<Eigen::MatrixXcd> layers);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t depth() const noexcept { return layers_.size(); }
  std::size_t num_angles() const noexcept { return num_qubits_ * layers_.size(); }
  std::size_t dim() const noexcept { return std::size_t{1} << num_qubits_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<Eigen::MatrixXcd>& layers() const noexcept { return layers_; }

 private:
  CircuitSpec(std::size_t num_qubits, std::vector<Eigen::MatrixXcd> layers, std::uint64_t seed);

  std::size_t num_qubits_;
  std::vector<Eigen::MatrixXcd> layers_;
  std::uint64_t seed_;
};

/// Applies (x)_q [[cos a_q, -sin a_q], [sin a_q, cos a_q]] to every column
/// of `states` in O(Q 2^Q) per column. Throws std::invalid_argument unless
/// states.rows() == 2^angles.size().
void apply_rotation_layer(std::span<const double> angles, Eigen::Ref<Eigen::MatrixXcd> states);

/// Applies U_1, R_1, ..., U_M, R_M to every column of `states`.
void apply_circuit(const CircuitSpec& spec, std::span<const double> theta, Eigen::Ref<Eigen::MatrixXcd> states);
Statevector apply_circuit(const CircuitSpec& spec, std::span<const double> theta, const Statevector& state);

/// <state|B|state>.
double expectation(const Statevector& state, const Observable& b);

using OutputMap = std::function<double(double)>;

/// F(a <out(x)|B|out(x)> + b). F defaults to the identity.
double predict_qcl(const CircuitSpec& spec, std::span<const double> theta, double a, double b,
                   std::span<const double> x, const EncodingSpec& encoding, const Observable& observable,
                   const OutputMap& f = {});

/// d<B>/dtheta_p by the two-point shift rule. Each rotation is
/// exp(-i theta Y) with the full angle, so the exact rule is
///   <B>(theta + pi/4 e_p) - <B>(theta - pi/4 e_p).
/// The familiar (f(+pi/2) - f(-pi/2)) / 2 form belongs to half-angle gates
/// and would return zero here.
std::vector<double> gradient_qcl(const CircuitSpec& spec, std::span<const double> theta, std::span<const double> x,
                                 const EncodingSpec& encoding, const Observable& observable);

/// Trainer-facing statevector model. Gradients use an adjoint sweep, which
/// yields the same derivative as gradient_qcl at the cost of roughly three
/// circuit passes instead of 2 * num_angles.
class QclReadout final : public ReadoutModel {
 public:
  QclReadout(EncodingSpec encoding, CircuitSpec circuit, std::vector<Observable> observables);

  std::size_t num_angles() const noexcept override { return circuit_.num_angles(); }
  std::size_t num_observables() const noexcept override { return observables_.size(); }
  std::size_t input_dim() const noexcept override { return encoding_.input_dim(); }

  const EncodingSpec& encoding() const noexcept { return encoding_; }
  const CircuitSpec& circuit() const noexcept { return circuit_; }
  const std::vector<Observable>& observables() const noexcept { return observables_; }

  std::unique_ptr<EncodedBatch> encode(const Eigen::MatrixXd& X) const override;
  Eigen::MatrixXd readouts(std::span<const double> theta, const EncodedBatch& batch) const override;
  Eigen::MatrixXd readouts_with_vjp(std::span<const double> theta, const EncodedBatch& batch,
                                    const ReadoutWeights& weights, std::span<double> grad_theta) const override;

 private:
  EncodingSpec encoding_;
  CircuitSpec circuit_;
  std::vector<Observable> observables_;
};

}  // namespace qcll::qcl
