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
 * Circuit-like learner on count sketches.
 *
 * The 2^Q-dimensional product state of an input is never formed. Instead:
 *
 *   v_in(x)    tensor sketch of the Q factors (x_d, sqrt(1 - x_d^2)) with Q
 *              frozen K' x 2 count sketches;
 *   u_i(theta) tensor sketch of the P factors (cos theta_p, sin theta_p),
 *              one independent set of P sketches per output i = 0..I-1;
 *   out_i      u_i . v_in             (inner-product variant), or
 *              u_i^H R v_in           (random-unitary variant, R Haar on K');
 *   readout    Re(out^H B out).
 *
 * Shifting theta_p by pi/2 maps (cos, sin) to its derivative (-sin, cos),
 * so d out_i / d theta_p is out_i evaluated at theta + (pi/2) e_p with the
 * same frozen sketches. This is exact, not a finite difference.
 *
 * Batched evaluation works in the Fourier domain: with U_i = fft(u_i) and
 * V = fft(v_in), Parseval gives u_i . v_in = (1/K') sum_j conj(U_i[j]) V[j],
 * and U_i is the elementwise product of the per-factor spectra, so the
 * shifted spectra come from prefix/suffix products in O(P K') per output.
 * Nothing here allocates memory proportional to 2^Q or 2^P.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcll/encoding.hpp"
#include "qcll/observable.hpp"
#include "qcll/readout_model.hpp"
#include "qcll/sketch.hpp"

namespace qcll::sketched {

enum class OutputVariant {
  kInnerProduct,   // out_i = u_i . v_in
  kRandomUnitary,  // out_i = u_i^H R v_in
};

struct QcllConfig {
  EncodingSpec encoding;
  std::size_t sketch_dim = 100;
  std::size_t num_angles = 36;
  std::size_t num_outputs = 10;
  OutputVariant variant = OutputVariant::kInnerProduct;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on zero dimensions or a bad encoding.
  void validate() const;
};

/// Frozen random structure. All sketch tables (and R) are sampled from
/// `config.seed` at construction, so a model is fully described by its
/// config. Immutable; safe to share across threads.
class QcllModel {
 public:
  explicit QcllModel(QcllConfig config);
  /// Random-unitary variant with an explicit R in place of the sampled one.
  /// Throws std::invalid_argument unless R is K' x K' and unitary to 1e-10.
  QcllModel(QcllConfig config, Eigen::MatrixXcd mixing);

  const QcllConfig& config() const noexcept { return config_; }
  std::size_t sketch_dim() const noexcept { return config_.sketch_dim; }
  std::size_t num_angles() const noexcept { return config_.num_angles; }
  std::size_t num_outputs() const noexcept { return config_.num_outputs; }
  std::size_t num_qubits() const noexcept { return input_sketches_.size(); }
  std::size_t input_dim() const noexcept { return config_.encoding.input_dim(); }

  const std::vector<sketch::CountSketchMatrix>& input_sketches() const noexcept { return input_sketches_; }
  const sketch::CountSketchMatrix& weight_sketch(std::size_t output, std::size_t angle) const;
  /// R for the random-unitary variant; empty otherwise.
  const std::optional<Eigen::MatrixXcd>& mixing_unitary() const noexcept { return mixing_; }

  /// Sketch of the encoded input. Throws std::domain_error when |x_d| > 1.
  sketch::SketchVector sketch_input(std::span<const double> x) const;
  /// Sketch of the theta-parameterized weight vector for output `i`.
  sketch::SketchVector sketch_weight(std::span<const double> theta, std::size_t i) const;
  /// All I outputs for one input, evaluated in the time domain.
  ComplexVector output_vector(std::span<const double> x, std::span<const double> theta) const;
  /// I x P matrix of d out_i / d theta_p by the pi/2 shift.
  Eigen::MatrixXcd output_gradient(std::span<const double> x, std::span<const double> theta) const;
  /// F(a Re(out^H B out) + b); F defaults to the identity.
  double predict(std::span<const double> x, std::span<const double> theta, double a, double b,
                 const Observable& observable, const std::function<double(double)>& f = {}) const;

  /// fft of the sketched input (after R for the random-unitary variant).
  ComplexVector input_spectrum(std::span<const double> x) const;
  /// Spectra of the P weight factors of output i: row p = fft(C_{i,p} w_p)
  /// with w_p = (cos theta_p, sin theta_p), or its derivative
  /// (-sin theta_p, cos theta_p) when `derivative` is set.
  void factor_spectra(std::span<const double> theta, std::size_t i, bool derivative, Eigen::MatrixXcd& out) const;

 private:
  void check_theta(std::span<const double> theta) const;

  QcllConfig config_;
  std::vector<sketch::CountSketchMatrix> input_sketches_;
  std::vector<sketch::CountSketchMatrix> weight_sketches_;  // output-major: [i * P + p]
  std::optional<Eigen::MatrixXcd> mixing_;
  ComplexVector roots_;  // exp(-2 pi i k / K')
};

/// Trainer-facing wrapper: a shared model plus its readout observables.
class QcllReadout final : public ReadoutModel {
 public:
  QcllReadout(std::shared_ptr<const QcllModel> model, std::vector<Observable> observables);

  std::size_t num_angles() const noexcept override { return model_->num_angles(); }
  std::size_t num_observables() const noexcept override { return observables_.size(); }
  std::size_t input_dim() const noexcept override { return model_->input_dim(); }

  const QcllModel& model() const noexcept { return *model_; }
  const std::vector<Observable>& observables() const noexcept { return observables_; }

  std::unique_ptr<EncodedBatch> encode(const Eigen::MatrixXd& X) const override;
  Eigen::MatrixXd readouts(std::span<const double> theta, const EncodedBatch& batch) const override;
  Eigen::MatrixXd readouts_with_vjp(std::span<const double> theta, const EncodedBatch& batch,
                                    const ReadoutWeights& weights, std::span<double> grad_theta) const override;

 private:
  /// Rows of the outputs restricted to `active_`, one column per sample.
  Eigen::MatrixXcd active_outputs(std::span<const double> theta, const Eigen::MatrixXcd& spectra,
                                  std::vector<Eigen::MatrixXcd>* factor_cache) const;

  std::shared_ptr<const QcllModel> model_;
  std::vector<Observable> observables_;
  std::vector<std::size_t> active_;             // outputs touched by some observable
  std::vector<Eigen::MatrixXcd> restricted_;    // observables on active x active
};

}  // namespace qcll::sketched
