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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcll/spectral.hpp"

namespace qcll {

/// Largest qubit count the exact statevector path will allocate for.
inline constexpr std::size_t kMaxStatevectorQubits = 24;

/// How many qubits encode each input dimension.
struct EncodingSpec {
  std::vector<std::size_t> qubits_per_dim;

  static EncodingSpec uniform(std::size_t input_dim, std::size_t qubits_each) {
    return EncodingSpec{std::vector<std::size_t>(input_dim, qubits_each)};
  }

  std::size_t input_dim() const noexcept { return qubits_per_dim.size(); }
  std::size_t total_qubits() const noexcept;

  /// Throws std::invalid_argument when there are no dimensions or a
  /// dimension has zero qubits.
  void validate() const;
  /// validate() plus the statevector memory cap.
  void validate_for_statevector() const;

  friend bool operator==(const EncodingSpec&, const EncodingSpec&) = default;
};

/// The per-qubit factors (x_d, sqrt(1 - x_d^2)) in Kronecker order:
/// dimension-major, qubit-minor. 1 - x_d^2 is clamped at zero.
/// Throws std::domain_error naming the dimension when |x_d| > 1, and
/// std::invalid_argument when x has the wrong length.
std::vector<ComplexVector> encoding_factors(std::span<const double> x, const EncodingSpec& spec);

}  // namespace qcll
