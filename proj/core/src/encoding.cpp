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

#include "qcll/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qcll {

std::size_t EncodingSpec::total_qubits() const noexcept {
  return std::accumulate(qubits_per_dim.begin(), qubits_per_dim.end(), std::size_t{0});
}

void EncodingSpec::validate() const {
  if (qubits_per_dim.empty()) throw std::invalid_argument("EncodingSpec: at least one input dimension is required");
  for (std::size_t d = 0; d < qubits_per_dim.size(); ++d) {
    if (qubits_per_dim[d] == 0) {
      throw std::invalid_argument("EncodingSpec: dimension " + std::to_string(d) + " has zero qubits");
    }
  }
}

void EncodingSpec::validate_for_statevector() const {
  validate();
  if (total_qubits() > kMaxStatevectorQubits) {
    throw std::invalid_argument("EncodingSpec: " + std::to_string(total_qubits()) +
                                " qubits exceeds the statevector cap of " + std::to_string(kMaxStatevectorQubits));
  }
}

std::vector<ComplexVector> encoding_factors(std::span<const double> x, const EncodingSpec& spec) {
  spec.validate();
  if (x.size() != spec.input_dim()) {
    throw std::invalid_argument("encode: input has " + std::to_string(x.size()) + " features, expected " +
                                std::to_string(spec.input_dim()));
  }
  std::vector<ComplexVector> factors;
  factors.reserve(spec.total_qubits());
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double xd = x[d];
    if (!(std::abs(xd) <= 1.0)) {
      std::ostringstream msg;
      msg << "encode: feature " << d << " = " << xd << " lies outside [-1, 1]";
      throw std::domain_error(msg.str());
    }
    const double co = std::sqrt(std::max(0.0, 1.0 - xd * xd));
    for (std::size_t q = 0; q < spec.qubits_per_dim[d]; ++q) factors.push_back({Complex{xd, 0.0}, Complex{co, 0.0}});
  }
  return factors;
}

}  // namespace qcll
