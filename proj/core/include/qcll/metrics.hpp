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

#include <span>
#include <stdexcept>

namespace qcll::metrics {

/// Raised when a statistic is undefined for the input (e.g. zero variance).
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sqrt(mean((pred - target)^2)). Throws std::invalid_argument on empty or
/// mismatched inputs.
double rmse(std::span<const double> pred, std::span<const double> target);
/// Fraction of positions where the labels differ.
double classification_error(std::span<const double> pred, std::span<const double> target);
/// Product-moment correlation. Throws std::invalid_argument when fewer than
/// two points and DegenerateInputError when either input is constant.
double pearson(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1 denominator); 0 for a single value.
double stddev(std::span<const double> v);

}  // namespace qcll::metrics
