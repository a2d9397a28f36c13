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


// Process-wide heap accounting for tests that bound peak memory. Linking
// alloc_tracker.cpp interposes malloc and friends (glibc), which also covers
// operator new and Eigen's aligned allocator.

#pragma once

#include <cstddef>

namespace qcll::testing {

/// Bytes currently allocated through operator new.
std::size_t live_bytes() noexcept;
/// Largest value of live_bytes() since the last reset_peak().
std::size_t peak_bytes() noexcept;
/// Largest single request since the last reset_peak().
std::size_t largest_request() noexcept;
void reset_peak() noexcept;

}  // namespace qcll::testing
