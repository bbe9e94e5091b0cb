// Copyright 2026 The saft authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace saft {

/// Complex DFT, forward unnormalized, inverse scaled by 1/N. Radix-2 for
/// power-of-two sizes, Bluestein otherwise.
void fft(std::vector<std::complex<double>>& a, bool inverse);

/// Row-major multi-dimensional transform.
void fft_nd(std::vector<std::complex<double>>& a, const std::vector<std::int64_t>& dims,
            bool inverse);

}  // namespace saft
