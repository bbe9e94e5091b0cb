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

#include "saft/fft.hpp"

#include <cmath>

namespace saft {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2 * kPi / static_cast<double>(len) * (inverse ? 1 : -1);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

// Bluestein: turns an arbitrary-size DFT into a pow2 convolution.
void fft_bluestein(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the phase argument small.
    const std::size_t k2 = static_cast<std::size_t>((static_cast<unsigned long long>(k) * k) % (2 * n));
    const double ang = kPi * static_cast<double>(k2) / static_cast<double>(n) * (inverse ? 1 : -1);
    chirp[k] = std::complex<double>(std::cos(ang), std::sin(ang));
  }
  // X_k = chirp_k * sum_t (a_t chirp_t) conj(chirp_{k-t}).
  std::vector<std::complex<double>> x(m, {0, 0}), y(m, {0, 0});
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);
  fft_radix2(x, false);
  fft_radix2(y, false);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  fft_radix2(x, true);
  for (std::size_t k = 0; k < m; ++k) x[k] /= static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
}

}  // namespace

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (is_pow2(n))
    fft_radix2(a, inverse);
  else
    fft_bluestein(a, inverse);
  if (inverse)
    for (auto& v : a) v /= static_cast<double>(n);
}

void fft_nd(std::vector<std::complex<double>>& a, const std::vector<std::int64_t>& dims,
            bool inverse) {
  const int nd = static_cast<int>(dims.size());
  std::int64_t total = 1;
  for (auto d : dims) total *= d;
  std::vector<std::int64_t> stride(nd, 1);
  for (int d = nd - 2; d >= 0; --d) stride[d] = stride[d + 1] * dims[d + 1];

  std::vector<std::complex<double>> line;
  for (int d = 0; d < nd; ++d) {
    const std::int64_t len = dims[d];
    if (len == 1) continue;
    line.assign(len, {0, 0});
    const std::int64_t lines = total / len;
    for (std::int64_t li = 0; li < lines; ++li) {
      // Base offset of this line: unflatten li over the remaining axes.
      std::int64_t base = 0, rest = li;
      for (int e = nd - 1; e >= 0; --e) {
        if (e == d) continue;
        const std::int64_t idx = rest % dims[e];
        rest /= dims[e];
        base += idx * stride[e];
      }
      for (std::int64_t k = 0; k < len; ++k) line[k] = a[base + k * stride[d]];
      fft(line, inverse);
      for (std::int64_t k = 0; k < len; ++k) a[base + k * stride[d]] = line[k];
    }
  }
}

}  // namespace saft
