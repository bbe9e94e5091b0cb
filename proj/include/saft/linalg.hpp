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

#include <cstdint>
#include <vector>

namespace saft {

/// Integer lattice vector. Dimension is carried by the size.
using IntVec = std::vector<std::int64_t>;

/// Dense row-major n x n integer matrix with exact arithmetic helpers.
/// Dilation matrices are small (n <= 4 in practice), so O(n!) cofactor
/// expansions are fine here.
struct IntMatrix {
  int n = 0;
  std::vector<std::int64_t> a;  // row-major, size n*n

  IntMatrix() = default;
  IntMatrix(int dim, std::vector<std::int64_t> entries);

  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }

  static IntMatrix identity(int dim);

  IntVec apply(const IntVec& v) const;
  IntMatrix multiply(const IntMatrix& other) const;
  IntMatrix power(int e) const;  // e >= 0

  std::int64_t determinant() const;
  /// adj(M) with M * adj(M) = det(M) * I.
  IntMatrix adjugate() const;

  std::vector<double> apply(const std::vector<double>& v) const;
  /// Moduli of the eigenvalues, ascending.
  std::vector<double> eigenvalue_moduli() const;

  bool operator==(const IntMatrix& other) const { return n == other.n && a == other.a; }
};

/// Solves M z = v over the integers. Returns true and fills z when v is in
/// the lattice M Z^n; exact (adjugate / determinant divisibility test).
bool solve_integer(const IntMatrix& m, const IntVec& v, IntVec& z);

/// (M^{-1})^e applied to a real vector, computed in double precision.
std::vector<double> apply_inverse_power(const IntMatrix& m, int e, const std::vector<double>& v);

std::int64_t ipow(std::int64_t base, int e);
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace saft
