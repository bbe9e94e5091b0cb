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

#include "saft/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>

#include "saft/error.hpp"

namespace saft {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ConfigParse: return "ConfigParse";
    case Errc::UnknownKey: return "UnknownKey";
    case Errc::WrongCount: return "WrongCount";
    case Errc::DuplicateResidue: return "DuplicateResidue";
    case Errc::NotExpanding: return "NotExpanding";
    case Errc::BadParameters: return "BadParameters";
    case Errc::WrongDilation: return "WrongDilation";
    case Errc::WrongGenerator: return "WrongGenerator";
    case Errc::DepthExceedsGrid: return "DepthExceedsGrid";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::LevelBeyondNyquist: return "LevelBeyondNyquist";
    case Errc::LevelTooFine: return "LevelTooFine";
    case Errc::InsufficientLevels: return "InsufficientLevels";
    case Errc::EmptyStepSet: return "EmptyStepSet";
    case Errc::NotLocated: return "NotLocated";
    case Errc::DegenerateBoundaryDistance: return "DegenerateBoundaryDistance";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::Unstable: return "Unstable";
    case Errc::NotRefinable: return "NotRefinable";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

IntMatrix::IntMatrix(int dim, std::vector<std::int64_t> entries) : n(dim), a(std::move(entries)) {
  if (n <= 0 || a.size() != static_cast<std::size_t>(n) * n)
    raise(Errc::BadParameters, "matrix entries do not match dimension");
}

IntMatrix IntMatrix::identity(int dim) {
  IntMatrix m(dim, std::vector<std::int64_t>(static_cast<std::size_t>(dim) * dim, 0));
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

IntVec IntMatrix::apply(const IntVec& v) const {
  IntVec out(n, 0);
  for (int i = 0; i < n; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < n; ++j) s += at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

IntMatrix IntMatrix::multiply(const IntMatrix& other) const {
  IntMatrix out(n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) out.at(i, j) += at(i, k) * other.at(k, j);
  return out;
}

IntMatrix IntMatrix::power(int e) const {
  IntMatrix out = identity(n);
  for (int i = 0; i < e; ++i) out = out.multiply(*this);
  return out;
}

namespace {

// Determinant of the minor obtained by deleting row `dr` and column `dc`
// (pass -1 to keep all). Laplace expansion; matrices here are tiny.
std::int64_t det_minor(const IntMatrix& m, std::vector<int> rows, std::vector<int> cols) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  if (k == 1) return m.at(rows[0], cols[0]);
  std::int64_t det = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    sub_cols.reserve(k - 1);
    for (std::size_t c = 0; c < k; ++c)
      if (c != j) sub_cols.push_back(cols[c]);
    const std::int64_t term = m.at(rows[0], cols[j]) * det_minor(m, sub_rows, sub_cols);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

}  // namespace

std::int64_t IntMatrix::determinant() const {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return det_minor(*this, idx, idx);
}

IntMatrix IntMatrix::adjugate() const {
  IntMatrix out(n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<int> rows, cols;
      for (int r = 0; r < n; ++r)
        if (r != j) rows.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != i) cols.push_back(c);
      const std::int64_t cof = det_minor(*this, rows, cols);
      out.at(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return out;
}

std::vector<double> IntMatrix::apply(const std::vector<double>& v) const {
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += static_cast<double>(at(i, j)) * v[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> IntMatrix::eigenvalue_moduli() const {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = static_cast<double>(at(i, j));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  std::vector<double> moduli(n);
  for (int i = 0; i < n; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end());
  return moduli;
}

bool solve_integer(const IntMatrix& m, const IntVec& v, IntVec& z) {
  const std::int64_t det = m.determinant();
  if (det == 0) return false;
  const IntMatrix adj = m.adjugate();
  const IntVec w = adj.apply(v);
  z.assign(m.n, 0);
  for (int i = 0; i < m.n; ++i) {
    if (w[i] % det != 0) return false;
    z[i] = w[i] / det;
  }
  return true;
}

std::vector<double> apply_inverse_power(const IntMatrix& m, int e, const std::vector<double>& v) {
  const std::int64_t det = m.determinant();
  const IntMatrix adj = m.adjugate();
  std::vector<double> out = v;
  for (int step = 0; step < e; ++step) {
    std::vector<double> w = adj.apply(out);
    for (double& x : w) x /= static_cast<double>(det);
    out = std::move(w);
  }
  return out;
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace saft
