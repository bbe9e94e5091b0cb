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

#include "saft/localapprox.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "saft/error.hpp"

namespace saft {

namespace {

void enumerate_exponents(int dim, std::vector<int>& cur, int pos, int remaining,
                         std::vector<std::vector<int>>& out) {
  if (pos == dim) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    enumerate_exponents(dim, cur, pos + 1, remaining - e, out);
  }
  cur[pos] = 0;
}

double norm_mean(const std::vector<double>& r, double p) {
  if (std::isinf(p)) {
    double mx = 0;
    for (double v : r) mx = std::max(mx, std::abs(v));
    return mx;
  }
  double s = 0;
  for (double v : r) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(r.size()), 1.0 / p);
}

}  // namespace

MonomialBasis MonomialBasis::make(int dim, int degree) {
  if (degree < 0) raise(Errc::BadParameters, "polynomial degree must be >= 0");
  MonomialBasis b;
  b.dim = dim;
  b.degree = degree;
  std::vector<int> cur(dim, 0);
  for (int total = 0; total <= degree; ++total)
    enumerate_exponents(dim, cur, 0, total, b.exponents);
  return b;
}

double PolynomialPatch::evaluate(const std::vector<double>& x) const {
  double acc = 0;
  for (std::size_t t = 0; t < coefficients.size(); ++t) {
    double term = coefficients[t];
    for (int d = 0; d < basis.dim; ++d) {
      const double u = (x[d] - center[d]) / halfwidth[d];
      for (int e = 0; e < basis.exponents[t][d]; ++e) term *= u;
    }
    acc += term;
  }
  return acc;
}

struct CellFitter::Impl {
  Eigen::MatrixXd design;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
};

CellFitter::CellFitter(const GridFunction& f, int level, int degree)
    : f_(&f), level_(level), degree_(degree) {
  const int n = f.spec().dim();
  basis_ = MonomialBasis::make(n, degree);
  if (level < 0 || level > f.level()) raise(Errc::BadParameters, "cell level out of range");
  block_ = f.cell_samples(level);
  if (block_ < basis_.size())
    raise(Errc::RankDeficient, "cell holds " + std::to_string(block_) +
                                   " samples but the basis needs " + std::to_string(basis_.size()));

  // In-cell offsets are the same for every cell of the level; frame them to
  // the bounding box so fine-level monomials stay conditioned.
  std::vector<std::vector<double>> offsets(block_);
  std::vector<double> lo(n, 1e300), hi(n, -1e300);
  for (std::int64_t i = 0; i < block_; ++i) {
    offsets[i] = f.point_of(i);  // first cell of the first tile
    for (int d = 0; d < n; ++d) {
      lo[d] = std::min(lo[d], offsets[i][d]);
      hi[d] = std::max(hi[d], offsets[i][d]);
    }
  }
  center_.assign(n, 0.0);
  halfwidth_.assign(n, 1.0);
  for (int d = 0; d < n; ++d) {
    center_[d] = 0.5 * (lo[d] + hi[d]);
    halfwidth_[d] = std::max(0.5 * (hi[d] - lo[d]), 1e-300);
  }

  impl_ = std::make_shared<Impl>();
  impl_->design.resize(block_, basis_.size());
  for (std::int64_t i = 0; i < block_; ++i) {
    for (int t = 0; t < basis_.size(); ++t) {
      double v = 1;
      for (int d = 0; d < n; ++d) {
        const double u = (offsets[i][d] - center_[d]) / halfwidth_[d];
        for (int e = 0; e < basis_.exponents[t][d]; ++e) v *= u;
      }
      impl_->design(i, t) = v;
    }
  }
  impl_->qr.compute(impl_->design);
}

void CellFitter::fit(std::int64_t cell, std::vector<double>& coefficients,
                     std::vector<double>& residuals) const {
  const std::int64_t base = cell * block_;
  Eigen::VectorXd b(block_);
  for (std::int64_t i = 0; i < block_; ++i) b[i] = (*f_)[base + i];
  const Eigen::VectorXd c = impl_->qr.solve(b);
  const Eigen::VectorXd r = b - impl_->design * c;
  coefficients.assign(c.data(), c.data() + c.size());
  residuals.assign(r.data(), r.data() + r.size());
}

double CellFitter::omega(std::int64_t cell, double p) const {
  std::vector<double> c, r;
  fit(cell, c, r);
  return norm_mean(r, p);
}

double CellFitter::osc_via_irls(std::int64_t cell, double p) const {
  // Lawson-style reweighting toward the L^p minimizer, started from the L2
  // fit; the reported value is the best iterate, so it never exceeds omega.
  const std::int64_t base = cell * block_;
  Eigen::VectorXd b(block_);
  for (std::int64_t i = 0; i < block_; ++i) b[i] = (*f_)[base + i];

  Eigen::VectorXd c = impl_->qr.solve(b);
  Eigen::VectorXd r = b - impl_->design * c;
  std::vector<double> rv(r.data(), r.data() + r.size());
  double best = norm_mean(rv, p);

  Eigen::VectorXd w = Eigen::VectorXd::Ones(block_);
  const int iterations = 12;
  for (int it = 0; it < iterations; ++it) {
    const double eps = 1e-12 * (1.0 + r.cwiseAbs().maxCoeff());
    for (std::int64_t i = 0; i < block_; ++i) {
      const double a = std::abs(r[i]) + eps;
      w[i] = std::isinf(p) ? w[i] * a : std::pow(a, p - 2.0);
    }
    w /= w.maxCoeff();
    const Eigen::MatrixXd aw = w.cwiseSqrt().asDiagonal() * impl_->design;
    const Eigen::VectorXd bw = w.cwiseSqrt().asDiagonal() * b;
    c = aw.colPivHouseholderQr().solve(bw);
    r = b - impl_->design * c;
    rv.assign(r.data(), r.data() + r.size());
    best = std::min(best, norm_mean(rv, p));
  }
  return best;
}

double CellFitter::osc(std::int64_t cell, double p) const {
  if (p == 2.0) return omega(cell, p);
  const std::int64_t base = cell * block_;

  if (degree_ == 0 && (p == 1.0 || std::isinf(p))) {
    // Exact constants: median for p=1, midrange for p=inf.
    std::vector<double> v(block_);
    for (std::int64_t i = 0; i < block_; ++i) v[i] = (*f_)[base + i];
    double best;
    if (std::isinf(p)) {
      const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
      best = 0.5 * (*mn + *mx);
    } else {
      std::vector<double> s = v;
      const std::size_t mid = s.size() / 2;
      std::nth_element(s.begin(), s.begin() + mid, s.end());
      best = s[mid];
    }
    for (double& x : v) x -= best;
    return norm_mean(v, p);
  }
  if (p == 1.0 || std::isinf(p)) return std::min(omega(cell, p), osc_via_irls(cell, p));
  // Other p: the projector value stands in, equivalent up to constants.
  return omega(cell, p);
}

PolynomialPatch CellFitter::patch(const GridFunction& f, std::int64_t cell) const {
  PolynomialPatch p;
  p.cell = f.address_of_cell(cell, level_);
  p.basis = basis_;
  std::vector<double> resid;
  fit(cell, p.coefficients, resid);
  // The shared frame belongs to the first cell; shift it to this one.
  const std::vector<double> rep0 = f.point_of(0);
  const std::vector<double> rep = cell_representative(p.cell, f.spec());
  p.center = center_;
  for (int d = 0; d < f.spec().dim(); ++d) p.center[d] += rep[d] - rep0[d];
  p.halfwidth = halfwidth_;
  return p;
}

PolynomialPatch project_cell(const GridFunction& f, const CellAddress& cell, int degree) {
  CellFitter fitter(f, cell.level, degree);
  return fitter.patch(f, f.cell_index(cell));
}

double omega(const GridFunction& f, const std::vector<double>& x, int level, int degree, double p) {
  CellFitter fitter(f, level, degree);
  return fitter.omega(f.locate_cell(x, level), p);
}

double osc(const GridFunction& f, const std::vector<double>& x, int level, int degree, double p) {
  CellFitter fitter(f, level, degree);
  return fitter.osc(f.locate_cell(x, level), p);
}

std::vector<IntVec> difference_steps(const GridFunction& f, int level, int degree) {
  const TilingSpec& spec = f.spec();
  const int n = spec.dim();
  const double bound = spec.geometry().inradius / (2.0 * (degree + 1));
  const int lam = f.level() - level;
  if (lam < 0) raise(Errc::BadParameters, "level beyond grid resolution");

  auto physical_norm = [&](const IntVec& w) {
    std::vector<double> v(n);
    for (int d = 0; d < n; ++d) v[d] = static_cast<double>(w[d]);
    v = apply_inverse_power(spec.dilation(), lam, v);
    double s = 0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  };

  std::vector<IntVec> steps;
  // Axis steps: a dense run below the admissible maximum (the sup lives
  // there), then geometric coverage of the smaller scales.
  for (int d = 0; d < n; ++d) {
    IntVec w(n, 0);
    w[d] = 1;
    if (physical_norm(w) >= bound) continue;
    std::int64_t lo = 1, hi = 2;
    while (true) {
      w[d] = hi;
      if (physical_norm(w) >= bound || hi > (std::int64_t{1} << 40)) break;
      lo = hi;
      hi *= 2;
    }
    while (lo + 1 < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      w[d] = mid;
      if (physical_norm(w) < bound)
        lo = mid;
      else
        hi = mid;
    }
    const std::int64_t jmax = lo;
    for (std::int64_t j = jmax; j > jmax - 8 && j >= 1; --j) {
      w[d] = j;
      steps.push_back(w);
      if (static_cast<int>(steps.size()) >= 64) return steps;
    }
    for (std::int64_t j = jmax / 2; j >= 1; j /= 2) {
      w[d] = j;
      steps.push_back(w);
      if (static_cast<int>(steps.size()) >= 64) return steps;
    }
  }
  if (n > 1) {
    // Seeded lattice directions to cover off-axis behavior.
    std::uint64_t state = 0x5af7c0deULL ^ (static_cast<std::uint64_t>(level) << 32);
    int added = 0;
    int guard = 0;
    while (added < 2 * n && static_cast<int>(steps.size()) < 64 && guard++ < 256) {
      IntVec w(n, 0);
      bool nonzero = false;
      for (int d = 0; d < n; ++d) {
        w[d] = static_cast<std::int64_t>(splitmix64(state) % 5) - 2;
        nonzero |= (w[d] != 0);
      }
      if (!nonzero || physical_norm(w) >= bound) continue;
      IntVec best = w, trial = w;
      while (true) {
        for (int d = 0; d < n; ++d) trial[d] *= 2;
        if (physical_norm(trial) >= bound) break;
        best = trial;
      }
      steps.push_back(best);
      ++added;
    }
  }
  return steps;
}

namespace {

double difference_lp(const GridFunction& f, const IntVec& w, int order, double p,
                     SeamPolicy policy) {
  const TilingSpec& spec = f.spec();
  const int n = spec.dim();
  std::vector<double> binom(order + 1, 1.0);
  for (int e = 1; e <= order; ++e) binom[e] = binom[e - 1] * (order - e + 1) / e;

  const bool interior = policy == SeamPolicy::Interior;
  if (interior && !spec.is_cube())
    raise(Errc::BadParameters, "interior seam policy needs a cube tiling");
  std::vector<std::int64_t> modulus(n, 0);
  if (interior) {
    const std::int64_t scale = ipow(spec.cube_base(), f.level());
    for (int d = 0; d < n; ++d) modulus[d] = scale * f.window()[d];
  }

  double sum = 0, mx = 0;
  std::int64_t used = 0;
  IntVec zz(n);
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const IntVec z = f.z_of(i);
    if (interior) {
      bool inside = true;
      for (int d = 0; d < n && inside; ++d) {
        const std::int64_t far_end = z[d] + static_cast<std::int64_t>(order) * w[d];
        inside = far_end >= 0 && far_end < modulus[d];
      }
      if (!inside) continue;
    }
    double acc = 0;
    for (int e = 0; e <= order; ++e) {
      for (int d = 0; d < n; ++d) zz[d] = z[d] + e * w[d];
      const double sign = ((order - e) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom[e] * f[f.index_of_z(zz)];
    }
    if (std::isinf(p))
      mx = std::max(mx, std::abs(acc));
    else
      sum += std::pow(std::abs(acc), p);
    ++used;
  }
  if (used == 0) return 0;
  if (std::isinf(p)) return mx;
  const double cell = std::pow(static_cast<double>(spec.digit_count()), -f.level());
  return std::pow(cell * sum, 1.0 / p);
}

}  // namespace

double difference_norm(const GridFunction& f, int level, int degree, double p, SeamPolicy policy) {
  const auto steps = difference_steps(f, level, degree);
  if (steps.empty())
    raise(Errc::EmptyStepSet, "no admissible difference step at level " + std::to_string(level));
  double best = 0;
  for (const auto& w : steps) best = std::max(best, difference_lp(f, w, degree + 1, p, policy));
  return best;
}

double local_difference(const GridFunction& f, const std::vector<double>& x, int level,
                        int degree, double p) {
  const auto steps = difference_steps(f, level, degree);
  if (steps.empty())
    raise(Errc::EmptyStepSet, "no admissible difference step at level " + std::to_string(level));
  const std::int64_t block = f.cell_samples(level);
  const std::int64_t base = f.locate_cell(x, level) * block;
  const int order = degree + 1;
  std::vector<double> binom(order + 1, 1.0);
  for (int e = 1; e <= order; ++e) binom[e] = binom[e - 1] * (order - e + 1) / e;

  double best = 0;
  std::vector<double> vals(block);
  IntVec zz(f.spec().dim());
  for (const auto& w : steps) {
    for (std::int64_t i = 0; i < block; ++i) {
      const IntVec z = f.z_of(base + i);
      double acc = 0;
      for (int e = 0; e <= order; ++e) {
        for (std::size_t d = 0; d < zz.size(); ++d) zz[d] = z[d] + e * w[d];
        const double sign = ((order - e) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom[e] * f[f.index_of_z(zz)];
      }
      vals[i] = acc;
    }
    best = std::max(best, norm_mean(vals, p));
  }
  return best;
}

std::vector<PointwiseTriple> pointwise_sequences(const GridFunction& f,
                                                 const std::vector<double>& x, int degree,
                                                 double p, int lmax) {
  std::vector<PointwiseTriple> out;
  out.reserve(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    CellFitter fitter(f, l, degree);
    const std::int64_t cell = f.locate_cell(x, l);
    PointwiseTriple t;
    t.omega = fitter.omega(cell, p);
    t.osc = fitter.osc(cell, p);
    try {
      t.difference = local_difference(f, x, l, degree, p);
    } catch (const Error& e) {
      if (e.code() != Errc::EmptyStepSet) throw;
      t.difference = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace saft
