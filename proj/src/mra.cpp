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

#include "saft/mra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "saft/error.hpp"
#include "saft/fft.hpp"

namespace saft {

namespace {

double central_bspline(int order, double t) {
  if (order == 1) return (t >= -0.5 && t < 0.5) ? 1.0 : 0.0;
  // (1/(k-1)!) sum_j (-1)^j C(k,j) (t + k/2 - j)_+^{k-1}
  double acc = 0, binom = 1;
  for (int j = 0; j <= order; ++j) {
    const double u = t + 0.5 * order - j;
    if (u > 0) acc += ((j % 2 == 0) ? 1.0 : -1.0) * binom * std::pow(u, order - 1);
    binom = binom * (order - j) / (j + 1);
  }
  double fact = 1;
  for (int i = 2; i < order; ++i) fact *= i;
  return acc / fact;
}

/// In-tile lattice translates at one level, digit-string rank order.
std::vector<IntVec> tile_translates(const TilingSpec& spec, int lambda) {
  std::vector<IntVec> cur = {IntVec(spec.dim(), 0)};
  for (int l = 0; l < lambda; ++l) {
    std::vector<IntVec> next;
    next.reserve(cur.size() * spec.digit_count());
    for (const auto& nu : cur) {
      const IntVec base = spec.dilation().apply(nu);
      for (int g = 0; g < spec.digit_count(); ++g) {
        IntVec child = base;
        for (int d = 0; d < spec.dim(); ++d) child[d] += spec.digits()[g][d];
        next.push_back(std::move(child));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

double counting_lp(const std::vector<double>& v, double p) {
  if (std::isinf(p)) {
    double mx = 0;
    for (double a : v) mx = std::max(mx, std::abs(a));
    return mx;
  }
  double s = 0;
  for (double a : v) s += std::pow(std::abs(a), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

GeneratorSet GeneratorSet::haar(std::shared_ptr<const TilingSpec> spec) {
  GeneratorSet g;
  g.spec_ = std::move(spec);
  Member m;
  m.name = "indicator";
  m.kind = Kind::HaarIndicator;
  m.support_radius = 1.0;
  g.members_.push_back(std::move(m));
  g.order_ = 1;
  return g;
}

GeneratorSet GeneratorSet::monomials(std::shared_ptr<const TilingSpec> spec, int degree) {
  GeneratorSet g;
  g.spec_ = std::move(spec);
  const MonomialBasis basis = MonomialBasis::make(g.spec_->dim(), degree);
  for (const auto& alpha : basis.exponents) {
    Member m;
    m.kind = Kind::MonomialOnTile;
    m.alpha = alpha;
    m.name = "p";
    for (int e : alpha) m.name += "_" + std::to_string(e);
    m.support_radius = 1.0;
    g.members_.push_back(std::move(m));
  }
  g.order_ = degree + 1;
  return g;
}

GeneratorSet GeneratorSet::bspline(std::shared_ptr<const TilingSpec> spec, int order) {
  if (!spec->is_cube()) raise(Errc::WrongGenerator, "B-spline generators need a cube tiling");
  if (order < 1) raise(Errc::BadParameters, "spline order must be >= 1");
  GeneratorSet g;
  g.spec_ = std::move(spec);
  Member m;
  m.kind = Kind::BSpline;
  m.spline_order = order;
  m.name = "bspline" + std::to_string(order);
  m.support_radius = 0.5 * order;
  g.members_.push_back(std::move(m));
  g.order_ = order;
  return g;
}

GeneratorSet GeneratorSet::from_samples(std::shared_ptr<const TilingSpec> spec,
                                        std::vector<std::shared_ptr<const GridFunction>> members,
                                        double support_radius) {
  GeneratorSet g;
  g.spec_ = std::move(spec);
  int idx = 0;
  for (auto& s : members) {
    if (s->tile_count() != 1) raise(Errc::WrongGenerator, "sampled generators live on one tile");
    Member m;
    m.kind = Kind::Sampled;
    m.sampled = std::move(s);
    m.name = "sampled" + std::to_string(idx++);
    m.support_radius = support_radius;
    g.members_.push_back(std::move(m));
  }
  g.order_ = 1;
  return g;
}

bool GeneratorSet::tile_supported() const {
  for (const auto& m : members_)
    if (m.kind == Kind::BSpline) return false;
  return true;
}

GeneratorSet::Samples GeneratorSet::sampled_at(int j, int lambda) const {
  const Member& m = members_.at(j);
  Samples out;
  if (m.kind == Kind::BSpline) {
    const int c = spec_->cube_base();
    const int n = spec_->dim();
    const std::int64_t scale = ipow(c, lambda);
    const double half = 0.5 * m.spline_order;
    const std::int64_t lo = static_cast<std::int64_t>(std::floor(-half * scale));
    const std::int64_t hi = static_cast<std::int64_t>(std::ceil(half * scale));
    // Tensor box enumeration.
    std::vector<std::int64_t> idx(n, lo);
    while (true) {
      double v = 1;
      for (int d = 0; d < n; ++d)
        v *= central_bspline(m.spline_order, static_cast<double>(idx[d]) / scale);
      if (v != 0.0) {
        out.offsets.emplace_back(idx.begin(), idx.end());
        out.values.push_back(v);
      }
      int d = n - 1;
      while (d >= 0 && idx[d] == hi) {
        idx[d] = lo;
        --d;
      }
      if (d < 0) break;
      ++idx[d];
    }
    return out;
  }

  out.offsets = tile_translates(*spec_, lambda);
  out.values.resize(out.offsets.size());
  switch (m.kind) {
    case Kind::HaarIndicator:
      std::fill(out.values.begin(), out.values.end(), 1.0);
      break;
    case Kind::MonomialOnTile: {
      for (std::size_t i = 0; i < out.offsets.size(); ++i) {
        std::vector<double> x(spec_->dim());
        for (int d = 0; d < spec_->dim(); ++d)
          x[d] = static_cast<double>(out.offsets[i][d]) + spec_->radix_origin()[d];
        x = apply_inverse_power(spec_->dilation(), lambda, x);
        double v = 1;
        for (int d = 0; d < spec_->dim(); ++d)
          for (int e = 0; e < m.alpha[d]; ++e) v *= x[d];
        out.values[i] = v;
      }
      break;
    }
    case Kind::Sampled: {
      if (m.sampled->level() < lambda)
        raise(Errc::LevelTooFine, "sampled generator is too coarse for this level");
      const std::int64_t stride = ipow(spec_->digit_count(), m.sampled->level() - lambda);
      for (std::size_t i = 0; i < out.offsets.size(); ++i)
        out.values[i] = (*m.sampled)[static_cast<std::int64_t>(i) * stride];
      break;
    }
    case Kind::BSpline:
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------

struct MRASystem::LevelOps {
  enum class Strategy { ShiftDiagonal, CubeCirculant };
  Strategy strategy = Strategy::ShiftDiagonal;
  int l = 0;
  int lambda = 0;
  std::int64_t cells = 0;
  std::vector<GeneratorSet::Samples> members;
  std::vector<IntVec> shift_z0;  // M^lambda * nu_abs per cell
  // correlation terms: (delta, j, k, value)
  std::vector<std::tuple<IntVec, int, int, double>> corr;
  // ShiftDiagonal
  Eigen::MatrixXd block_inverse;
  // CubeCirculant
  std::vector<std::int64_t> dims;
};

MRASystem::MRASystem(GeneratorSet generators, const GridFunction& reference)
    : generators_(std::move(generators)),
      spec_(reference.spec_ptr()),
      grid_level_(reference.level()),
      window_(reference.window()),
      layout_(GridFunction::zeros(reference.spec_ptr(), reference.level(), reference.window())) {
  ops_.resize(grid_level_ + 1);
}

const MRASystem::LevelOps& MRASystem::level_ops(int l) const {
  if (l < 0 || l > grid_level_) raise(Errc::LevelTooFine, "analysis level out of grid range");
  if (ops_[l]) return *ops_[l];

  auto ops = std::make_shared<LevelOps>();
  ops->l = l;
  ops->lambda = grid_level_ - l;
  ops->cells = layout_.cell_count(l);
  const int N = generators_.count();
  for (int j = 0; j < N; ++j) ops->members.push_back(generators_.sampled_at(j, ops->lambda));

  const int n = spec_->dim();
  const IntMatrix mpow = spec_->dilation().power(ops->lambda);
  ops->shift_z0.resize(ops->cells);
  for (std::int64_t c = 0; c < ops->cells; ++c) {
    const CellAddress addr = layout_.address_of_cell(c, l);
    IntVec nu_abs = spec_->dilation().power(l).apply(addr.tile);
    for (int d = 0; d < n; ++d) nu_abs[d] += addr.translate[d];
    ops->shift_z0[c] = mpow.apply(nu_abs);
  }

  const double quad = std::pow(static_cast<double>(spec_->digit_count()), -ops->lambda);
  if (generators_.tile_supported()) {
    // Distinct shifts are disjoint on the grid: one N x N block.
    ops->strategy = LevelOps::Strategy::ShiftDiagonal;
    Eigen::MatrixXd block(N, N);
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        double dot = 0;
        for (std::size_t i = 0; i < ops->members[j].values.size(); ++i)
          dot += ops->members[j].values[i] * ops->members[k].values[i];
        block(j, k) = quad * dot;
        ops->corr.emplace_back(IntVec(n, 0), j, k, block(j, k));
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
    if (lu.rcond() < 1e-10 || !lu.isInvertible())
      raise(Errc::Unstable, "generator Gram block is numerically singular");
    ops->block_inverse = lu.inverse();
  } else {
    if (!spec_->is_cube())
      raise(Errc::WrongGenerator, "box-supported generators need a cube tiling");
    // Correlations by offset-map lookups over a small delta box.
    double radius = 0;
    for (const auto& m : generators_.members()) radius = std::max(radius, m.support_radius);
    const std::int64_t D = static_cast<std::int64_t>(std::ceil(2 * radius)) + 1;
    for (int j = 0; j < N; ++j) {
      std::map<IntVec, double> table;
      for (std::size_t i = 0; i < ops->members[j].offsets.size(); ++i)
        table[ops->members[j].offsets[i]] = ops->members[j].values[i];
      for (int k = 0; k < N; ++k) {
        std::vector<std::int64_t> delta(n, -D);
        while (true) {
          IntVec dv(delta.begin(), delta.end());
          const IntVec shift = mpow.apply(dv);
          double dot = 0;
          IntVec u(n);
          for (std::size_t i = 0; i < ops->members[k].offsets.size(); ++i) {
            for (int d = 0; d < n; ++d) u[d] = ops->members[k].offsets[i][d] + shift[d];
            const auto it = table.find(u);
            if (it != table.end()) dot += it->second * ops->members[k].values[i];
          }
          if (dot != 0.0) ops->corr.emplace_back(dv, j, k, quad * dot);
          int d = n - 1;
          while (d >= 0 && delta[d] == D) {
            delta[d] = -D;
            --d;
          }
          if (d < 0) break;
          ++delta[d];
        }
      }
    }
    ops->strategy = LevelOps::Strategy::CubeCirculant;
    ops->dims.resize(n);
    const std::int64_t scale = ipow(spec_->cube_base(), l);
    for (int d = 0; d < n; ++d) ops->dims[d] = scale * window_[d];
  }
  ops_[l] = ops;
  return *ops_[l];
}

std::vector<std::vector<double>> MRASystem::raw_pairings(const std::vector<double>& samples,
                                                         int l) const {
  const LevelOps& ops = level_ops(l);
  const int N = generators_.count();
  const double scale = std::pow(static_cast<double>(spec_->digit_count()),
                                static_cast<double>(l - grid_level_));
  std::vector<std::vector<double>> b(N, std::vector<double>(ops.cells, 0.0));
  if (generators_.tile_supported()) {
    const std::int64_t block = ipow(spec_->digit_count(), ops.lambda);
    for (int j = 0; j < N; ++j) {
      const auto& values = ops.members[j].values;
      for (std::int64_t c = 0; c < ops.cells; ++c) {
        double dot = 0;
        const double* base = samples.data() + c * block;
        for (std::int64_t i = 0; i < block; ++i) dot += base[i] * values[i];
        b[j][c] = scale * dot;
      }
    }
    return b;
  }
  const int n = spec_->dim();
  IntVec z(n);
  for (int j = 0; j < N; ++j) {
    const auto& mem = ops.members[j];
    for (std::int64_t c = 0; c < ops.cells; ++c) {
      double dot = 0;
      for (std::size_t i = 0; i < mem.offsets.size(); ++i) {
        for (int d = 0; d < n; ++d) z[d] = ops.shift_z0[c][d] + mem.offsets[i][d];
        dot += samples[layout_.index_of_z(z)] * mem.values[i];
      }
      b[j][c] = scale * dot;
    }
  }
  return b;
}

std::vector<std::vector<double>> MRASystem::gram_solve(const std::vector<std::vector<double>>& b,
                                                       int l) const {
  const LevelOps& ops = level_ops(l);
  const int N = generators_.count();
  std::vector<std::vector<double>> a(N, std::vector<double>(ops.cells, 0.0));
  switch (ops.strategy) {
    case LevelOps::Strategy::ShiftDiagonal: {
      for (std::int64_t c = 0; c < ops.cells; ++c) {
        Eigen::VectorXd rhs(N);
        for (int j = 0; j < N; ++j) rhs[j] = b[j][c];
        const Eigen::VectorXd sol = ops.block_inverse * rhs;
        for (int j = 0; j < N; ++j) a[j][c] = sol[j];
      }
      return a;
    }
    case LevelOps::Strategy::CubeCirculant: {
      const int n = spec_->dim();
      std::int64_t total = 1;
      for (auto d : ops.dims) total *= d;
      // cell -> torus row-major position
      std::vector<std::int64_t> stride(n, 1);
      for (int d = n - 2; d >= 0; --d) stride[d] = stride[d + 1] * ops.dims[d + 1];
      std::vector<std::int64_t> perm(ops.cells);
      for (std::int64_t c = 0; c < ops.cells; ++c) {
        const CellAddress addr = layout_.address_of_cell(c, l);
        const IntVec zt = spec_->dilation().power(l).apply(addr.tile);
        std::int64_t r = 0;
        for (int d = 0; d < n; ++d) {
          std::int64_t v = (zt[d] + addr.translate[d]) % ops.dims[d];
          if (v < 0) v += ops.dims[d];
          r += v * stride[d];
        }
        perm[c] = r;
      }
      std::vector<std::vector<std::complex<double>>> spectra(N);
      for (int j = 0; j < N; ++j) {
        spectra[j].assign(total, {0, 0});
        for (std::int64_t c = 0; c < ops.cells; ++c) spectra[j][perm[c]] = b[j][c];
        fft_nd(spectra[j], ops.dims, false);
      }
      // Per-frequency N x N Hermitian solve.
      Eigen::MatrixXcd M(N, N);
      Eigen::VectorXcd rhs(N), sol(N);
      std::vector<std::int64_t> idx(n);
      for (std::int64_t r = 0; r < total; ++r) {
        std::int64_t rest = r;
        for (int d = 0; d < n; ++d) {
          idx[d] = rest / stride[d] % ops.dims[d];
          rest %= stride[d];
        }
        M.setZero();
        for (const auto& [dv, j, k, v] : ops.corr) {
          double phase = 0;
          for (int d = 0; d < n; ++d)
            phase += static_cast<double>(dv[d]) * static_cast<double>(idx[d]) /
                     static_cast<double>(ops.dims[d]);
          const double ang = 2.0 * 3.14159265358979323846 * phase;
          M(j, k) += v * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        if (N == 1) {
          if (std::abs(M(0, 0)) < 1e-12)
            raise(Errc::Unstable, "singular Gram symbol at a grid frequency");
          spectra[0][r] /= M(0, 0);
        } else {
          for (int j = 0; j < N; ++j) rhs[j] = spectra[j][r];
          Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
          if (!lu.isInvertible()) raise(Errc::Unstable, "singular Gram symbol at a grid frequency");
          sol = lu.solve(rhs);
          for (int j = 0; j < N; ++j) spectra[j][r] = sol[j];
        }
      }
      for (int j = 0; j < N; ++j) {
        fft_nd(spectra[j], ops.dims, true);
        for (std::int64_t c = 0; c < ops.cells; ++c) a[j][c] = spectra[j][perm[c]].real();
      }
      return a;
    }
  }
  return a;
}

std::vector<std::vector<double>> MRASystem::coefficients(const GridFunction& f, int l) const {
  if (f.level() != grid_level_ || f.window() != window_)
    raise(Errc::BadParameters, "grid layout does not match the system");
  return gram_solve(raw_pairings(f.samples(), l), l);
}

GridFunction MRASystem::synthesize(const std::vector<std::vector<double>>& coeffs, int l) const {
  const LevelOps& ops = level_ops(l);
  const int N = generators_.count();
  GridFunction out = GridFunction::zeros(spec_, grid_level_, window_);
  auto& samples = out.mutable_samples();
  if (generators_.tile_supported()) {
    const std::int64_t block = ipow(spec_->digit_count(), ops.lambda);
    for (int j = 0; j < N; ++j) {
      const auto& values = ops.members[j].values;
      for (std::int64_t c = 0; c < ops.cells; ++c) {
        const double a = coeffs[j][c];
        if (a == 0.0) continue;
        double* base = samples.data() + c * block;
        for (std::int64_t i = 0; i < block; ++i) base[i] += a * values[i];
      }
    }
    return out;
  }
  const int n = spec_->dim();
  IntVec z(n);
  for (int j = 0; j < N; ++j) {
    const auto& mem = ops.members[j];
    for (std::int64_t c = 0; c < ops.cells; ++c) {
      const double a = coeffs[j][c];
      if (a == 0.0) continue;
      for (std::size_t i = 0; i < mem.offsets.size(); ++i) {
        for (int d = 0; d < n; ++d) z[d] = ops.shift_z0[c][d] + mem.offsets[i][d];
        samples[layout_.index_of_z(z)] += a * mem.values[i];
      }
    }
  }
  return out;
}

GridFunction MRASystem::project(const GridFunction& f, int l) const {
  return synthesize(coefficients(f, l), l);
}

double MRASystem::sigma(const GridFunction& f, int l, double p) const {
  const GridFunction pf = project(f, l);
  std::vector<double> err(f.size());
  for (std::int64_t i = 0; i < f.size(); ++i) err[i] = f[i] - pf[i];
  return lp_norm_of(err, p, std::pow(static_cast<double>(spec_->digit_count()), -grid_level_));
}

StabilityCertificate MRASystem::check_stability() const {
  const LevelOps& ops = level_ops(0);
  const int N = generators_.count();
  const std::int64_t S = ops.cells;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(S * N, S * N);
  // Periodized level-0 Gram assembled from correlation terms.
  const int n = spec_->dim();
  for (std::int64_t mu = 0; mu < S; ++mu) {
    const CellAddress am = layout_.address_of_cell(mu, 0);
    for (std::int64_t nu = 0; nu < S; ++nu) {
      const CellAddress an = layout_.address_of_cell(nu, 0);
      for (const auto& [dv, j, k, v] : ops.corr) {
        bool match = true;
        for (int d = 0; d < n; ++d) {
          std::int64_t diff = an.tile[d] - am.tile[d] - dv[d];
          diff %= window_[d];
          if (diff < 0) diff += window_[d];
          match = match && diff == 0;
        }
        if (match) G(j * S + mu, k * S + nu) += v;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (G + G.transpose()));
  StabilityCertificate cert;
  cert.min_eigenvalue = eig.eigenvalues().minCoeff();
  cert.max_eigenvalue = eig.eigenvalues().maxCoeff();
  if (cert.min_eigenvalue <= 1e-8)
    raise(Errc::Unstable, "smallest Gram eigenvalue " + std::to_string(cert.min_eigenvalue) +
                              " is at or below tolerance");
  return cert;
}

std::vector<GridFunction> MRASystem::dual_set() const {
  check_stability();
  const LevelOps& ops = level_ops(0);
  const int N = generators_.count();
  std::vector<GridFunction> duals;
  duals.reserve(N);
  for (int j = 0; j < N; ++j) {
    // Unit vector at (j, shift 0) through the inverse Gram, then synthesized.
    std::vector<std::vector<double>> e(N, std::vector<double>(ops.cells, 0.0));
    e[j][0] = 1.0;
    duals.push_back(synthesize(gram_solve(e, 0), 0));
  }
  return duals;
}

namespace {

using Poly = std::map<std::vector<int>, double>;

Poly poly_one(int n) { return {{std::vector<int>(n, 0), 1.0}}; }

Poly poly_mul(const Poly& a, const Poly& b, int n) {
  Poly out;
  for (const auto& [ea, va] : a)
    for (const auto& [eb, vb] : b) {
      std::vector<int> e(n, 0);
      for (int d = 0; d < n; ++d)
        e[d] = (d < static_cast<int>(ea.size()) ? ea[d] : 0) +
               (d < static_cast<int>(eb.size()) ? eb[d] : 0);
      out[e] += va * vb;
    }
  return out;
}

}  // namespace

RefinementMask MRASystem::refinement_mask() const {
  const int N = generators_.count();
  const int n = spec_->dim();
  const int m = spec_->digit_count();

  // Candidate shifts nu for the two-scale relation.
  std::vector<IntVec> offsets;
  if (generators_.tile_supported()) {
    for (const auto& g : spec_->digits()) offsets.push_back(g);
  } else {
    double radius = 0;
    for (const auto& mem : generators_.members()) radius = std::max(radius, mem.support_radius);
    const std::int64_t D = static_cast<std::int64_t>(std::ceil(radius * (spec_->lambda0() + 1)));
    std::vector<std::int64_t> idx(n, -D);
    while (true) {
      offsets.emplace_back(idx.begin(), idx.end());
      int d = n - 1;
      while (d >= 0 && idx[d] == D) {
        idx[d] = -D;
        --d;
      }
      if (d < 0) break;
      ++idx[d];
    }
  }

  // Least squares at a moderate resolution: phi_j at level lam versus
  // level-(lam-1) children.
  const int lam = std::min(grid_level_, 9);
  std::vector<GeneratorSet::Samples> fine(N), coarse(N);
  for (int j = 0; j < N; ++j) {
    fine[j] = generators_.sampled_at(j, lam);
    coarse[j] = generators_.sampled_at(j, lam - 1);
  }
  // Row space: union of fine offsets and all shifted child offsets.
  std::map<IntVec, std::int64_t> row_of;
  const IntMatrix mpow = spec_->dilation().power(lam - 1);
  for (int j = 0; j < N; ++j)
    for (const auto& u : fine[j].offsets)
      row_of.emplace(u, static_cast<std::int64_t>(row_of.size()));
  for (int k = 0; k < N; ++k)
    for (const auto& nu : offsets) {
      const IntVec shift = mpow.apply(nu);
      for (const auto& u : coarse[k].offsets) {
        IntVec z(n);
        for (int d = 0; d < n; ++d) z[d] = u[d] + shift[d];
        row_of.emplace(z, static_cast<std::int64_t>(row_of.size()));
      }
    }
  const std::int64_t rows = static_cast<std::int64_t>(row_of.size());
  const std::int64_t cols = static_cast<std::int64_t>(N * offsets.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  for (int k = 0; k < N; ++k)
    for (std::size_t o = 0; o < offsets.size(); ++o) {
      const IntVec shift = mpow.apply(offsets[o]);
      for (std::size_t i = 0; i < coarse[k].offsets.size(); ++i) {
        IntVec z(n);
        for (int d = 0; d < n; ++d) z[d] = coarse[k].offsets[i][d] + shift[d];
        A(row_of.at(z), k * offsets.size() + o) += coarse[k].values[i];
      }
    }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);

  RefinementMask mask;
  mask.offsets = offsets;
  mask.c.assign(N, std::vector<std::vector<double>>(N, std::vector<double>(offsets.size(), 0.0)));
  double worst = 0;
  for (int j = 0; j < N; ++j) {
    Eigen::VectorXd bvec = Eigen::VectorXd::Zero(rows);
    for (std::size_t i = 0; i < fine[j].offsets.size(); ++i)
      bvec[row_of.at(fine[j].offsets[i])] = fine[j].values[i];
    const Eigen::VectorXd sol = qr.solve(bvec);
    const double resid = (A * sol - bvec).cwiseAbs().maxCoeff();
    worst = std::max(worst, resid);
    for (int k = 0; k < N; ++k)
      for (std::size_t o = 0; o < offsets.size(); ++o)
        mask.c[j][k][o] = sol[k * offsets.size() + o];
  }
  mask.residual = worst;
  if (worst > 1e-6)
    raise(Errc::NotRefinable, "two-scale residual " + std::to_string(worst) + " above tolerance");

  // Closed form for the monomial family: expand (M^{-1}(y + gamma))^alpha.
  bool all_monomial = true;
  for (const auto& mem : generators_.members())
    all_monomial = all_monomial && mem.kind == GeneratorSet::Kind::MonomialOnTile;
  if (all_monomial) {
    const std::int64_t det = spec_->dilation().determinant();
    const IntMatrix adj = spec_->dilation().adjugate();
    RefinementMask closed = mask;
    for (auto& per_j : closed.c)
      for (auto& per_k : per_j) std::fill(per_k.begin(), per_k.end(), 0.0);
    for (int j = 0; j < N; ++j) {
      const auto& alpha = generators_.members()[j].alpha;
      for (std::size_t o = 0; o < offsets.size(); ++o) {
        // linear form per coordinate: (adj*(y + gamma))_d / det
        Poly prod = poly_one(n);
        for (int d = 0; d < n; ++d) {
          Poly lin;
          std::vector<int> e(n, 0);
          double c0 = 0;
          for (int t = 0; t < n; ++t) {
            const double coef = static_cast<double>(adj.at(d, t)) / static_cast<double>(det);
            if (coef != 0.0) {
              e.assign(n, 0);
              e[t] = 1;
              lin[e] += coef;
            }
            c0 += coef * static_cast<double>(offsets[o][t]);
          }
          if (c0 != 0.0) lin[std::vector<int>(n, 0)] += c0;
          for (int rep = 0; rep < alpha[d]; ++rep) prod = poly_mul(prod, lin, n);
        }
        for (const auto& [expo, val] : prod) {
          for (int k = 0; k < N; ++k)
            if (generators_.members()[k].alpha == expo) closed.c[j][k][o] += val;
        }
      }
    }
    double disagreement = 0;
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (std::size_t o = 0; o < offsets.size(); ++o)
          disagreement = std::max(disagreement, std::abs(closed.c[j][k][o] - mask.c[j][k][o]));
    if (disagreement > 1e-10)
      raise(Errc::NotRefinable,
            "closed-form and least-squares masks disagree by " + std::to_string(disagreement));
    closed.residual = mask.residual;
    return closed;
  }
  return mask;
}

CoefficientPyramid MRASystem::pyramid(const GridFunction& f, int lmax) const {
  if (lmax + 1 > grid_level_) raise(Errc::LevelTooFine, "pyramid exceeds grid resolution");
  CoefficientPyramid pyr;
  pyr.lmax = lmax;
  pyr.a.resize(lmax + 2);

  std::vector<GridFunction> projections;
  projections.reserve(lmax + 2);
  for (int l = 0; l <= lmax + 1; ++l) projections.push_back(project(f, l));

  pyr.p0 = projections.front().samples();
  pyr.plast = projections.back().samples();
  pyr.a[0] = coefficients(projections[0], 0);
  pyr.residues.resize(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    std::vector<double> r(f.size());
    for (std::int64_t i = 0; i < f.size(); ++i)
      r[i] = projections[l + 1][i] - projections[l][i];
    pyr.a[l + 1] = gram_solve(raw_pairings(r, l + 1), l + 1);
    pyr.residues[l] = std::move(r);
  }
  return pyr;
}

StrangFixReport MRASystem::strang_fix_check(int order) const {
  StrangFixReport report;
  report.order = order;
  // Dedicated carrier: window wide enough to hold an interior region clear
  // of the periodization seam. Tile-supported duals are exactly local, but
  // overlapping-shift duals only decay geometrically, so the seam error of a
  // non-periodic monomial needs real distance to fall below tolerance.
  double radius = 1;
  for (const auto& mem : generators_.members()) radius = std::max(radius, mem.support_radius);
  const std::int64_t margin =
      generators_.tile_supported() ? static_cast<std::int64_t>(std::ceil(radius)) + 1 : 20;
  const std::int64_t width = 2 * margin + 4;
  const int n = spec_->dim();
  // Keep the carrier affordable in higher dimensions.
  int lc = 8;
  while (lc > 3 && std::pow(static_cast<double>(spec_->digit_count()), lc) *
                           std::pow(static_cast<double>(width), n) >
                       (1 << 20))
    --lc;
  IntVec window(n, width);
  GridFunction carrier = GridFunction::zeros(spec_, lc, window);
  MRASystem local(generators_, carrier);

  const MonomialBasis basis = MonomialBasis::make(n, order - 1);
  double worst = 0;
  for (const auto& alpha : basis.exponents) {
    GridFunction q = GridFunction::zeros(spec_, lc, window);
    auto& samples = q.mutable_samples();
    for (std::int64_t i = 0; i < q.size(); ++i) {
      const std::vector<double> x = q.point_of(i);
      double v = 1;
      for (int d = 0; d < n; ++d)
        for (int e = 0; e < alpha[d]; ++e) v *= x[d];
      samples[i] = v;
    }
    const GridFunction pq = local.project(q, 0);
    for (std::int64_t i = 0; i < q.size(); ++i) {
      const std::vector<double> x = q.point_of(i);
      bool interior = true;
      for (int d = 0; d < n; ++d)
        interior = interior && x[d] >= static_cast<double>(margin) &&
                   x[d] < static_cast<double>(width - margin);
      if (interior) worst = std::max(worst, std::abs(q[i] - pq[i]));
    }
  }
  report.max_residual = worst;
  report.pass = worst <= 1e-8;
  return report;
}

NormReport MRASystem::norm_variants(const GridFunction& f, double s, double p, double q,
                                    int lmax) const {
  if (s <= 0) raise(Errc::BadParameters, "s must be positive");
  if (!(p >= 1) || !(q >= 1)) raise(Errc::BadParameters, "p, q must lie in [1, inf]");
  const CoefficientPyramid pyr = pyramid(f, lmax);
  const double cell = std::pow(static_cast<double>(spec_->digit_count()), -grid_level_);
  const double m = static_cast<double>(spec_->digit_count());
  const double lambda0 = spec_->lambda0();

  NormReport report;
  report.s = s;
  report.p = p;
  report.q = q;
  report.degree = generators_.order() - 1;
  report.lmax = lmax;
  report.lp_norm = f.lp_norm(p);

  // sigma_l = ||f - P_l f||_p reconstructed from the telescoping sums.
  std::vector<double> sigma_levels(lmax + 1), residue_levels(lmax + 1), coeff_levels(lmax + 2);
  std::vector<double> acc = pyr.p0;
  std::vector<double> err(f.size());
  for (int l = 0; l <= lmax; ++l) {
    if (l > 0)
      for (std::int64_t i = 0; i < f.size(); ++i) acc[i] += pyr.residues[l - 1][i];
    for (std::int64_t i = 0; i < f.size(); ++i) err[i] = f[i] - acc[i];
    sigma_levels[l] = lp_norm_of(err, p, cell);
    residue_levels[l] = lp_norm_of(pyr.residues[l], p, cell);
  }
  for (int l = 0; l <= lmax + 1; ++l) {
    double sum = 0;
    for (int j = 0; j < generators_.count(); ++j) sum += counting_lp(pyr.a[l][j], p);
    const double prefactor = std::isinf(p) ? 1.0 : std::pow(m, -static_cast<double>(l) / p);
    coeff_levels[l] = prefactor * sum;
  }

  report.per_level["sigma"] = sigma_levels;
  report.per_level["residue"] = residue_levels;
  report.per_level["coeff"] = coeff_levels;
  report.variants["sigma"] = report.lp_norm + weighted_aggregate(sigma_levels, s, q, lambda0);
  report.variants["residue"] =
      lp_norm_of(pyr.p0, p, cell) + weighted_aggregate(residue_levels, s, q, lambda0);
  report.variants["coeff"] = weighted_aggregate(coeff_levels, s, q, lambda0);

  // Wavelet variant for the single-indicator system.
  if (generators_.count() == 1 &&
      generators_.members()[0].kind == GeneratorSet::Kind::HaarIndicator) {
    const WaveletPyramid wp = wavelet_coeffs(f, haar_wavelets(*spec_), lmax);
    std::vector<double> wavelet_levels(lmax + 1);
    for (int l = 0; l <= lmax; ++l) {
      double sum = 0;
      for (const auto& arr : wp.b[l]) sum += counting_lp(arr, p);
      const double prefactor =
          std::isinf(p) ? std::pow(m, 0.5 * l) : std::pow(m, l * (0.5 - 1.0 / p));
      wavelet_levels[l] = prefactor * sum;
    }
    report.per_level["wavelet"] = wavelet_levels;
    report.variants["wavelet"] =
        counting_lp(wp.a0, p) + weighted_aggregate(wavelet_levels, s, q, lambda0);
  }

  for (const auto& [name, levels] : report.per_level) {
    const SlopeFit fit = log2_slope(levels, 0, static_cast<int>(levels.size()) - 1);
    report.slopes[name] = fit.slope;
    double last = std::numeric_limits<double>::quiet_NaN();
    for (int l = static_cast<int>(levels.size()) - 1; l >= 0; --l)
      if (!std::isnan(levels[l])) {
        last = std::pow(lambda0, s * l) * levels[l];
        break;
      }
    report.last_weighted_term[name] = last;
  }
  return report;
}

HaarWavelets haar_wavelets(const TilingSpec& spec) {
  const int m = spec.digit_count();
  HaarWavelets w;
  w.m = m;
  // Deterministic orthonormal completion of the normalized all-ones row:
  // Gram-Schmidt over the standard basis, fixed order, first nonzero
  // component positive.
  std::vector<std::vector<double>> rows;
  rows.push_back(std::vector<double>(m, 1.0 / std::sqrt(static_cast<double>(m))));
  for (int e = 0; e < m && static_cast<int>(rows.size()) < m; ++e) {
    std::vector<double> v(m, 0.0);
    v[e] = 1.0;
    for (const auto& r : rows) {
      double dot = 0;
      for (int i = 0; i < m; ++i) dot += r[i] * v[i];
      for (int i = 0; i < m; ++i) v[i] -= dot * r[i];
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) continue;
    int lead = 0;
    while (lead < m && std::abs(v[lead]) < 1e-12) ++lead;
    const double sign = (lead < m && v[lead] < 0) ? -1.0 : 1.0;
    for (double& x : v) x = sign * x / norm;
    rows.push_back(std::move(v));
  }
  w.rows.assign(rows.begin() + 1, rows.end());
  return w;
}

WaveletPyramid wavelet_coeffs(const GridFunction& f, const HaarWavelets& wavelets, int lmax) {
  const TilingSpec& spec = f.spec();
  const int m = spec.digit_count();
  if (wavelets.m != m) raise(Errc::WrongGenerator, "wavelet family does not match the tiling");
  if (lmax + 1 > f.level()) raise(Errc::LevelTooFine, "wavelet pyramid exceeds grid resolution");

  WaveletPyramid wp;
  wp.lmax = lmax;
  const double quad = std::pow(static_cast<double>(m), -f.level());

  // Cell sums per level via successive folding.
  std::vector<std::vector<double>> sums(lmax + 2);
  {
    std::vector<double> fine(f.cell_count(lmax + 1), 0.0);
    const std::int64_t block = f.cell_samples(lmax + 1);
    for (std::int64_t c = 0; c < f.cell_count(lmax + 1); ++c) {
      double s = 0;
      for (std::int64_t i = 0; i < block; ++i) s += f[c * block + i];
      fine[c] = s;
    }
    sums[lmax + 1] = std::move(fine);
    for (int l = lmax; l >= 0; --l) {
      std::vector<double> coarse(f.cell_count(l), 0.0);
      for (std::int64_t c = 0; c < f.cell_count(l); ++c) {
        double s = 0;
        for (int g = 0; g < m; ++g) s += sums[l + 1][c * m + g];
        coarse[c] = s;
      }
      sums[l] = std::move(coarse);
    }
  }

  // a0(nu) = <f, 1_{T+nu}> over the window tiles.
  wp.a0.assign(f.tile_count(), 0.0);
  for (std::int64_t t = 0; t < f.tile_count(); ++t) wp.a0[t] = quad * sums[0][t];

  wp.b.assign(lmax + 1, {});
  const double sqrt_m = std::sqrt(static_cast<double>(m));
  for (int l = 0; l <= lmax; ++l) {
    const double scale = std::pow(static_cast<double>(m), 0.5 * l) * sqrt_m * quad;
    wp.b[l].assign(m - 1, std::vector<double>(f.cell_count(l), 0.0));
    for (std::int64_t c = 0; c < f.cell_count(l); ++c)
      for (int eps = 0; eps < m - 1; ++eps) {
        double acc = 0;
        for (int g = 0; g < m; ++g) acc += wavelets.rows[eps][g] * sums[l + 1][c * m + g];
        wp.b[l][eps][c] = scale * acc;
      }
  }

  double lhs = 0;
  for (double a : wp.a0) lhs += a * a;
  for (const auto& level : wp.b)
    for (const auto& arr : level)
      for (double v : arr) lhs += v * v;
  wp.parseval_lhs = lhs;
  double rhs = 0;
  for (std::int64_t i = 0; i < f.size(); ++i) rhs += f[i] * f[i];
  wp.parseval_rhs = quad * rhs;
  return wp;
}

double generator_s0_estimate(const GeneratorSet& generators, int j, int levels) {
  // Oscillation decay slope of the generator sampled on its own carrier.
  // The generator is planted at an off-lattice offset so that its tile-edge
  // behavior actually crosses cell interiors; aligned placement would hide
  // jumps on cell boundaries.
  const auto spec = generators.spec_ptr();
  const int lc = std::min(12, levels + 4);
  const GeneratorSet::Samples s = generators.sampled_at(j, lc);
  double radius = generators.members()[j].support_radius;
  const std::int64_t width = 2 * (static_cast<std::int64_t>(std::ceil(radius)) + 2);
  GridFunction carrier = GridFunction::zeros(spec, lc, IntVec(spec->dim(), width));
  const std::int64_t shift = ipow(spec->digit_count(), lc) / 3 + 1;
  auto& samples = carrier.mutable_samples();
  for (std::size_t i = 0; i < s.offsets.size(); ++i) {
    IntVec z = s.offsets[i];
    for (auto& c : z) c += shift;
    samples[carrier.index_of_z(z)] += s.values[i];
  }
  std::vector<double> osc_levels(levels + 1);
  const int degree = std::max(0, generators.order() - 1);
  for (int l = 0; l <= levels; ++l)
    osc_levels[l] = osc_level_norm(carrier, l, degree, kInf, /*use_osc=*/false);
  const SlopeFit fit = log2_slope(osc_levels, 1, levels);
  if (fit.n_used < 2) return std::numeric_limits<double>::infinity();
  return -fit.slope / std::log2(spec->lambda0());
}

}  // namespace saft
