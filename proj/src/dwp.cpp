#include "ricci/dwp.hpp"

#include "ricci/error.hpp"
#include "ricci/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ricci {

WarpPair round_witness(int p, int q) {
  constexpr double kHalfPi = 1.57079632679489661923;
  return {sine_function(0.0, kHalfPi), cosine_function(0.0, kHalfPi), 0.0, kHalfPi, p, q};
}

namespace {

struct Curvatures {
  double radial_h;  // -h''/h
  double radial_f;  // -f''/f
  double hh;        // (1 - h'^2)/h^2
  double ff;        // (1 - f'^2)/f^2
  double mixed;     // -f'h'/(fh)
};

Curvatures curvatures(const WarpPair& w, double t) {
  if (!(t >= w.t_lo && t <= w.t_hi)) {
    throw Error(ErrorCode::OutOfDomain, "t = " + std::to_string(t) + " outside the warp domain");
  }
  const Jet h = w.h.jet(t);
  const Jet f = w.f.jet(t);
  if (!(h.v > 0.0) || !(f.v > 0.0)) {
    throw Error(ErrorCode::NonPositiveWarp, "warping function not positive at t = " + std::to_string(t));
  }
  return {-h.d2 / h.v, -f.d2 / f.v, (1.0 - h.d1 * h.d1) / (h.v * h.v), (1.0 - f.d1 * f.d1) / (f.v * f.v),
          -f.d1 * h.d1 / (f.v * h.v)};
}

}  // namespace

Quadruple lhs_quadruple(const WarpPair& w, int k, double t) {
  if (k < 1) throw Error(ErrorCode::BadK, "k must be >= 1");
  const Curvatures c = curvatures(w, t);
  const double p = w.p, q = w.q;
  return {(k - q) * c.radial_h + q * c.radial_f, c.radial_h + (k - q - 1) * c.hh + q * c.mixed,
          (k - q) * c.hh + q * c.mixed, c.radial_f + p * c.mixed + (k - p - 1) * c.ff};
}

SymmetricOperator frame_curvature_operator(const WarpPair& w, double t, FrameDirection direction) {
  const Curvatures c = curvatures(w, t);
  const int p = w.p, q = w.q;
  std::vector<double> d(1 + p + q, 0.0);
  auto fill = [&](int from, int count, double v) { std::fill_n(d.begin() + from, count, v); };
  switch (direction) {
    case FrameDirection::Radial:
      fill(1, p, c.radial_h);
      fill(1 + p, q, c.radial_f);
      break;
    case FrameDirection::HFibre:
      d[0] = c.radial_h;
      fill(2, p - 1, c.hh);
      fill(1 + p, q, c.mixed);
      break;
    case FrameDirection::FFibre:
      d[0] = c.radial_f;
      fill(1, p, c.mixed);
      fill(2 + p, q - 1, c.ff);
      break;
  }
  return SymmetricOperator::diagonal(d);
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "grid needs at least one point");
  std::vector<double> g(n);
  const double h = (hi - lo) / n;
  for (int i = 0; i < n; ++i) g[i] = lo + (i + 0.5) * h;
  return g;
}

InequalityReport verify_on_grid(const WarpPair& w, int k, int n_points, const Strictness& strictness) {
  if (n_points < 2) throw Error(ErrorCode::BadParams, "verify_on_grid needs n_points >= 2");
  return verify_on_grid(w, k, uniform_grid(w.t_lo, w.t_hi, n_points), strictness);
}

InequalityReport verify_on_grid(const WarpPair& w, int k, const std::vector<double>& grid,
                                const Strictness& strictness) {
  InequalityReport rep;
  rep.grid = grid;
  for (auto& v : rep.lhs) v.assign(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    const Quadruple l = lhs_quadruple(w, k, grid[i]);
    for (int j = 0; j < 4; ++j) rep.lhs[j][i] = l[j];
  });
  rep.verdict = true;
  for (int j = 0; j < 4; ++j) {
    rep.minima[j] = std::numeric_limits<double>::infinity();
    rep.argmin[j] = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (rep.lhs[j][i] < rep.minima[j]) {
        rep.minima[j] = rep.lhs[j][i];
        rep.argmin[j] = grid[i];
      }
    }
    rep.pass[j] = strictness.strict[j] ? rep.minima[j] > strictness.tol : rep.minima[j] >= -strictness.tol;
    rep.verdict = rep.verdict && rep.pass[j];
  }
  return rep;
}

CrossCheckReport cross_check(const WarpPair& w, int k, const std::vector<double>& grid, double tol) {
  CrossCheckReport rep;
  const int m = std::min(k + 1, 1 + w.p + w.q);
  for (double t : grid) {
    const Quadruple l = lhs_quadruple(w, k, t);
    const bool ineq = std::all_of(l.begin(), l.end(), [tol](double v) { return v > tol; });
    bool spectral = true;
    for (auto dir : {FrameDirection::Radial, FrameDirection::HFibre, FrameDirection::FFibre}) {
      spectral = spectral && is_m_positive(frame_curvature_operator(w, t, dir), m, tol).positive;
    }
    rep.inequality_true += ineq;
    rep.spectral_true += spectral;
    if (ineq && !spectral) {
      rep.consistent = false;
      rep.counterexamples.push_back(t);
    }
  }
  return rep;
}

}  // namespace ricci
