#include "ricci/submersion.hpp"

#include "ricci/error.hpp"
#include "ricci/oracle.hpp"
#include "ricci/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace ricci {

SubmersionPointData::SubmersionPointData(int p_, int q_)
    : p(p_),
      q(q_),
      fibre_R(p_),
      base_R(q_),
      A_hh(static_cast<std::size_t>(q_) * q_ * p_, 0.0),
      nablaA_v(static_cast<std::size_t>(p_) * q_ * q_ * p_, 0.0),
      nablaA_h(static_cast<std::size_t>(q_) * q_ * q_ * p_, 0.0) {}

double SubmersionPointData::a_inner(int x, int u, int y, int v) const {
  double s = 0.0;
  for (int z = 0; z < q; ++z) s += a_hv(x, u, z) * a_hv(y, v, z);
  return s;
}

double SubmersionPointData::a_inner_h(int x, int y, int z, int w) const {
  double s = 0.0;
  for (int u = 0; u < p; ++u) s += a_hh(x, y, u) * a_hh(z, w, u);
  return s;
}

DataAudit audit_data(const SubmersionPointData& d, double tol) {
  DataAudit a;
  auto upd = [](double& slot, double v) { slot = std::max(slot, std::abs(v)); };
  for (int x = 0; x < d.q; ++x)
    for (int y = 0; y < d.q; ++y)
      for (int u = 0; u < d.p; ++u) {
        upd(a.a_antisymmetry, d.a_hh(x, y, u) + d.a_hh(y, x, u));
        upd(a.adjointness, d.a_hv(x, u, y) + d.a_hh(x, y, u));
        for (int v = 0; v < d.p; ++v) {
          upd(a.nabla_v_antisym_xy, d.nav(u, x, y, v) + d.nav(u, y, x, v));
          upd(a.nabla_v_antisym_uv, d.nav(u, x, y, v) + d.nav(v, x, y, u));
          if (x == y) upd(a.nabla_v_diagonal, d.nav(u, x, x, v));
        }
        for (int z = 0; z < d.q; ++z) {
          upd(a.nabla_h_antisym_xy, d.nah(z, x, y, u) + d.nah(z, y, x, u));
          upd(a.nabla_h_cyclic, d.nah(z, x, y, u) + d.nah(x, y, z, u) + d.nah(y, z, x, u));
        }
      }
  a.fibre = validate_symmetries(d.fibre_R, tol);
  a.base = validate_symmetries(d.base_R, tol);
  a.passes = std::max({a.a_antisymmetry, a.adjointness, a.nabla_v_antisym_xy, a.nabla_v_antisym_uv,
                       a.nabla_v_diagonal, a.nabla_h_antisym_xy, a.nabla_h_cyclic}) <= tol &&
             a.fibre.passes && a.base.passes;
  return a;
}

namespace {

void require_valid(const SubmersionPointData& d) {
  if (d.p < 1 || d.q < 1 || d.fibre_R.dim() != d.p || d.base_R.dim() != d.q) {
    throw Error(ErrorCode::BadData, "dimension mismatch in submersion data");
  }
  const auto audit = audit_data(d);
  if (!audit.passes) throw Error(ErrorCode::BadData, "submersion data violates its algebraic identities");
}

// Components in the g_t-orthonormal frame; the six Gray-O'Neill families
// after canonical variation, extended to every index pattern by symmetry.
class UnitAssembler {
 public:
  UnitAssembler(const SubmersionPointData& d, double t) : d_(d), t_(t), rt_(std::sqrt(t)) {}

  double f3(int x, int u, int y, int v) const {  // <R(X,U_t)Y,V_t>
    return d_.nav(u, x, y, v) + d_.a_inner(x, u, y, v) + (t_ - 1.0) * d_.a_inner(x, v, y, u);
  }
  double f4(int u, int v, int x, int y) const {  // <R(U_t,V_t)X,Y>
    return d_.nav(u, x, y, v) - d_.nav(v, x, y, u) +
           (2.0 - t_) * (d_.a_inner(x, u, y, v) - d_.a_inner(x, v, y, u));
  }
  double f5(int x, int y, int z, int u) const {  // <R(X,Y)Z,U_t>
    return rt_ * d_.nah(z, x, y, u);
  }
  double f6(int x, int y, int z, int w) const {  // <R(X,Y)Z,W>
    return d_.base_R(x, y, z, w) - 2.0 * t_ * d_.a_inner_h(x, y, z, w) + t_ * d_.a_inner_h(y, z, x, w) -
           t_ * d_.a_inner_h(x, z, y, w);
  }

  double operator()(int a, int b, int c, int d) const {
    const int p = d_.p;
    const bool va = a < p, vb = b < p, vc = c < p, vd = d < p;
    const int nv = va + vb + vc + vd;
    auto h = [p](int i) { return i - p; };
    switch (nv) {
      case 4: return d_.fibre_R(a, b, c, d) / t_;
      case 3: return 0.0;
      case 0: return f6(h(a), h(b), h(c), h(d));
      case 1:
        if (vd) return f5(h(a), h(b), h(c), d);
        if (vc) return -f5(h(a), h(b), h(d), c);
        if (vb) return f5(h(c), h(d), h(a), b);
        return -f5(h(c), h(d), h(b), a);
      default:
        if (va && vb) return f4(a, b, h(c), h(d));
        if (vc && vd) return f4(c, d, h(a), h(b));
        if (vb && vd) return f3(h(a), b, h(c), d);
        if (va && vd) return -f3(h(b), a, h(c), d);
        if (vb && vc) return -f3(h(a), b, h(d), c);
        return f3(h(b), a, h(d), c);
    }
  }

 private:
  const SubmersionPointData& d_;
  double t_;
  double rt_;
};

CurvatureTensor assemble(const SubmersionPointData& d, double t, bool unit_frame) {
  if (!(t > 0.0)) throw Error(ErrorCode::BadT, "t must be positive, got " + std::to_string(t));
  require_valid(d);
  const int n = d.dim();
  const UnitAssembler unit(d, t);
  const double rt = std::sqrt(t);
  CurvatureTensor out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          double v = unit(a, b, c, e);
          if (!unit_frame) {
            const int nv = (a < d.p) + (b < d.p) + (c < d.p) + (e < d.p);
            if (nv == 4) v = t * d.fibre_R(a, b, c, e);
            else if (nv == 2) v *= t;
            else if (nv == 1) v *= rt;
          }
          out(a, b, c, e) = v;
        }
  return out;
}

}  // namespace

CurvatureTensor assemble_g1(const SubmersionPointData& data) { return assemble(data, 1.0, false); }

CurvatureTensor assemble_gt(const SubmersionPointData& data, double t) { return assemble(data, t, false); }

CurvatureTensor assemble_gt_unit(const SubmersionPointData& data, double t) { return assemble(data, t, true); }

Eigen::VectorXd psi_vector(const SubmersionPointData& data, double lambda, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& x) {
  if (u.size() != data.p || x.size() != data.q || std::abs(u.norm() - 1.0) > 1e-12 ||
      std::abs(x.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NotUnit, "U and X must be unit vectors of the vertical/horizontal spaces");
  }
  if (lambda < 0.0 || lambda > 1.0) throw Error(ErrorCode::NotUnit, "lambda must lie in [0, 1]");
  const double mu = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
  Eigen::VectorXd psi(data.dim());
  psi.head(data.p) = lambda * u;
  psi.tail(data.q) = mu * x;
  return psi.normalized();
}

SymmetricOperator r_psi_operator(const CurvatureTensor& unit_tensor, const SubmersionPointData& data, double lambda,
                                 const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
  return directional_operator(unit_tensor, psi_vector(data, lambda, u, x));
}

SymmetricOperator r_psi_operator(const SubmersionPointData& data, double t, double lambda, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& x) {
  return r_psi_operator(assemble_gt_unit(data, t), data, lambda, u, x);
}

namespace {

double op_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

ExponentFit fit_exponent(std::vector<double> abscissa, std::vector<double> norms, double expected) {
  ExponentFit fit;
  fit.expected = expected;
  fit.abscissa = abscissa;
  fit.norms = norms;
  constexpr double kFloor = 1e-13;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (norms[i] > kFloor) {
      lx.push_back(std::log(abscissa[i]));
      ly.push_back(std::log(norms[i]));
    }
  }
  if (lx.size() < 2) {
    fit.exact_zero = lx.empty();
    fit.exponent = expected;
    fit.passes = fit.exact_zero;
    return fit;
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.passes = fit.exponent >= expected - 0.1;
  return fit;
}

void require_grid(const std::vector<double>& g, const char* what) {
  if (g.size() < 4) throw Error(ErrorCode::InsufficientGrid, std::string(what) + " needs at least 4 points");
  const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
  if (!(*lo > 0.0) || *hi / *lo < 100.0) {
    throw Error(ErrorCode::InsufficientGrid, std::string(what) + " must be positive and span two decades");
  }
}

}  // namespace

BlockScalingReport block_scaling_audit(const SubmersionPointData& data, const std::vector<double>& t_list,
                                       const std::vector<double>& lambda_list, double vertical_lambda) {
  require_grid(t_list, "t_list");
  require_grid(lambda_list, "lambda_list");
  const int p = data.p, q = data.q;
  const double t_fixed = *std::min_element(t_list.begin(), t_list.end());

  std::vector<double> vert(t_list.size(), 0.0), off(t_list.size(), 0.0), offl(lambda_list.size(), 0.0);
  const double vl = vertical_lambda;
  const double vmu2 = 1.0 - vl * vl;
  (void)vmu2;
  for (int iu = 0; iu < p; ++iu) {
    const Eigen::VectorXd u = Eigen::VectorXd::Unit(p, iu);
    Eigen::MatrixXd fibre_u(p, p);
    for (int v = 0; v < p; ++v)
      for (int w = 0; w < p; ++w) fibre_u(v, w) = data.fibre_R(iu, v, iu, w);
    for (int ix = 0; ix < q; ++ix) {
      const Eigen::VectorXd x = Eigen::VectorXd::Unit(q, ix);
      for (std::size_t it = 0; it < t_list.size(); ++it) {
        const double t = t_list[it];
        const CurvatureTensor rt = assemble_gt_unit(data, t);
        const Eigen::MatrixXd mv = r_psi_operator(rt, data, vl, u, x).matrix();
        vert[it] = std::max(vert[it], op_norm(mv.topLeftCorner(p, p) - (vl * vl / t) * fibre_u));
        const Eigen::MatrixXd m0 = r_psi_operator(rt, data, 0.0, u, x).matrix();
        off[it] = std::max(off[it], op_norm(m0.topRightCorner(p, q)));
      }
      const CurvatureTensor rt = assemble_gt_unit(data, t_fixed);
      const Eigen::MatrixXd base_block = r_psi_operator(rt, data, 0.0, u, x).matrix().topRightCorner(p, q);
      for (std::size_t il = 0; il < lambda_list.size(); ++il) {
        const double l = lambda_list[il];
        const Eigen::MatrixXd ml = r_psi_operator(rt, data, l, u, x).matrix();
        offl[il] = std::max(offl[il], op_norm(ml.topRightCorner(p, q) - (1.0 - l * l) * base_block));
      }
    }
  }
  BlockScalingReport rep;
  rep.vertical_in_t = fit_exponent(t_list, vert, 1.0);
  rep.offdiag_in_t = fit_exponent(t_list, off, 0.5);
  rep.offdiag_in_lambda = fit_exponent(lambda_list, offl, 1.0);
  rep.passes = rep.vertical_in_t.passes && rep.offdiag_in_t.passes && rep.offdiag_in_lambda.passes;
  return rep;
}

SweepConfig SweepConfig::defaults() {
  SweepConfig c;
  constexpr int n = 25;
  for (int i = 0; i < n; ++i) c.t_grid.push_back(std::pow(10.0, -4.0 * i / (n - 1)));
  for (int i = 0; i <= 10; ++i) c.lambda_grid.push_back(i / 10.0);
  return c;
}

CanonicalVariationSweep tau_scan(const SubmersionPointData& data, int k, const SweepConfig& config) {
  if (k < 1) throw Error(ErrorCode::BadK, "k must be >= 1");
  for (std::size_t i = 0; i < config.t_grid.size(); ++i) {
    if (!(config.t_grid[i] > 0.0)) throw Error(ErrorCode::BadT, "t grid must be positive");
    if (i > 0 && !(config.t_grid[i] < config.t_grid[i - 1])) {
      throw Error(ErrorCode::BadT, "t grid must be strictly descending");
    }
  }
  require_valid(data);
  CanonicalVariationSweep sweep;
  sweep.t_grid = config.t_grid;
  sweep.lambda_grid = config.lambda_grid;
  sweep.k = k;
  sweep.m = std::min(k + 1, data.dim());

  const auto us = standard_sample(data.p, config.n_u_random, config.seed);
  const auto xs = standard_sample(data.q, config.n_x_random, config.seed + 1);
  const std::size_t n_pairs = us.vectors.size() * xs.vectors.size();
  const std::size_t per_t = config.lambda_grid.size() * n_pairs;
  sweep.rows.resize(config.t_grid.size() * per_t);

  parallel_for(config.t_grid.size(), [&](std::size_t it) {
    const double t = config.t_grid[it];
    const CurvatureTensor rt = assemble_gt_unit(data, t);
    std::size_t row = it * per_t;
    for (double lambda : config.lambda_grid) {
      for (std::size_t iu = 0; iu < us.vectors.size(); ++iu)
        for (std::size_t ix = 0; ix < xs.vectors.size(); ++ix) {
          const auto op = r_psi_operator(rt, data, lambda, us.vectors[iu], xs.vectors[ix]);
          const auto pos = is_m_positive(op, sweep.m, config.tol);
          sweep.rows[row++] = {t, lambda, static_cast<int>(iu * xs.vectors.size() + ix), pos.margin, pos.positive};
        }
    }
  });

  sweep.t_pass.assign(config.t_grid.size(), true);
  sweep.t_min_margin.assign(config.t_grid.size(), std::numeric_limits<double>::infinity());
  for (std::size_t it = 0; it < config.t_grid.size(); ++it) {
    for (std::size_t r = it * per_t; r < (it + 1) * per_t; ++r) {
      sweep.t_pass[it] = sweep.t_pass[it] && sweep.rows[r].pass;
      sweep.t_min_margin[it] = std::min(sweep.t_min_margin[it], sweep.rows[r].margin);
    }
  }
  // Largest grid value whose whole smaller-t suffix passes.
  for (std::size_t i = config.t_grid.size(); i-- > 0;) {
    if (!sweep.t_pass[i]) break;
    sweep.tau_estimate = config.t_grid[i];
  }
  return sweep;
}

CurvatureTensor random_curvature_tensor(int n, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  CurvatureTensor raw(n);
  for (double& v : raw.data()) v = uni(rng);
  CurvatureTensor s(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          // antisymmetrize in (a,b), (c,d) and symmetrize the pairs
          const double v1 = raw(a, b, c, d) - raw(b, a, c, d) - raw(a, b, d, c) + raw(b, a, d, c);
          const double v2 = raw(c, d, a, b) - raw(d, c, a, b) - raw(c, d, b, a) + raw(d, c, b, a);
          s(a, b, c, d) = (v1 + v2) / 8.0;
        }
  CurvatureTensor out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double cyc = s(a, b, c, d) + s(b, c, a, d) + s(c, a, b, d);
          out(a, b, c, d) = scale * (s(a, b, c, d) - cyc / 3.0);
        }
  return out;
}

SubmersionPointData product_data(const CurvatureTensor& fibre, const CurvatureTensor& base) {
  SubmersionPointData d(fibre.dim(), base.dim());
  d.fibre_R = fibre;
  d.base_R = base;
  return d;
}

SubmersionPointData synthetic_data(const SyntheticParams& sp) {
  if (sp.p < 1 || sp.q < 1) throw Error(ErrorCode::BadData, "p and q must be positive");
  const int p = sp.p, q = sp.q;
  SubmersionPointData d(p, q);
  auto curvature = [&](int n, double kappa, std::uint64_t seed) {
    if (n == 1) return CurvatureTensor(1);
    CurvatureTensor r = constant_curvature_tensor(n, kappa);
    const CurvatureTensor pert = random_curvature_tensor(n, sp.perturbation, seed);
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] += pert.data()[i];
    return r;
  };
  d.fibre_R = curvature(p, sp.fibre_kappa, sp.seed * 7919 + 1);
  d.base_R = curvature(q, sp.base_kappa, sp.seed * 7919 + 2);

  std::mt19937_64 rng(sp.seed * 7919 + 3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int x = 0; x < q; ++x)
    for (int y = x + 1; y < q; ++y)
      for (int u = 0; u < p; ++u) {
        const double v = sp.a_magnitude * uni(rng);
        d.a_hh(x, y, u) = v;
        d.a_hh(y, x, u) = -v;
      }
  // nabla_U A: antisymmetric in the horizontal pair and in the vertical pair.
  for (int u = 0; u < p; ++u)
    for (int v = u + 1; v < p; ++v)
      for (int x = 0; x < q; ++x)
        for (int y = x + 1; y < q; ++y) {
          const double w = sp.nabla_magnitude * uni(rng);
          d.nav(u, x, y, v) = w;
          d.nav(u, y, x, v) = -w;
          d.nav(v, x, y, u) = -w;
          d.nav(v, y, x, u) = w;
        }
  // nabla_Z A: antisymmetric in (X, Y) with vanishing cyclic sum over (X, Y, Z).
  std::vector<double> raw(d.nablaA_h.size());
  for (int z = 0; z < q; ++z)
    for (int x = 0; x < q; ++x)
      for (int y = x + 1; y < q; ++y)
        for (int u = 0; u < p; ++u) {
          const double w = sp.nabla_magnitude * uni(rng);
          d.nah(z, x, y, u) = w;
          d.nah(z, y, x, u) = -w;
        }
  SubmersionPointData copy = d;
  for (int z = 0; z < q; ++z)
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        for (int u = 0; u < p; ++u) {
          const double cyc = copy.nah(z, x, y, u) + copy.nah(x, y, z, u) + copy.nah(y, z, x, u);
          d.nah(z, x, y, u) = copy.nah(z, x, y, u) - cyc / 3.0;
        }
  return d;
}

}  // namespace ricci
