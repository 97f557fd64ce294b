#include "ricci/oracle.hpp"

#include "ricci/error.hpp"
#include "ricci/submersion.hpp"

#include <algorithm>
#include <cmath>

namespace ricci {

double LieAlgebraModel::antisymmetry_violation() const {
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) worst = std::max(worst, std::abs(c(i, j, k) + c(j, i, k)));
  return worst;
}

double LieAlgebraModel::jacobi_violation() const {
  // [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int l = 0; l < dim; ++l)
        for (int k = 0; k < dim; ++k) {
          double s = 0.0;
          for (int m = 0; m < dim; ++m) s += c(i, j, m) * c(m, l, k) + c(j, l, m) * c(m, i, k) + c(l, i, m) * c(m, j, k);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

static void check_metric(int dim, const std::vector<double>& metric) {
  if (dim < 1 || static_cast<int>(metric.size()) != dim) throw Error(ErrorCode::BadModel, "metric size mismatch");
  for (double g : metric) {
    if (!(g > 0.0)) throw Error(ErrorCode::BadModel, "metric entries must be positive");
  }
}

LieAlgebraModel LieAlgebraModel::abelian(int dim, std::vector<double> metric) {
  check_metric(dim, metric);
  LieAlgebraModel m;
  m.dim = dim;
  m.structure.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  m.metric = std::move(metric);
  return m;
}

LieAlgebraModel LieAlgebraModel::su2(std::vector<double> metric) {
  LieAlgebraModel m = abelian(3, std::move(metric));
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    m.c(i, j, k) = 2.0;
    m.c(j, i, k) = -2.0;
  }
  return m;
}

Connection koszul_connection(const LieAlgebraModel& model) {
  check_metric(model.dim, model.metric);
  const int n = model.dim;
  if (model.structure.size() != static_cast<std::size_t>(n) * n * n) {
    throw Error(ErrorCode::BadModel, "structure constants have the wrong size");
  }
  if (model.antisymmetry_violation() > 1e-12 || model.jacobi_violation() > 1e-9) {
    throw Error(ErrorCode::BadModel, "structure constants do not define a Lie algebra");
  }
  const auto& g = model.metric;
  auto br = [&](int i, int j, int k) { return model.c(i, j, k) * g[k]; };  // <[e_i,e_j], e_k>
  Connection con;
  con.dim = n;
  con.gamma.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) con(i, j, k) = 0.5 * (br(i, j, k) - br(j, k, i) + br(k, i, j)) / g[k];
  return con;
}

ConnectionAudit audit_connection(const LieAlgebraModel& model, const Connection& gamma) {
  ConnectionAudit a;
  const int n = model.dim;
  const auto& g = model.metric;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        a.metric_compatibility = std::max(a.metric_compatibility, std::abs(gamma(i, j, k) * g[k] + gamma(i, k, j) * g[j]));
        a.torsion = std::max(a.torsion, std::abs(gamma(i, j, k) - gamma(j, i, k) - model.c(i, j, k)));
      }
  return a;
}

CurvatureTensor curvature_from_connection(const LieAlgebraModel& model, const Connection& gamma) {
  const int n = model.dim;
  const auto& g = model.metric;
  CurvatureTensor r(n);
  std::vector<double> v(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        // R(e_a,e_b)e_c = nabla_[a,b] e_c - nabla_a nabla_b e_c + nabla_b nabla_a e_c
        std::fill(v.begin(), v.end(), 0.0);
        for (int m = 0; m < n; ++m) {
          const double cab = model.c(a, b, m);
          for (int d = 0; d < n; ++d) {
            v[d] += cab * gamma(m, c, d) - gamma(b, c, m) * gamma(a, m, d) + gamma(a, c, m) * gamma(b, m, d);
          }
        }
        for (int d = 0; d < n; ++d) r(a, b, c, d) = v[d] * g[d] / std::sqrt(g[a] * g[b] * g[c] * g[d]);
      }
  return r;
}

CurvatureTensor constant_curvature_tensor(int n, double kappa) {
  if (n < 2) throw Error(ErrorCode::BadDim, "constant curvature needs dimension >= 2");
  CurvatureTensor r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      r(a, b, a, b) = kappa;
      r(a, b, b, a) = -kappa;
    }
  return r;
}

CurvatureTensor product_tensor(const CurvatureTensor& r1, const CurvatureTensor& r2) {
  const int n1 = r1.dim(), n2 = r2.dim();
  CurvatureTensor r(n1 + n2);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b)
      for (int c = 0; c < n1; ++c)
        for (int d = 0; d < n1; ++d) r(a, b, c, d) = r1(a, b, c, d);
  for (int a = 0; a < n2; ++a)
    for (int b = 0; b < n2; ++b)
      for (int c = 0; c < n2; ++c)
        for (int d = 0; d < n2; ++d) r(n1 + a, n1 + b, n1 + c, n1 + d) = r2(a, b, c, d);
  return r;
}

SubmersionPointData berger_submersion_data() {
  SubmersionPointData d(1, 2);
  d.base_R = constant_curvature_tensor(2, 4.0);
  // A_X Y = [X, Y]^v / 2 with [e2, e3] = 2 e1
  d.a_hh(0, 1, 0) = 1.0;
  d.a_hh(1, 0, 0) = -1.0;
  return d;
}

}  // namespace ricci
