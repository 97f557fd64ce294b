#pragma once

// Independent curvature ground truth: left-invariant metrics on Lie algebras
// via the Koszul formula, plus constant-curvature and product models.

#include "ricci/tensor.hpp"

#include <vector>

namespace ricci {

struct SubmersionPointData;

struct LieAlgebraModel {
  int dim = 0;
  std::vector<double> structure;  // c[i][j][k], [e_i, e_j] = sum_k c[i][j][k] e_k
  std::vector<double> metric;     // <e_i, e_i>, diagonal

  double c(int i, int j, int k) const { return structure[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }
  double& c(int i, int j, int k) { return structure[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }

  /// Max violation of antisymmetry and of the Jacobi identity.
  double antisymmetry_violation() const;
  double jacobi_violation() const;

  static LieAlgebraModel abelian(int dim, std::vector<double> metric);
  /// su(2) with [e1,e2]=2e3 cyclically; identity metric is the round S^3(1).
  static LieAlgebraModel su2(std::vector<double> metric);
  /// Berger metric diag(t,1,1): e1 spans the Hopf fibre.
  static LieAlgebraModel berger(double t) { return su2({t, 1.0, 1.0}); }
};

/// Gamma[i][j][k] with nabla_{e_i} e_j = sum_k Gamma[i][j][k] e_k, in the bracket basis.
struct Connection {
  int dim = 0;
  std::vector<double> gamma;
  double operator()(int i, int j, int k) const { return gamma[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }
  double& operator()(int i, int j, int k) { return gamma[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }
};

Connection koszul_connection(const LieAlgebraModel& model);

struct ConnectionAudit {
  double metric_compatibility = 0.0;
  double torsion = 0.0;
};
ConnectionAudit audit_connection(const LieAlgebraModel& model, const Connection& gamma);

/// Curvature in the orthonormal frame E_i = e_i / sqrt(g_i).
CurvatureTensor curvature_from_connection(const LieAlgebraModel& model, const Connection& gamma);

/// Hopf fibration S^3(1) -> S^2(1/2) at t = 1: p = 1, q = 2, base curvature 4.
SubmersionPointData berger_submersion_data();

/// kappa (delta_ac delta_bd - delta_ad delta_bc). n >= 2.
CurvatureTensor constant_curvature_tensor(int n, double kappa);

/// Block tensor with r1 on the first indices and r2 on the rest.
CurvatureTensor product_tensor(const CurvatureTensor& r1, const CurvatureTensor& r2);

}  // namespace ricci
