#pragma once

// Curvature of a Riemannian submersion with totally geodesic fibres, assembled
// pointwise from fibre/base curvature, the A-tensor and its covariant
// derivative, together with the canonical variation that scales the fibres by t.
//
// Frame layout: vertical indices 0..p-1 first, horizontal p..p+q-1 last.

#include "ricci/spectral.hpp"
#include "ricci/tensor.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace ricci {

struct SubmersionPointData {
  int p = 0;  // fibre dimension
  int q = 0;  // base dimension
  CurvatureTensor fibre_R;
  CurvatureTensor base_R;
  std::vector<double> A_hh;      // [x][y][u] = <A_X Y, U>
  std::vector<double> nablaA_v;  // [u][x][y][v] = <(nabla_U A)_X Y, V>
  std::vector<double> nablaA_h;  // [z][x][y][u] = <(nabla_Z A)_X Y, U>

  SubmersionPointData() = default;
  SubmersionPointData(int p_, int q_);

  int dim() const { return p + q; }

  double a_hh(int x, int y, int u) const { return A_hh[idx3(x, y, u, q, p)]; }
  double& a_hh(int x, int y, int u) { return A_hh[idx3(x, y, u, q, p)]; }
  /// <A_X U, Y>, derived from adjointness.
  double a_hv(int x, int u, int y) const { return -a_hh(x, y, u); }

  double nav(int u, int x, int y, int v) const { return nablaA_v[idx4(u, x, y, v, p, q, q, p)]; }
  double& nav(int u, int x, int y, int v) { return nablaA_v[idx4(u, x, y, v, p, q, q, p)]; }
  double nah(int z, int x, int y, int u) const { return nablaA_h[idx4(z, x, y, u, q, q, q, p)]; }
  double& nah(int z, int x, int y, int u) { return nablaA_h[idx4(z, x, y, u, q, q, q, p)]; }

  /// <A_X U, A_Y V> with U, V vertical frame vectors.
  double a_inner(int x, int u, int y, int v) const;
  /// <A_X Y, A_Z W> with all four horizontal.
  double a_inner_h(int x, int y, int z, int w) const;

 private:
  static std::size_t idx3(int a, int b, int c, int nb, int nc) {
    return (static_cast<std::size_t>(a) * nb + b) * nc + c;
  }
  static std::size_t idx4(int a, int b, int c, int d, int, int nb, int nc, int nd) {
    return ((static_cast<std::size_t>(a) * nb + b) * nc + c) * nd + d;
  }
};

struct DataAudit {
  double a_antisymmetry = 0.0;
  double adjointness = 0.0;
  double nabla_v_antisym_xy = 0.0;
  double nabla_v_antisym_uv = 0.0;
  double nabla_v_diagonal = 0.0;  // max |<(nabla_V A)_X X, W>|
  double nabla_h_antisym_xy = 0.0;
  double nabla_h_cyclic = 0.0;
  SymmetryReport fibre;
  SymmetryReport base;
  bool passes = false;
};

DataAudit audit_data(const SubmersionPointData& data, double tol = 1e-10);

CurvatureTensor assemble_g1(const SubmersionPointData& data);
/// Canonical variation g_t in the original (t = 1) frame.
CurvatureTensor assemble_gt(const SubmersionPointData& data, double t);
/// Canonical variation g_t in the g_t-orthonormal frame, U_t = U / sqrt(t).
CurvatureTensor assemble_gt_unit(const SubmersionPointData& data, double t);

/// Psi = lambda U_t + mu X, mu = sqrt(1 - lambda^2), as a frame vector.
Eigen::VectorXd psi_vector(const SubmersionPointData& data, double lambda, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& x);

/// R^t_Psi in the g_t-orthonormal frame.
SymmetricOperator r_psi_operator(const SubmersionPointData& data, double t, double lambda,
                                 const Eigen::VectorXd& u, const Eigen::VectorXd& x);
SymmetricOperator r_psi_operator(const CurvatureTensor& unit_tensor, const SubmersionPointData& data,
                                 double lambda, const Eigen::VectorXd& u, const Eigen::VectorXd& x);

struct ExponentFit {
  double exponent = 0.0;
  double expected = 0.0;
  bool exact_zero = false;  // every deviation below the noise floor
  bool passes = false;
  std::vector<double> abscissa;
  std::vector<double> norms;
};

struct BlockScalingReport {
  ExponentFit vertical_in_t;      // ||TL - (lambda^2/t) R_hat_U|| ~ t
  ExponentFit offdiag_in_t;       // ||TR|| at lambda = 0 ~ sqrt(t)
  ExponentFit offdiag_in_lambda;  // ||TR(lambda) - mu^2 TR(0)|| ~ lambda at fixed small t
  bool passes = false;
};

/// Fits log-log slopes of block deviations over t_list (and lambda_list at the
/// smallest t). Deviation norms are maxima over the frame (U, X) pairs.
BlockScalingReport block_scaling_audit(const SubmersionPointData& data, const std::vector<double>& t_list,
                                       const std::vector<double>& lambda_list, double vertical_lambda = 0.5);

struct SweepConfig {
  std::vector<double> t_grid;       // descending
  std::vector<double> lambda_grid;  // in [0, 1]
  int n_u_random = 8;
  int n_x_random = 8;
  std::uint64_t seed = 20240607;
  double tol = 0.0;

  static SweepConfig defaults();
};

struct SweepRow {
  double t = 0.0;
  double lambda = 0.0;
  int sample_id = 0;
  double margin = 0.0;
  bool pass = false;
};

struct CanonicalVariationSweep {
  std::vector<double> t_grid;
  std::vector<double> lambda_grid;
  int k = 0;
  int m = 0;  // eigenvalue count summed, min(k + 1, p + q)
  std::vector<SweepRow> rows;
  std::vector<bool> t_pass;
  std::vector<double> t_min_margin;
  std::optional<double> tau_estimate;
};

CanonicalVariationSweep tau_scan(const SubmersionPointData& data, int k, const SweepConfig& config);

struct SyntheticParams {
  int p = 3;
  int q = 4;
  double fibre_kappa = 1.0;
  double base_kappa = 1.0;
  double perturbation = 0.05;
  double a_magnitude = 0.5;
  double nabla_magnitude = 0.3;
  std::uint64_t seed = 1;
};

/// Pointwise datum satisfying every algebraic constraint of the formulas; not
/// necessarily realized by a global submersion.
SubmersionPointData synthetic_data(const SyntheticParams& params);

/// A == 0, nabla A == 0.
SubmersionPointData product_data(const CurvatureTensor& fibre, const CurvatureTensor& base);

/// Random tensor projected onto the algebraic curvature tensors.
CurvatureTensor random_curvature_tensor(int n, double scale, std::uint64_t seed);

}  // namespace ricci
