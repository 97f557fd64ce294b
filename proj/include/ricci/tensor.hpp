#pragma once

// Pointwise curvature tensors in a fixed orthonormal frame.
//
// Convention: comp(a,b,c,d) = <R(e_a,e_b)e_c, e_d> with
//   R(A,B)C = nabla_B nabla_A C - nabla_A nabla_B C + nabla_[A,B] C,
// so the sectional curvature of an orthonormal pair is K(v,w) = R(v,w,v,w)
// and the unit round sphere is comp = delta_ac delta_bd - delta_ad delta_bc.

#include "ricci/spectral.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace ricci {

inline constexpr double kDefaultTensorTol = 1e-9;

class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(int dim);

  int dim() const { return n_; }

  double& operator()(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// R(x, y, z, w) for arbitrary frame vectors.
  double evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                  const Eigen::VectorXd& w) const;

  CurvatureTensor scaled(double c) const;
  double max_abs_diff(const CurvatureTensor& other) const;

 private:
  std::size_t index(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
  }

  int n_ = 0;
  std::vector<double> data_;
};

struct SymmetryReport {
  double antisym_first = 0.0;   // R(a,b,c,d) + R(b,a,c,d)
  double antisym_second = 0.0;  // R(a,b,c,d) + R(a,b,d,c)
  double pair_symmetry = 0.0;   // R(a,b,c,d) - R(c,d,a,b)
  double bianchi = 0.0;         // R(a,b,c,d) + R(b,c,a,d) + R(c,a,b,d)
  bool passes = false;

  double max_violation() const;
};

SymmetryReport validate_symmetries(const CurvatureTensor& r, double tol = kDefaultTensorTol);

/// K(v, w) for an orthonormal pair.
double sectional(const CurvatureTensor& r, const Eigen::VectorXd& v, const Eigen::VectorXd& w);

/// Matrix of the directional curvature operator R_X, whose quadratic form is
/// Y -> K(X, Y)|Y|^2 on Y perpendicular to X. X is a 0-eigenvector.
SymmetricOperator directional_operator(const CurvatureTensor& r, const Eigen::VectorXd& x);

struct UnitDirectionSample {
  std::vector<Eigen::VectorXd> vectors;
  std::string scheme;
  int count() const { return static_cast<int>(vectors.size()); }
};

/// Frame vectors, pairwise mixtures at pi/8, pi/4, 3pi/8, and n_random seeded
/// Gaussian directions normalized to the unit sphere.
UnitDirectionSample standard_sample(int dim, int n_random, std::uint64_t seed);

struct KPositivityReport {
  int k = 0;
  bool verdict = false;  // sampled, never certified
  double min_margin = 0.0;
  Eigen::VectorXd worst_direction;
  std::vector<double> margins;  // aligned with the sample
};

KPositivityReport ric_k_scan(const CurvatureTensor& r, int k, const UnitDirectionSample& samples,
                             double tol = 0.0);

}  // namespace ricci
