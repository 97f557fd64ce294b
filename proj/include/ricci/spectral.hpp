#pragma once

// Symmetric-operator eigenvalue machinery and the m-positivity criterion:
// an operator is m-positive when the sum of its m smallest eigenvalues is
// positive, which is the same as every m-element eigenvalue sum being positive.

#include <Eigen/Dense>

#include <vector>

namespace ricci {

inline constexpr double kDefaultSymTol = 1e-9;

class SymmetricOperator {
 public:
  /// Throws NonSymmetric if max |M - M^T| exceeds sym_tol; the stored matrix
  /// is the symmetrized average.
  explicit SymmetricOperator(const Eigen::MatrixXd& m, double sym_tol = kDefaultSymTol);

  static SymmetricOperator diagonal(const std::vector<double>& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  SymmetricOperator scaled(double c) const;

 private:
  Eigen::MatrixXd m_;
};

struct Positivity {
  bool positive = false;
  double margin = 0.0;  // sum of the m smallest eigenvalues
};

/// Eigenvalues, ascending.
std::vector<double> sorted_eigenvalues(const SymmetricOperator& op);

double sum_smallest(const SymmetricOperator& op, int m);

Positivity is_m_positive(const SymmetricOperator& op, int m, double tol = 0.0);

/// Test oracle: minimum over all C(dim, m) eigenvalue subsets. dim <= 12.
double brute_force_min_subset_sum(const SymmetricOperator& op, int m);

}  // namespace ricci
