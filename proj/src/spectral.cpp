#include "ricci/spectral.hpp"

#include "ricci/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ricci {

SymmetricOperator::SymmetricOperator(const Eigen::MatrixXd& m, double sym_tol) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSymmetric, "operator must be square with dim >= 1");
  }
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= sym_tol)) {
    throw Error(ErrorCode::NonSymmetric, "max asymmetry " + std::to_string(asym));
  }
  m_ = 0.5 * (m + m.transpose());
}

SymmetricOperator SymmetricOperator::diagonal(const std::vector<double>& diag) {
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(diag.size()));
  return SymmetricOperator(d.asDiagonal().toDenseMatrix());
}

SymmetricOperator SymmetricOperator::scaled(double c) const { return SymmetricOperator(c * m_); }

std::vector<double> sorted_eigenvalues(const SymmetricOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_count(const SymmetricOperator& op, int m) {
  if (m < 1 || m > op.dim()) {
    throw Error(ErrorCode::BadCount,
                "m=" + std::to_string(m) + " outside [1, " + std::to_string(op.dim()) + "]");
  }
}

}  // namespace

double sum_smallest(const SymmetricOperator& op, int m) {
  check_count(op, m);
  const auto ev = sorted_eigenvalues(op);
  return std::accumulate(ev.begin(), ev.begin() + m, 0.0);
}

Positivity is_m_positive(const SymmetricOperator& op, int m, double tol) {
  const double margin = sum_smallest(op, m);
  return {margin > tol, margin};
}

double brute_force_min_subset_sum(const SymmetricOperator& op, int m) {
  if (op.dim() > 12) {
    throw Error(ErrorCode::TooLarge, "brute force limited to dim <= 12");
  }
  check_count(op, m);
  // Unsorted eigenvalues so the oracle does not lean on the ordering used by sum_smallest.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues().reverse();
  const int n = op.dim();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != m) continue;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s += ev(i);
    }
    best = std::min(best, s);
  }
  return best;
}

}  // namespace ricci
