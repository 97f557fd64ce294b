#include "ricci/tensor.hpp"

#include "ricci/error.hpp"
#include "ricci/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ricci {

namespace {
unsigned g_threads = 0;
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
  if (g_threads != 0) return g_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

CurvatureTensor::CurvatureTensor(int dim) : n_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

double CurvatureTensor::evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& w) const {
  double s = 0.0;
  for (int a = 0; a < n_; ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < n_; ++b) {
      if (y(b) == 0.0) continue;
      const double xy = x(a) * y(b);
      for (int c = 0; c < n_; ++c) {
        if (z(c) == 0.0) continue;
        const double xyz = xy * z(c);
        for (int d = 0; d < n_; ++d) s += xyz * w(d) * (*this)(a, b, c, d);
      }
    }
  }
  return s;
}

CurvatureTensor CurvatureTensor::scaled(double c) const {
  CurvatureTensor out = *this;
  for (double& v : out.data_) v *= c;
  return out;
}

double CurvatureTensor::max_abs_diff(const CurvatureTensor& other) const {
  if (other.n_ != n_) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
  return m;
}

double SymmetryReport::max_violation() const {
  return std::max({antisym_first, antisym_second, pair_symmetry, bianchi});
}

SymmetryReport validate_symmetries(const CurvatureTensor& r, double tol) {
  SymmetryReport rep;
  const int n = r.dim();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double v = r(a, b, c, d);
          rep.antisym_first = std::max(rep.antisym_first, std::abs(v + r(b, a, c, d)));
          rep.antisym_second = std::max(rep.antisym_second, std::abs(v + r(a, b, d, c)));
          rep.pair_symmetry = std::max(rep.pair_symmetry, std::abs(v - r(c, d, a, b)));
          rep.bianchi = std::max(rep.bianchi, std::abs(v + r(b, c, a, d) + r(c, a, b, d)));
        }
  rep.passes = rep.max_violation() <= tol;
  return rep;
}

double sectional(const CurvatureTensor& r, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  if (std::abs(v.norm() - 1.0) > 1e-10 || std::abs(w.norm() - 1.0) > 1e-10 || std::abs(v.dot(w)) > 1e-10) {
    throw Error(ErrorCode::NotOrthonormal, "sectional curvature needs an orthonormal pair");
  }
  return r.evaluate(v, w, v, w);
}

SymmetricOperator directional_operator(const CurvatureTensor& r, const Eigen::VectorXd& x) {
  const int n = r.dim();
  if (x.size() != n || std::abs(x.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NotUnit, "direction must be a unit vector of the frame dimension");
  }
  // M(b,d) = sum_{a,c} x_a x_c R(a,b,c,d) = <R(X,e_b)X, e_d>
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    if (x(a) == 0.0) continue;
    for (int c = 0; c < n; ++c) {
      const double w = x(a) * x(c);
      if (w == 0.0) continue;
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) m(b, d) += w * r(a, b, c, d);
    }
  }
  return SymmetricOperator(m, 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff()));
}

UnitDirectionSample standard_sample(int dim, int n_random, std::uint64_t seed) {
  UnitDirectionSample s;
  s.scheme = "frame+mix3+gauss" + std::to_string(n_random);
  for (int i = 0; i < dim; ++i) s.vectors.push_back(Eigen::VectorXd::Unit(dim, i));
  const double angles[] = {std::numbers::pi / 8, std::numbers::pi / 4, 3 * std::numbers::pi / 8};
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (double th : angles) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
        v(i) = std::cos(th);
        v(j) = std::sin(th);
        s.vectors.push_back(v.normalized());
      }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < n_random; ++r) {
    Eigen::VectorXd v(dim);
    do {
      for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
    } while (v.norm() < 1e-8);
    s.vectors.push_back(v.normalized());
  }
  return s;
}

KPositivityReport ric_k_scan(const CurvatureTensor& r, int k, const UnitDirectionSample& samples, double tol) {
  if (k < 1 || k > r.dim() - 1) {
    throw Error(ErrorCode::BadK, "k must lie in [1, dim-1]");
  }
  KPositivityReport rep;
  rep.k = k;
  rep.margins.assign(samples.vectors.size(), 0.0);
  parallel_for(samples.vectors.size(), [&](std::size_t i) {
    rep.margins[i] = sum_smallest(directional_operator(r, samples.vectors[i]), k + 1);
  });
  const auto it = std::min_element(rep.margins.begin(), rep.margins.end());
  if (it == rep.margins.end()) return rep;
  rep.min_margin = *it;
  rep.worst_direction = samples.vectors[static_cast<std::size_t>(it - rep.margins.begin())];
  rep.verdict = rep.min_margin > tol;
  return rep;
}

}  // namespace ricci
