#include "oracles.hpp"

#include "ricci/error.hpp"
#include "ricci/submersion.hpp"
#include "ricci/tensor.hpp"

#include <doctest.h>

using namespace ricci;

namespace {

CurvatureTensor sphere(int n, double kappa) {
  CurvatureTensor r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) r(a, b, c, d) = test_oracle::constant_component(kappa, a, b, c, d);
  return r;
}

// Block sum of two sphere tensors.
CurvatureTensor sphere_product(int p, double k1, int q, double k2) {
  CurvatureTensor r(p + q);
  for (int a = 0; a < p + q; ++a)
    for (int b = 0; b < p + q; ++b)
      for (int c = 0; c < p + q; ++c)
        for (int d = 0; d < p + q; ++d) {
          const bool first = a < p && b < p && c < p && d < p;
          const bool second = a >= p && b >= p && c >= p && d >= p;
          if (first) r(a, b, c, d) = test_oracle::constant_component(k1, a, b, c, d);
          if (second) r(a, b, c, d) = test_oracle::constant_component(k2, a, b, c, d);
        }
  return r;
}

}  // namespace

TEST_CASE("round sphere satisfies every symmetry") {
  const auto r = sphere(4, 1.0);
  const auto rep = validate_symmetries(r);
  CHECK(rep.passes);
  CHECK(rep.max_violation() == 0.0);
}

TEST_CASE("broken tensor is reported") {
  auto r = sphere(3, 1.0);
  r(0, 1, 0, 1) += 0.1;
  const auto rep = validate_symmetries(r);
  CHECK_FALSE(rep.passes);
  CHECK(rep.antisym_first == doctest::Approx(0.1));
}

TEST_CASE("sectional curvature of a constant-curvature tensor") {
  std::mt19937_64 rng(2);
  const auto r = sphere(5, 2.5);
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd v = test_oracle::random_unit(5, rng);
    Eigen::VectorXd w = test_oracle::random_unit(5, rng);
    w = (w - w.dot(v) * v).normalized();
    CHECK(sectional(r, v, w) == doctest::Approx(2.5).epsilon(1e-12));
  }
  Eigen::VectorXd v = Eigen::VectorXd::Unit(5, 0), w = Eigen::VectorXd::Unit(5, 0);
  CHECK_THROWS_AS(sectional(r, v, w), Error);
}

TEST_CASE("directional operator is symmetric and annihilates its direction") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = random_curvature_tensor(5, 1.0, 100 + trial);
    REQUIRE(validate_symmetries(r).passes);
    const Eigen::VectorXd x = test_oracle::random_unit(5, rng);
    const auto op = directional_operator(r, x);
    CHECK((op.matrix() - op.matrix().transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((op.matrix() * x).norm() <= 1e-12);
    // Quadratic form against a direct four-index contraction.
    const Eigen::VectorXd y = test_oracle::random_unit(5, rng);
    double direct = 0.0;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c)
          for (int d = 0; d < 5; ++d) direct += r(a, b, c, d) * x(a) * y(b) * x(c) * y(d);
    CHECK(y.dot(op.matrix() * y) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("unit sphere has Ric_k margin k") {
  const auto r = sphere(4, 1.0);
  const auto sample = standard_sample(4, 64, 9);
  for (int k = 1; k <= 3; ++k) {
    const auto rep = ric_k_scan(r, k, sample);
    CHECK(rep.verdict);
    CHECK(rep.min_margin == doctest::Approx(k).epsilon(1e-12));
  }
}

TEST_CASE("sample contains frames, mixtures and random unit vectors") {
  const auto s = standard_sample(4, 10, 1);
  CHECK(s.count() == 4 + 3 * 6 + 10);
  for (const auto& v : s.vectors) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
  const auto again = standard_sample(4, 10, 1);
  CHECK(again.vectors.back() == s.vectors.back());
}

TEST_CASE("products meet the factorwise threshold") {
  struct Case {
    int p, q;
  };
  for (auto c : {Case{3, 4}, Case{2, 2}, Case{3, 3}}) {
    const auto r = sphere_product(c.p, 1.0, c.q, 1.0);
    const auto sample = standard_sample(c.p + c.q, 500, 42);
    const int threshold = std::max(1 + c.p, 1 + c.q);
    for (int k = 1; k < c.p + c.q; ++k) {
      const auto rep = ric_k_scan(r, k, sample, 1e-12);
      CHECK_MESSAGE(rep.verdict == (k >= threshold), "p=", c.p, " q=", c.q, " k=", k);
    }
  }
}

TEST_CASE("verdict is monotone in k on a fixed sample") {
  for (int trial = 0; trial < 5; ++trial) {
    const auto r = random_curvature_tensor(5, 1.0, 7 + trial);
    const auto sample = standard_sample(5, 100, trial);
    bool passed = false;
    for (int k = 1; k <= 4; ++k) {
      const bool v = ric_k_scan(r, k, sample).verdict;
      if (passed) CHECK(v);
      passed = passed || v;
    }
  }
}

TEST_CASE("k outside [1, dim-1] is rejected") {
  const auto r = sphere(3, 1.0);
  const auto s = standard_sample(3, 0, 0);
  CHECK_THROWS_AS(ric_k_scan(r, 0, s), Error);
  CHECK_THROWS_AS(ric_k_scan(r, 3, s), Error);
}
