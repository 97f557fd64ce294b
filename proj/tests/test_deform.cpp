#include "ricci/deform.hpp"
#include "ricci/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace ricci;

namespace {

ScalarFunction cosh_f(double rho) {
  return ScalarFunction("cosh", [rho](double t) {
    return Jet{rho * std::cosh(t), rho * std::sinh(t), rho * std::cosh(t), rho * std::sinh(t)};
  }, 0.0, 50.0);
}

ScalarFunction two_minus_exp() { return exp_tail(2.0, 1.0, 1.0, 0.0, 50.0); }

ScalarFunction identity_h() { return linear_function(0.0, 1.0, 0.0, 50.0); }

}  // namespace

TEST_CASE("default families on the round cap") {
  const auto h = default_h(HParams::matched());
  CHECK(h(0.1) == doctest::Approx(std::sin(0.1)).epsilon(1e-15));
  FParams fp;
  fp.rho_prime = 0.05;
  const auto f = default_f(fp);
  CHECK(f(0.1) == 0.05);
  CHECK(f.derivative(1, 0.1) == 0.0);
  // C^2 matching of the exponential tail at 1/2.
  for (int k = 0; k <= 2; ++k) CHECK(h.derivative(k, 0.5 + 1e-12) == doctest::Approx(h.derivative(k, 0.5)).epsilon(1e-9));
  for (double t : {1.0, 3.0, 10.0}) {
    CHECK(h.derivative(1, t) > 0.0);
    CHECK(h.derivative(2, t) < 0.0);
    CHECK(f.derivative(2, t) >= 0.0);
  }
}

TEST_CASE("exponential tail") {
  const auto h = two_minus_exp();
  for (double t : {0.1, 1.0, 5.0}) {
    CHECK(h.derivative(3, t) == doctest::Approx(std::exp(-t)));
    CHECK(h.derivative(1, t) > 0.0);
    CHECK(h.derivative(1, t) < 1.0);
  }
  CHECK_THROWS_AS(exp_tail(1.0, -1.0, 1.0, 0.0, 1.0), Error);
}

TEST_CASE("t2 inverts the slope") {
  CHECK(find_t2(cosh_f(0.05), 0.9, 0.0, 10.0) == doctest::Approx(std::asinh(18.0)).epsilon(1e-12));
  CHECK_THROWS_AS(find_t2(cosh_f(0.05), 1e6, 0.0, 10.0), Error);
  FParams fp;
  double previous = 0.0;
  for (double rho : {0.1, 0.05, 0.025, 0.0125}) {
    fp.rho_prime = rho;
    const double t2 = find_t2(default_f(fp), 0.9, fp.r_prime, fp.domain_hi);
    CHECK(t2 > previous);
    previous = t2;
  }
}

TEST_CASE("linear extension") {
  const auto f = cosh_f(0.05);
  const double t2 = std::asinh(18.0);
  const auto ext = linear_extension(f, t2, 0.9);
  CHECK(ext.fbar(t2 + 1.0) == doctest::Approx(f(t2) + 0.9).epsilon(1e-14));
  CHECK(ext.fbar.derivative(2, t2 + 0.5) == 0.0);
  double last = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double d1 = ext.fbar.derivative(1, 0.05 * i);
    CHECK(d1 >= last);
    last = d1;
  }
  CHECK_THROWS_AS(linear_extension(f, t2 + 0.1, 0.9), Error);
}

TEST_CASE("C1 smoothing keeps convexity and lands on the slope") {
  const auto f = cosh_f(0.05);
  const double t2 = std::asinh(18.0), eps = 1e-2;
  const auto ext = linear_extension(f, t2, 0.9);
  const auto s = c1_smooth(ext, eps);
  CHECK(s.window_lo == doctest::Approx(t2 - eps));
  CHECK(s.window_hi > t2);
  CHECK(s.g(s.window_lo - 0.1) == f(s.window_lo - 0.1));
  CHECK(s.g.derivative(1, s.window_hi + 1.0) == 0.9);
  CHECK(s.g.derivative(2, s.window_hi + 1.0) == 0.0);
  CHECK(s.offset >= 0.0);
  CHECK(s.offset < 1e-3 * eps);
  // Second derivative stays between 0 and f'' on the window.
  for (int i = 0; i <= 200; ++i) {
    const double t = s.window_lo + (s.window_hi - s.window_lo) * i / 200.0;
    const double d2 = s.g.derivative(2, t);
    CHECK(d2 >= 0.0);
    CHECK(d2 <= f.derivative(2, t) + 1e-12);
  }
  // C^1 across both window ends.
  for (double e : {s.window_lo, s.window_hi}) {
    CHECK(s.g(e - 1e-9) == doctest::Approx(s.g(e + 1e-9)).epsilon(1e-8));
    CHECK(s.g.derivative(1, e - 1e-9) == doctest::Approx(s.g.derivative(1, e + 1e-9)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(c1_smooth(ext, 0.0), Error);
}

TEST_CASE("smoothing a smooth function is a no-op") {
  const auto f = cosh_f(0.1);
  const auto g = c1_smooth(f);
  for (double t : {0.3, 2.0, 7.5}) CHECK(g(t) == f(t));
}

TEST_CASE("lambda at t2") {
  CHECK(lambda_t2(two_minus_exp(), 1.0) == doctest::Approx(-1.0 - std::exp(-1.0) / (2.0 - std::exp(-1.0))));
  CHECK(lambda_t2(two_minus_exp(), 1.0) == doctest::Approx(-1.225399).epsilon(1e-6));
  CHECK(lambda_t2(identity_h(), 4.0) == doctest::Approx(-0.25));
  CHECK_THROWS_AS(lambda_t2(constant_function(1.0, 0.0, 5.0), 1.0), Error);
}

TEST_CASE("psi' ramps linearly from one to zero") {
  const double lambda = -1.225399, t3 = 1.0 - 1.0 / lambda;
  CHECK(psi_prime(1.0, 1.0, lambda) == 1.0);
  CHECK(psi_prime(t3, 1.0, lambda) == 0.0);
  CHECK(psi_prime(0.5 * (1.0 + t3), 1.0, lambda) == doctest::Approx(0.5));
}

TEST_CASE("phi is the identity, then concave, then constant") {
  const auto h = two_minus_exp();
  const double delta = 0.02;
  const auto r = build_phi(h, 1.0, delta);
  CHECK(r.t3 == doctest::Approx(1.0 - 1.0 / r.lambda).epsilon(1e-14));
  CHECK(r.t3 == doctest::Approx(1.816061).epsilon(1e-6));
  CHECK(r.phi(0.5) == 0.5);
  CHECK(r.phi.derivative(1, 0.5) == 1.0);
  const double end = r.phi(r.t3 + delta);
  CHECK(r.phi(r.t3 + 1.0) == end);
  CHECK(r.phi.derivative(1, r.t3 + 1.0) == 0.0);
  for (int i = 0; i <= 10000; ++i) {
    const double t = 0.8 + 1.5 * i / 10000.0;
    const double d2 = r.phi.derivative(2, t);
    CHECK(d2 >= r.lambda - 1e-9);
    CHECK(d2 <= 1e-12);
  }
  const auto bent = bend_h(h, r);
  CHECK(bent(1.0 - delta - 0.1) == h(1.0 - delta - 0.1));
  CHECK(bent(r.t3 + delta + 0.5) == doctest::Approx(h(end)).epsilon(1e-15));
}

TEST_CASE("concave bend of f") {
  const auto f = cosh_f(0.05);
  CHECK(concave_bend_f(f, 3.0, 0.1, 0.0, 4.0)(3.5) == f(3.5));
  const auto g = concave_bend_f(f, 3.0, 0.1, 0.5, 4.0);
  CHECK(g(2.5) == f(2.5));
  CHECK(g.derivative(2, 3.5) == doctest::Approx(f.derivative(2, 3.5) - 0.5));
  CHECK(g.derivative(1, 3.5) < f.derivative(1, 3.5));
  CHECK_THROWS_AS(concave_bend_f(linear_function(1.0, 0.1, 0.0, 10.0), 3.0, 0.1, 5.0, 9.0), Error);
}

TEST_CASE("pipeline runs every stage") {
  const auto r = run_pipeline(3, 3, 5, 0.9, 0.01);
  const auto& st = r.state;
  CHECK(st.stage == Stage::Final);
  CHECK(r.k_in_range);
  CHECK(st.t2 > 0.0);
  CHECK(st.t3 > st.t2);
  CHECK(st.a > st.t3);
  CHECK(st.lambda_t2 < 0.0);
  CHECK(st.t3 == doctest::Approx(st.t2 - 1.0 / st.lambda_t2));
  CHECK(st.f.derivative(1, st.t2 - 1.0) == doctest::Approx(st.f_base.derivative(1, st.t2 - 1.0)));
  CHECK(st.h.derivative(1, st.a) == 0.0);
  CHECK(r.final_report.grid.size() == 10000u);

  const auto seq = rho_sequence(3, 3, 5, 0.9, 0.01, 2);
  REQUIRE(seq.size() == 3u);
  const auto s = check_S_properties(st, seq, 4000);
  for (const char* name : {"S1", "S2", "S4", "S5", "S6", "S7", "S8"}) CHECK_MESSAGE(s.get(name).pass, name);
  CHECK(s.get("S3").informational);

  const auto lem = check_support_lemmas(st, 50, 7, 4000);
  CHECK(lem.comparison_pairs == 50);
  CHECK(lem.comparison_counterexamples == 0);
  CHECK(lem.f_vs_fbar);
  CHECK(lem.hf_decreasing);
  CHECK(lem.star);
  CHECK(lem.phi_chain);
}

TEST_CASE("k below the range is reported") {
  const auto r = run_pipeline(3, 3, 4, 0.9, 0.01);
  CHECK_FALSE(r.k_in_range);
  CHECK_FALSE(r.verdict);
}

TEST_CASE("the second-derivative bound needs t2 beyond the threshold") {
  const auto h = default_h(HParams::matched());
  const double threshold = s8_threshold(h, 0.5, 50.0);
  CHECK(threshold > 0.5);
  const double ref = std::abs(h.derivative(2, 0.5));
  auto bound = [&](double t2) {
    return std::abs(h.derivative(2, t2)) + std::abs(h.derivative(1, t2) * lambda_t2(h, t2));
  };
  CHECK(bound(1.05 * threshold) < ref);
  CHECK(bound(0.6) >= ref);
}

TEST_CASE("stage names") {
  CHECK(to_string(Stage::Base) == "base");
  CHECK(to_string(Stage::Final) == "final");
}
