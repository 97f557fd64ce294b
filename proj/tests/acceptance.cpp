// Acceptance run: one line per criterion, non-zero exit if any fails.

#include "ricci/deform.hpp"
#include "ricci/dwp.hpp"
#include "ricci/oracle.hpp"
#include "ricci/submersion.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace ricci;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = o.pass && secs < limit_s;
  failures += !pass;
  std::printf("[%s] %d %s: %s; %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              limit_s);
  std::fflush(stdout);
}

SyntheticParams synthetic(int p, int q, std::uint64_t seed) {
  SyntheticParams s;
  s.p = p;
  s.q = q;
  s.seed = seed;
  return s;
}

Outcome spectral_equivalence() {
  std::mt19937_64 rng(1000);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 3 + trial % 7;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
    const SymmetricOperator op(a);
    for (int m = 1; m <= n; ++m) worst = std::max(worst, std::abs(sum_smallest(op, m) - brute_force_min_subset_sum(op, m)));
  }
  return {worst <= 1e-10, "1000 matrices, max |diff| = " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome berger_oracle() {
  const auto d = berger_submersion_data();
  double worst = 0.0, worst_k = 0.0;
  for (double t : {0.1, 0.25, 0.5, 1.0, 1.3}) {
    const auto m = LieAlgebraModel::berger(t);
    const auto r = curvature_from_connection(m, koszul_connection(m));
    const auto a = assemble_gt_unit(d, t);
    worst = std::max(worst, a.max_abs_diff(r));
    worst_k = std::max({worst_k, std::abs(a(1, 2, 1, 2) - (4.0 - 3.0 * t)), std::abs(a(0, 1, 0, 1) - t)});
  }
  return {worst <= 1e-10 && worst_k <= 1e-10,
          "max componentwise diff = " + fmt("%.2e", worst) + ", K(X,Y)=4-3t and K(X,U)=t off by " + fmt("%.2e", worst_k) +
              " (tol 1e-10)"};
}

Outcome block_orders() {
  std::vector<double> ts, lambdas;
  for (int i = 0; i <= 8; ++i) ts.push_back(std::pow(10.0, -1.0 - 0.5 * i));
  for (int i = 0; i <= 6; ++i) lambdas.push_back(std::pow(10.0, -1.0 - 0.5 * i));
  std::vector<std::pair<std::string, SubmersionPointData>> cases{{"berger", berger_submersion_data()}};
  for (std::uint64_t s = 1; s <= 5; ++s) cases.emplace_back("synthetic" + std::to_string(s), synthetic_data(synthetic(3, 4, s)));
  bool ok = true;
  double min_v = 1e9, min_t = 1e9, min_l = 1e9;
  int zeros = 0;
  for (const auto& [name, data] : cases) {
    const auto rep = block_scaling_audit(data, ts, lambdas);
    for (const auto* f : {&rep.vertical_in_t, &rep.offdiag_in_t, &rep.offdiag_in_lambda}) zeros += f->exact_zero;
    auto take = [&](const ExponentFit& f, double need, double& slot) {
      if (f.exact_zero) return;
      slot = std::min(slot, f.exponent);
      ok = ok && f.exponent >= need;
    };
    take(rep.vertical_in_t, 0.9, min_v);
    take(rep.offdiag_in_t, 0.4, min_t);
    take(rep.offdiag_in_lambda, 0.9, min_l);
  }
  return {ok, "min exponents: vertical " + fmt("%.4f", min_v) + " (>= 0.9), off-diagonal in t " + fmt("%.4f", min_t) +
                  " (>= 0.4), off-diagonal in lambda " + fmt("%.4f", min_l) + " (>= 0.9); " + std::to_string(zeros) +
                  " deviations identically zero"};
}

Outcome theorem_a() {
  struct Case {
    int p, q, k1, k2;
  };
  bool ok = true;
  std::string d;
  std::uint64_t seed = 1;
  for (auto c : {Case{3, 4, 1, 1}, Case{2, 2, 1, 1}, Case{3, 3, 2, 2}, Case{2, 5, 1, 2}, Case{4, 3, 1, 1}}) {
    const int k = std::max(c.k1 + c.p, c.k2 + c.q);
    const auto sweep = tau_scan(synthetic_data(synthetic(c.p, c.q, seed++)), k, SweepConfig::defaults());
    const bool found = sweep.tau_estimate.has_value() && *sweep.tau_estimate > 0.0;
    ok = ok && found;
    d += "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ") k=" + std::to_string(k) + " tau=" +
         (found ? fmt("%.3g", *sweep.tau_estimate) : std::string("none")) + " ";
  }
  d.pop_back();
  return {ok, d};
}

Outcome product_exactness() {
  const auto sweep = SweepConfig::defaults();
  const auto sample = standard_sample(7, 512, sweep.seed);
  double worst = 0.0, k4_margin = 0.0;
  bool verdicts = true;
  for (double rho : {1.0, 0.1, 0.01}) {
    const auto fibre = constant_curvature_tensor(3, 1.0 / (rho * rho)), base = constant_curvature_tensor(4, 1.0);
    const auto d = product_data(fibre, base);
    for (double t : sweep.t_grid) {
      const auto r = assemble_gt_unit(d, t);
      const auto expected = product_tensor(fibre.scaled(1.0 / t), base);
      worst = std::max(worst, r.max_abs_diff(expected) / std::max(1.0, 1.0 / (rho * rho * t)));
      const double tol = 1e-12 * std::max(1.0, 1.0 / (rho * rho * t));
      const auto at5 = ric_k_scan(r, 5, sample, tol), at4 = ric_k_scan(r, 4, sample, tol);
      verdicts = verdicts && at5.verdict && !at4.verdict;
      k4_margin = std::max(k4_margin, std::abs(at4.min_margin) / std::max(1.0, 1.0 / (rho * rho * t)));
    }
  }
  return {worst <= 1e-12 && verdicts && k4_margin <= 1e-12,
          "relative tensor diff " + fmt("%.2e", worst) + " (tol 1e-12); k=5 pass / k=4 fail at every t: " +
              (verdicts ? "yes" : "no") + "; k=4 min margin relative to the largest curvature |" + fmt("%.1e", k4_margin) + "| (tol 1e-12)"};
}

Outcome dwp_identity() {
  constexpr double kHalfPi = 1.57079632679489661923;
  double worst = 0.0, full = 0.0;
  for (auto [p, q, k] : {std::tuple{2, 2, 4}, std::tuple{3, 4, 7}}) {
    const auto w = round_witness(p, q);
    for (double t : uniform_grid(0.05, kHalfPi - 0.05, 1000))
      for (double v : lhs_quadruple(w, k, t)) worst = std::max(worst, std::abs(v - k));
    for (double t : uniform_grid(0.0, kHalfPi, 1000))
      for (double v : lhs_quadruple(w, k, t)) full = std::max(full, std::abs(v - k));
  }
  return {worst <= 1e-12, "max |LHS - k| = " + fmt("%.2e", worst) + " on [0.05, pi/2-0.05] (tol 1e-12); " +
                              fmt("%.1e", full) + " on the full open interval"};
}

Outcome pipeline() {
  const auto r = run_pipeline(3, 3, 5, 0.9, 0.01);
  const auto seq = rho_sequence(3, 3, 5, 0.9, 0.1, 4);  // 0.1, 0.05, ..., 0.00625
  const auto s = check_S_properties(r.state, seq, 10000);
  const auto lem = check_support_lemmas(r.state, 200, 7, 10000);
  bool props = true;
  std::string failed;
  for (const char* n : {"S1", "S4", "S5", "S6", "S7", "S8", "S9"}) {
    if (!s.get(n).pass) {
      props = false;
      failed += std::string(" ") + n;
    }
  }
  const auto& m = r.final_report.minima;
  std::string ratios;
  for (double x : s.s9_ratios) ratios += fmt(" %.6f", x);
  const bool ok = r.final_report.verdict && props && lem.star && lem.phi_chain;
  return {ok, "final minima (" + fmt("%.4g", m[0]) + fmt(", %.4g", m[1]) + fmt(", %.4g", m[2]) + fmt(", %.4g", m[3]) +
                  ") strict " + (r.final_report.verdict ? "pass" : "fail") + "; failing properties:" +
                  (failed.empty() ? std::string(" none") : failed) + "; S9 h(a)/f(a):" + ratios + "; star " +
                  (lem.star ? "pass" : "fail") + ", phi chain " + (lem.phi_chain ? "pass" : "fail")};
}

Outcome support_lemmas() {
  const auto r = run_pipeline(3, 3, 5, 0.9, 0.01);
  const auto lem = check_support_lemmas(r.state, 200, 7, 10000);
  const bool ok = lem.comparison_pairs == 200 && lem.comparison_counterexamples == 0 && lem.f_vs_fbar && lem.hf_decreasing;
  return {ok, std::to_string(lem.comparison_pairs) + " comparison pairs, " +
                  std::to_string(lem.comparison_counterexamples) + " counterexamples; f vs fbar " +
                  (lem.f_vs_fbar ? "pass" : "fail") + "; (h'f)' max " + fmt("%.2e", lem.hf_max_derivative)};
}

}  // namespace

int main() {
  criterion(1, "spectral oracle equivalence", 10, spectral_equivalence);
  criterion(2, "Gray-O'Neill assembly vs Lie algebra oracle", 1, berger_oracle);
  criterion(3, "block orders of the curvature matrix", 30, block_orders);
  criterion(4, "canonical variation reaches Ric_k > 0", 120, theorem_a);
  criterion(5, "product exactness", 30, product_exactness);
  criterion(6, "doubly warped round witness identity", 1, dwp_identity);
  criterion(7, "deformation pipeline end to end", 60, pipeline);
  criterion(8, "support lemma property tests", 10, support_lemmas);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
