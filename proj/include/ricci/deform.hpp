#pragma once

// Construction of the warping functions h, f: base families, straightening of
// f at slope delta, bending of h to a constant, and the property audits.

#include "ricci/dwp.hpp"
#include "ricci/scalar_function.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ricci {

/// h = A - B exp(-sigma t) away from the round cap.
struct HParams {
  double A = 0.0;
  double B = 0.0;
  double sigma = 0.0;
  double r_prime = 0.2;
  double domain_hi = 1000.0;

  /// Tail matched to sin to second order at t = 1/2, so h = sin on [0, 1/2].
  static HParams matched(double r_prime = 0.2);
};

/// f = rho' cosh(kappa u(t)) with u = 0 on [0, R'] and u' = 1 beyond R' + bridge.
struct FParams {
  double rho_prime = 0.01;
  double kappa = 0.5;
  double r_prime = 0.2;
  double bridge = 0.25;
  double domain_hi = 1000.0;
};

ScalarFunction exp_tail(double A, double B, double sigma, double lo, double hi);
ScalarFunction default_h(const HParams& params);
ScalarFunction default_f(const FParams& params);

/// Root of f'(t) = delta on [lo, hi].
double find_t2(const ScalarFunction& f, double delta, double lo, double hi);

struct LinearExtension {
  ScalarFunction f;     // original, smooth through t2
  ScalarFunction fbar;  // f for t <= t2, L for t > t2
  double t2 = 0.0;
  double delta = 0.0;
};

LinearExtension linear_extension(const ScalarFunction& f, double t2, double delta);

struct GuardContext {
  ScalarFunction h;
  int p = 3;
  int q = 3;
  int k = 5;
  int n_points = 2001;
  double tol = 1e-9;
};

struct SmoothingResult {
  ScalarFunction g;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double offset = 0.0;   // fbar - g beyond the window
  double max_d2 = 0.0;   // sup of g'' over the window
  double left_d2 = 0.0;  // f''(t2-)
  bool guard_checked = false;
  std::array<bool, 4> guard_pass{true, true, true, true};
};

/// Smooths the C^1 corner of fbar on [t2 - eps, B]: g'' = f'' (1 - w) with w the
/// quintic smoothstep, B chosen so that g'(B) = delta. Beyond B, g is linear
/// with slope delta.
SmoothingResult c1_smooth(const LinearExtension& ext, double eps, const GuardContext* guard = nullptr);
/// Returns g unchanged when it is already C^2.
ScalarFunction c1_smooth(const ScalarFunction& g);

double lambda_t2(const ScalarFunction& h, double t2);

struct PhiResult {
  ScalarFunction phi;
  double t2 = 0.0;
  double t3 = 0.0;
  double lambda = 0.0;
  double delta = 0.0;  // corner half-width
};

PhiResult build_phi(const ScalarFunction& h, double t2, double delta);
/// psi' of the unsmoothed construction.
double psi_prime(double t, double t2, double lambda);

ScalarFunction bend_h(const ScalarFunction& h, const PhiResult& phi);

/// Adds -bend * w((t - t3 + delta)/delta) to f'' on [t3 - delta, hi].
ScalarFunction concave_bend_f(const ScalarFunction& f, double t3, double delta, double bend, double hi);

enum class Stage { Base, Extended, Smoothed, Bent, Final };
std::string to_string(Stage s);

struct DeformationState {
  int p = 3;
  int q = 3;
  int k = 5;
  double delta = 0.9;
  double rho_prime = 0.01;
  double r_prime = 0.2;
  double t0 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double a = 0.0;
  double lambda_t2 = 0.0;
  double eps = 0.0;
  double delta_phi = 0.0;
  double bend = 0.0;
  double bend_width = 0.0;
  Stage stage = Stage::Base;

  ScalarFunction h_base;
  ScalarFunction f_base;
  ScalarFunction fbar;
  ScalarFunction f_smooth;
  ScalarFunction phi;
  ScalarFunction h;  // current h
  ScalarFunction f;  // current f

  WarpPair pair() const;
};

struct PipelineOptions {
  HParams h = HParams::matched();
  double kappa = 0.5;
  double f_bridge = 0.25;
  double eps_fraction = 1e-3;
  double delta_phi_fraction = 1e-2;
  double bend_fraction = 0.05;  // slope given up by the final bend, relative to delta
  int grid_points = 10000;
  double tol = 1e-9;
};

struct PipelineResult {
  DeformationState state;
  InequalityReport base_report;      // base families on [0, t2]
  InequalityReport pre_bend_report;  // (1) non-negative mode
  InequalityReport final_report;     // strict
  SmoothingResult smoothing;
  std::vector<std::string> notes;
  bool k_in_range = true;  // k >= max(p, q) + 2
  bool verdict = false;
};

PipelineResult run_pipeline(int p, int q, int k, double delta, double rho_prime, const PipelineOptions& options = {});

struct PropertyCheck {
  std::string name;
  bool pass = false;
  bool informational = false;
  std::string detail;
};

struct SReport {
  std::vector<PropertyCheck> checks;
  double s8_threshold_t2 = 0.0;  // smallest t2 meeting both half-bounds of the h'' estimate
  std::vector<double> s9_ratios;
  bool passes() const;
  const PropertyCheck& get(const std::string& name) const;
};

/// sequence: final states for successively halved rho' (used by S5 and S9).
SReport check_S_properties(const DeformationState& state, const std::vector<DeformationState>& sequence,
                           int grid_points = 10000);

/// Final states for rho', rho'/2, ..., rho'/2^halvings.
std::vector<DeformationState> rho_sequence(int p, int q, int k, double delta, double rho_prime, int halvings,
                                           const PipelineOptions& options = {});

/// Smallest t2 with |h''(t2)| < |h''(1/2)|/2 and |h'(t2) lambda_t2| < |h''(1/2)|/2.
double s8_threshold(const ScalarFunction& h, double lo, double hi);

struct LemmaReport {
  int comparison_pairs = 0;
  int comparison_counterexamples = 0;
  bool f_vs_fbar = false;
  bool hf_decreasing = false;
  double hf_max_derivative = 0.0;
  bool star = false;
  double star_worst = 0.0;  // max of phi' - rhs
  bool phi_chain = false;
  std::vector<PropertyCheck> checks;
  bool passes() const;
};

/// Lemma f_comparison on one pair sharing value and slope at T.
struct ComparisonOutcome {
  bool admissible = false;  // positive, hypothesis holds on the grid
  bool conclusion = false;
};
ComparisonOutcome f_comparison_random_pair(std::uint64_t seed, double T = 0.0, double span = 5.0, int steps = 4000);

LemmaReport check_support_lemmas(const DeformationState& state, int random_pairs = 200, std::uint64_t seed = 7,
                                 int grid_points = 10000);

/// Largest rho' in [lo, hi] found by bisection (log scale) for which the pipeline verdict holds.
std::optional<double> find_rho0(int p, int q, int k, double delta, double lo, double hi, int steps = 8,
                                const PipelineOptions& options = {});

}  // namespace ricci
