#pragma once

// Doubly warped products dt^2 + h(t)^2 ds_p^2 + f(t)^2 ds_q^2.

#include "ricci/scalar_function.hpp"
#include "ricci/spectral.hpp"

#include <array>
#include <vector>

namespace ricci {

struct WarpPair {
  ScalarFunction h;  // warps the p-sphere
  ScalarFunction f;  // warps the q-sphere
  double t_lo = 0.0;
  double t_hi = 0.0;
  int p = 2;
  int q = 2;
};

WarpPair round_witness(int p, int q);

using Quadruple = std::array<double, 4>;

/// Left-hand sides of the four Ric_k inequalities at t.
Quadruple lhs_quadruple(const WarpPair& w, int k, double t);

enum class FrameDirection { Radial, HFibre, FFibre };

/// R_X in the adapted frame (d/dt, p h-directions, q f-directions); diagonal.
SymmetricOperator frame_curvature_operator(const WarpPair& w, double t, FrameDirection direction);

struct Strictness {
  std::array<bool, 4> strict{true, true, true, true};
  double tol = kDefaultSymTol;

  static Strictness all_strict() { return {}; }
  /// Inequality (1) only required to be non-negative.
  static Strictness loose_first() {
    Strictness s;
    s.strict[0] = false;
    return s;
  }
};

struct InequalityReport {
  std::vector<double> grid;
  std::array<std::vector<double>, 4> lhs;
  Quadruple minima{};
  std::array<double, 4> argmin{};
  std::array<bool, 4> pass{};
  bool verdict = false;
};

/// Cell-centred uniform grid of n points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int n);

InequalityReport verify_on_grid(const WarpPair& w, int k, int n_points, const Strictness& strictness = {});
InequalityReport verify_on_grid(const WarpPair& w, int k, const std::vector<double>& grid,
                                const Strictness& strictness = {});

struct CrossCheckReport {
  bool consistent = true;
  std::vector<double> counterexamples;  // t where the inequalities hold but a frame operator is not (k+1)-positive
  int inequality_true = 0;
  int spectral_true = 0;
};

CrossCheckReport cross_check(const WarpPair& w, int k, const std::vector<double>& grid, double tol = kDefaultSymTol);

}  // namespace ricci
