#pragma once

// Real functions of one variable carrying derivatives up to order 3.

#include <functional>
#include <map>
#include <memory>
#include <string>

namespace ricci {

struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  double operator[](int order) const;
};

class ScalarFunction {
 public:
  using Evaluator = std::function<Jet(double)>;

  ScalarFunction() = default;
  ScalarFunction(std::string family, Evaluator eval, double lo, double hi,
                 std::map<std::string, double> params = {}, int smoothness = 3);

  /// Throws OutOfDomain outside [lo, hi].
  Jet jet(double t) const;
  /// Evaluation without the domain check.
  Jet raw(double t) const { return (*eval_)(t); }
  double operator()(double t) const { return jet(t).v; }
  double derivative(int order, double t) const;

  const std::string& family() const { return family_; }
  const std::map<std::string, double>& params() const { return params_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int smoothness() const { return smoothness_; }
  bool valid() const { return static_cast<bool>(eval_); }

  ScalarFunction with_domain(double lo, double hi) const;

 private:
  std::string family_;
  std::shared_ptr<const Evaluator> eval_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::map<std::string, double> params_;
  int smoothness_ = 3;
};

/// Step used by the finite-difference path: max(1e-5, 1e-6 |t|).
double fd_step(double t);

/// Five-point central differences of orders 1-3 of a value function.
Jet finite_difference_jet(const std::function<double(double)>& f, double t);

/// Same function with derivatives recomputed by finite differences.
ScalarFunction finite_difference(const ScalarFunction& f);

ScalarFunction constant_function(double c, double lo, double hi);
/// a + b t
ScalarFunction linear_function(double a, double b, double lo, double hi);
ScalarFunction sine_function(double lo, double hi);
ScalarFunction cosine_function(double lo, double hi);
/// s * g(t / s)
ScalarFunction rescaled(const ScalarFunction& g, double s);

/// outer(inner(t)) with chain-rule derivatives.
ScalarFunction compose(const ScalarFunction& outer, const ScalarFunction& inner);

/// left on t <= split, right on t > split. No continuity is imposed.
ScalarFunction piecewise(const ScalarFunction& left, const ScalarFunction& right, double split);

/// Quintic smoothstep w(s) = 10s^3 - 15s^4 + 6s^5 clamped to [0,1], with derivatives in s.
Jet smoothstep5(double s);

/// Antiderivatives of the smoothstep: int_0^s w and int_0^s int_0^u w.
double smoothstep5_integral(double s);
double smoothstep5_double_integral(double s);

/// left on t <= a, right on t >= b, and on [a, b] the quintic matching the
/// jets (value, d1, d2) of both sides, so the result is C^2.
ScalarFunction hermite_bridge(const ScalarFunction& left, const ScalarFunction& right, double a, double b);

/// Integral of g over [a, b] by composite 16-point Gauss-Legendre on n panels.
double gauss_legendre(const std::function<double(double)>& g, double a, double b, int panels = 4);

}  // namespace ricci
