#include "ricci/scalar_function.hpp"

#include "ricci/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace ricci {

double Jet::operator[](int order) const {
  switch (order) {
    case 0: return v;
    case 1: return d1;
    case 2: return d2;
    case 3: return d3;
    default: throw Error(ErrorCode::BadParams, "derivative order must be 0..3");
  }
}

ScalarFunction::ScalarFunction(std::string family, Evaluator eval, double lo, double hi,
                               std::map<std::string, double> params, int smoothness)
    : family_(std::move(family)),
      eval_(std::make_shared<const Evaluator>(std::move(eval))),
      lo_(lo),
      hi_(hi),
      params_(std::move(params)),
      smoothness_(smoothness) {
  if (!(lo < hi)) throw Error(ErrorCode::BadParams, family_ + ": empty domain");
}

Jet ScalarFunction::jet(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lo_), std::abs(hi_)));
  if (!(t >= lo_ - slack && t <= hi_ + slack)) {
    throw Error(ErrorCode::OutOfDomain,
                family_ + ": t = " + std::to_string(t) + " outside [" + std::to_string(lo_) + ", " +
                    std::to_string(hi_) + "]");
  }
  return (*eval_)(t);
}

double ScalarFunction::derivative(int order, double t) const { return jet(t)[order]; }

ScalarFunction ScalarFunction::with_domain(double lo, double hi) const {
  ScalarFunction out = *this;
  if (!(lo < hi)) throw Error(ErrorCode::BadParams, family_ + ": empty domain");
  out.lo_ = lo;
  out.hi_ = hi;
  return out;
}

double fd_step(double t) { return std::max(1e-5, 1e-6 * std::abs(t)); }

Jet finite_difference_jet(const std::function<double(double)>& f, double t) {
  const double h = fd_step(t);
  const double m2 = f(t - 2 * h), m1 = f(t - h), c = f(t), p1 = f(t + h), p2 = f(t + 2 * h);
  Jet j;
  j.v = c;
  j.d1 = (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h);
  j.d2 = (-p2 + 16 * p1 - 30 * c + 16 * m1 - m2) / (12 * h * h);
  j.d3 = (p2 - 2 * p1 + 2 * m1 - m2) / (2 * h * h * h);
  return j;
}

ScalarFunction finite_difference(const ScalarFunction& f) {
  auto params = f.params();
  return ScalarFunction(
      f.family() + "/fd",
      [f](double t) { return finite_difference_jet([&f](double s) { return f.raw(s).v; }, t); }, f.lo(), f.hi(),
      params, f.smoothness());
}

ScalarFunction constant_function(double c, double lo, double hi) {
  return ScalarFunction("constant", [c](double) { return Jet{c, 0.0, 0.0, 0.0}; }, lo, hi, {{"c", c}});
}

ScalarFunction linear_function(double a, double b, double lo, double hi) {
  return ScalarFunction("linear", [a, b](double t) { return Jet{a + b * t, b, 0.0, 0.0}; }, lo, hi,
                        {{"a", a}, {"b", b}});
}

ScalarFunction sine_function(double lo, double hi) {
  return ScalarFunction(
      "sin",
      [](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return Jet{s, c, -s, -c};
      },
      lo, hi);
}

ScalarFunction cosine_function(double lo, double hi) {
  return ScalarFunction(
      "cos",
      [](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return Jet{c, -s, -c, s};
      },
      lo, hi);
}

ScalarFunction rescaled(const ScalarFunction& g, double s) {
  if (!(s > 0.0)) throw Error(ErrorCode::BadParams, "rescale factor must be positive");
  auto params = g.params();
  params["scale"] = s;
  return ScalarFunction(
      g.family() + "/rescaled",
      [g, s](double t) {
        const Jet j = g.raw(t / s);
        return Jet{s * j.v, j.d1, j.d2 / s, j.d3 / (s * s)};
      },
      s * g.lo(), s * g.hi(), params, g.smoothness());
}

ScalarFunction compose(const ScalarFunction& outer, const ScalarFunction& inner) {
  return ScalarFunction(
      outer.family() + "(" + inner.family() + ")",
      [outer, inner](double t) {
        const Jet u = inner.raw(t);
        const Jet o = outer.jet(u.v);
        Jet j;
        j.v = o.v;
        j.d1 = o.d1 * u.d1;
        j.d2 = o.d2 * u.d1 * u.d1 + o.d1 * u.d2;
        j.d3 = o.d3 * u.d1 * u.d1 * u.d1 + 3.0 * o.d2 * u.d1 * u.d2 + o.d1 * u.d3;
        return j;
      },
      inner.lo(), inner.hi(), {}, std::min(outer.smoothness(), inner.smoothness()));
}

ScalarFunction piecewise(const ScalarFunction& left, const ScalarFunction& right, double split) {
  return ScalarFunction(
      left.family() + "|" + right.family(),
      [left, right, split](double t) { return t <= split ? left.raw(t) : right.raw(t); }, left.lo(),
      std::max(right.hi(), split), {{"split", split}}, 0);
}

Jet smoothstep5(double s) {
  if (s <= 0.0) return {0.0, 0.0, 0.0, 0.0};
  if (s >= 1.0) return {1.0, 0.0, 0.0, 0.0};
  const double s2 = s * s;
  return {s2 * s * (10.0 - 15.0 * s + 6.0 * s2), 30.0 * s2 * (1.0 - s) * (1.0 - s),
          60.0 * s * (1.0 - s) * (1.0 - 2.0 * s), 60.0 * (1.0 - 6.0 * s + 6.0 * s2)};
}

double smoothstep5_integral(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 0.5 + (s - 1.0);
  const double s4 = s * s * s * s;
  return s4 * (2.5 - 3.0 * s + s * s);
}

double smoothstep5_double_integral(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) {
    const double r = s - 1.0;
    return 1.0 / 7.0 + 0.5 * r + 0.5 * r * r;
  }
  const double s5 = s * s * s * s * s;
  return s5 * (0.5 - 0.5 * s + s * s / 7.0);
}

ScalarFunction hermite_bridge(const ScalarFunction& left, const ScalarFunction& right, double a, double b) {
  if (!(a < b)) throw Error(ErrorCode::BadParams, "bridge interval must satisfy a < b");
  const Jet l = left.jet(a);
  const Jet r = right.jet(b);
  const double len = b - a;
  static constexpr std::array<std::array<double, 6>, 6> basis{{
      {1, 0, 0, -10, 15, -6},
      {0, 1, 0, -6, 8, -3},
      {0, 0, 0.5, -1.5, 1.5, -0.5},
      {0, 0, 0, 10, -15, 6},
      {0, 0, 0, -4, 7, -3},
      {0, 0, 0, 0.5, -1, 0.5},
  }};
  const std::array<double, 6> w{l.v, l.d1 * len, l.d2 * len * len, r.v, r.d1 * len, r.d2 * len * len};
  std::array<double, 6> c{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) c[k] += w[i] * basis[i][k];
  auto poly = [c, a, len](double t) {
    const double x = (t - a) / len;
    Jet j;
    for (int k = 5; k >= 0; --k) {
      j.d3 = j.d3 * x + j.d2;
      j.d2 = j.d2 * x + j.d1;
      j.d1 = j.d1 * x + j.v;
      j.v = j.v * x + c[k];
    }
    return Jet{j.v, j.d1 / len, 2.0 * j.d2 / (len * len), 6.0 * j.d3 / (len * len * len)};
  };
  return ScalarFunction(
      left.family() + "~" + right.family(),
      [left, right, a, b, poly](double t) {
        if (t <= a) return left.raw(t);
        if (t >= b) return right.raw(t);
        return poly(t);
      },
      left.lo(), right.hi(), {{"bridge_a", a}, {"bridge_b", b}}, 2);
}

double gauss_legendre(const std::function<double(double)>& g, double a, double b, int panels) {
  static constexpr std::array<double, 8> x{0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                           0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                           0.9445750230732326, 0.9894009349916499};
  static constexpr std::array<double, 8> w{0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                           0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                           0.0622535239386479, 0.0271524594117541};
  if (a == b) return 0.0;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h, half = 0.5 * h;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (g(mid - half * x[i]) + g(mid + half * x[i]));
    total += half * s;
  }
  return total;
}

}  // namespace ricci
