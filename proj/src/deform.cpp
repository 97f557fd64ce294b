#include "ricci/deform.hpp"

#include "ricci/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace ricci {

namespace {

constexpr double kHalf = 0.5;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <class F>
double bisect(F&& g, double lo, double hi, int iterations = 200) {
  double glo = g(lo);
  for (int i = 0; i < iterations && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

HParams HParams::matched(double r_prime) {
  HParams p;
  p.sigma = std::tan(kHalf);
  p.B = std::cos(kHalf) * std::exp(p.sigma * kHalf) / p.sigma;
  p.A = std::sin(kHalf) + std::cos(kHalf) / p.sigma;
  p.r_prime = r_prime;
  return p;
}

ScalarFunction exp_tail(double A, double B, double sigma, double lo, double hi) {
  if (!(B > 0.0) || !(sigma > 0.0)) throw Error(ErrorCode::BadParams, "exp tail needs B > 0 and sigma > 0");
  return ScalarFunction(
      "exp_tail",
      [A, B, sigma](double t) {
        const double e = B * std::exp(-sigma * t);
        return Jet{A - e, sigma * e, -sigma * sigma * e, sigma * sigma * sigma * e};
      },
      lo, hi, {{"A", A}, {"B", B}, {"sigma", sigma}});
}

ScalarFunction default_h(const HParams& hp) {
  if (!(hp.r_prime > 0.0 && hp.r_prime < 0.25)) throw Error(ErrorCode::BadParams, "R' must lie in (0, 1/4)");
  const ScalarFunction tail = exp_tail(hp.A, hp.B, hp.sigma, 0.0, hp.domain_hi);
  const ScalarFunction sine = sine_function(0.0, hp.domain_hi);
  const Jet at_half = tail.jet(kHalf);
  const Jet s = sine.jet(kHalf);
  if (!(at_half.v > 0.0 && at_half.d1 > 0.0 && at_half.d1 < 1.0 && at_half.d2 < 0.0)) {
    throw Error(ErrorCode::BadParams, "exp tail must have h > 0, h' in (0,1), h'' < 0 at t = 1/2");
  }
  const bool matched = std::abs(at_half.v - s.v) < 1e-12 && std::abs(at_half.d1 - s.d1) < 1e-12 &&
                       std::abs(at_half.d2 - s.d2) < 1e-12;
  ScalarFunction h = matched ? piecewise(sine, tail, kHalf) : hermite_bridge(sine, tail, hp.r_prime, kHalf);
  if (!matched) {
    for (int i = 0; i <= 200; ++i) {
      const double t = hp.r_prime + (kHalf - hp.r_prime) * i / 200.0;
      const Jet j = h.jet(t);
      if (!(j.v > 0.0 && j.d1 > 0.0 && j.d1 < 1.0 && j.d2 <= 0.0)) {
        throw Error(ErrorCode::BadParams, "bridge from the round cap loses h > 0, h' in (0,1) or h'' <= 0");
      }
    }
  }
  auto params = std::map<std::string, double>{
      {"A", hp.A}, {"B", hp.B}, {"sigma", hp.sigma}, {"r_prime", hp.r_prime}};
  return ScalarFunction("default_h", [h](double t) { return h.raw(t); }, 0.0, hp.domain_hi, params,
                        matched ? 2 : 2);
}

ScalarFunction default_f(const FParams& fp) {
  if (!(fp.rho_prime > 0.0) || !(fp.kappa > 0.0) || !(fp.bridge > 0.0)) {
    throw Error(ErrorCode::BadParams, "default_f needs rho' > 0, kappa > 0, bridge > 0");
  }
  if (!(fp.r_prime > 0.0 && fp.r_prime < 0.25)) throw Error(ErrorCode::BadParams, "R' must lie in (0, 1/4)");
  const double rho = fp.rho_prime, k = fp.kappa, r = fp.r_prime, w = fp.bridge;
  auto eval = [rho, k, r, w](double t) {
    if (t <= r) return Jet{rho, 0.0, 0.0, 0.0};
    const double s = (t - r) / w;
    const Jet ws = smoothstep5(s);
    const double u = w * smoothstep5_integral(s), u1 = ws.v, u2 = ws.d1 / w, u3 = ws.d2 / (w * w);
    const double ch = std::cosh(k * u), sh = std::sinh(k * u);
    return Jet{rho * ch, rho * k * sh * u1, rho * (k * k * ch * u1 * u1 + k * sh * u2),
               rho * (k * k * k * sh * u1 * u1 * u1 + 3.0 * k * k * ch * u1 * u2 + k * sh * u3)};
  };
  return ScalarFunction("default_f", eval, 0.0, fp.domain_hi,
                        {{"rho_prime", rho}, {"kappa", k}, {"r_prime", r}, {"bridge", w}});
}

double find_t2(const ScalarFunction& f, double delta, double lo, double hi) {
  auto g = [&](double t) { return f.derivative(1, t) - delta; };
  const double glo = g(lo), ghi = g(hi);
  if (!(glo < 0.0 && ghi > 0.0)) {
    throw Error(ErrorCode::NoBracket, "f' does not cross " + fmt(delta) + " on [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  const double t2 = bisect(g, lo, hi);
  if (std::abs(g(t2)) > 1e-12) {
    throw Error(ErrorCode::NoBracket, "bisection did not resolve f'(t2) = delta to 1e-12");
  }
  return t2;
}

LinearExtension linear_extension(const ScalarFunction& f, double t2, double delta) {
  const Jet j = f.jet(t2);
  if (std::abs(j.d1 - delta) > 1e-10) {
    throw Error(ErrorCode::SlopeMismatch, "f'(t2) = " + fmt(j.d1) + " differs from delta = " + fmt(delta));
  }
  const double base = j.v;
  auto eval = [f, t2, delta, base](double t) {
    if (t <= t2) return f.raw(t);
    return Jet{base + delta * (t - t2), delta, 0.0, 0.0};
  };
  ScalarFunction fbar("linear_extension", eval, f.lo(), f.hi(), {{"t2", t2}, {"delta", delta}}, 1);
  return {f, fbar, t2, delta};
}

SmoothingResult c1_smooth(const LinearExtension& ext, double eps, const GuardContext* guard) {
  if (!(eps > 0.0)) throw Error(ErrorCode::BadParams, "smoothing half-width must be positive");
  const ScalarFunction& f = ext.f;
  const double A = ext.t2 - eps;
  const double delta = ext.delta;

  auto slope_at_end = [&](double B) {
    const double len = B - A;
    const double corr =
        gauss_legendre([&](double s) { return f.raw(s).d2 * smoothstep5((s - A) / len).v; }, A, B);
    return f.raw(B).d1 - corr - delta;
  };
  if (!(slope_at_end(ext.t2) < 0.0 && slope_at_end(ext.t2 + 4.0 * eps) > 0.0)) {
    throw Error(ErrorCode::GuardViolated, "no smoothing window end found; f'' must be positive near t2");
  }
  const double B = bisect(slope_at_end, ext.t2, ext.t2 + 4.0 * eps);
  const double len = B - A;

  auto inside = [f, A, len](double t) {
    const double d1corr = gauss_legendre([&](double s) { return f.raw(s).d2 * smoothstep5((s - A) / len).v; }, A, t);
    const double d0corr =
        gauss_legendre([&](double s) { return (t - s) * f.raw(s).d2 * smoothstep5((s - A) / len).v; }, A, t);
    const Jet j = f.raw(t);
    const Jet w = smoothstep5((t - A) / len);
    return Jet{j.v - d0corr, j.d1 - d1corr, j.d2 * (1.0 - w.v), j.d3 * (1.0 - w.v) - j.d2 * w.d1 / len};
  };
  const Jet end = inside(B);
  auto eval = [f, A, B, delta, end, inside](double t) {
    if (t <= A) return f.raw(t);
    if (t < B) return inside(t);
    return Jet{end.v + delta * (t - B), delta, 0.0, 0.0};
  };

  SmoothingResult res;
  res.g = ScalarFunction("c1_smooth", eval, f.lo(), f.hi(), {{"t2", ext.t2}, {"eps", eps}, {"window_hi", B}}, 3);
  res.window_lo = A;
  res.window_hi = B;
  res.offset = ext.fbar(B) - end.v;
  res.left_d2 = f.derivative(2, ext.t2);
  for (int i = 0; i <= 400; ++i) res.max_d2 = std::max(res.max_d2, res.g.derivative(2, A + len * i / 400.0));

  if (guard) {
    res.guard_checked = true;
    std::vector<double> grid;
    for (double t : uniform_grid(A, B, guard->n_points)) {
      if (t != ext.t2) grid.push_back(t);
    }
    Strictness strict;
    strict.tol = guard->tol;
    const double hi = std::max(B, ext.t2) + 1.0;
    const WarpPair before{guard->h, ext.fbar, 0.0, hi, guard->p, guard->q};
    const WarpPair after{guard->h, res.g, 0.0, hi, guard->p, guard->q};
    const auto rb = verify_on_grid(before, guard->k, grid, strict);
    const auto ra = verify_on_grid(after, guard->k, grid, strict);
    for (int j = 0; j < 4; ++j) res.guard_pass[j] = !rb.pass[j] || ra.pass[j];
    if (!std::all_of(res.guard_pass.begin(), res.guard_pass.end(), [](bool b) { return b; })) {
      throw Error(ErrorCode::GuardViolated, "smoothing broke an inequality that held for the C^1 extension");
    }
  }
  return res;
}

ScalarFunction c1_smooth(const ScalarFunction& g) {
  if (g.smoothness() >= 2) return g;
  throw Error(ErrorCode::BadParams, "a C^1 corner needs the LinearExtension overload");
}

double lambda_t2(const ScalarFunction& h, double t2) {
  const Jet j = h.jet(t2);
  if (!(j.v > 0.0)) throw Error(ErrorCode::NonPositiveWarp, "h(t2) must be positive");
  if (j.d1 <= 1e-14) throw Error(ErrorCode::DegenerateSlope, "h'(t2) is not positive");
  const double lambda = j.d2 / j.d1 - j.d1 / j.v;
  if (j.d2 < 0.0 && !(lambda < 0.0)) throw Error(ErrorCode::BadLambda, "lambda_t2 must be negative");
  return lambda;
}

double psi_prime(double t, double t2, double lambda) {
  if (t <= t2) return 1.0;
  const double t3 = t2 - 1.0 / lambda;
  if (t >= t3) return 0.0;
  return lambda * (t - t2) + 1.0;
}

PhiResult build_phi(const ScalarFunction& h, double t2, double delta) {
  const double lambda = lambda_t2(h, t2);
  if (!(lambda < 0.0)) throw Error(ErrorCode::BadLambda, "lambda_t2 must be negative");
  const double t3 = t2 - 1.0 / lambda;
  if (!(delta > 0.0) || !(2.0 * delta < t3 - t2)) {
    throw Error(ErrorCode::BadParams, "corner half-width must be positive and below (t3 - t2)/2");
  }
  const double w = 2.0 * delta;
  auto raw = [t2, t3, lambda, delta, w](double t) {
    const double s1 = (t - t2 + delta) / w, s2 = (t - t3 + delta) / w;
    const Jet a = smoothstep5(s1), b = smoothstep5(s2);
    const double i1 = w * (smoothstep5_integral(s1) - smoothstep5_integral(s2));
    const double i2 = w * w * (smoothstep5_double_integral(s1) - smoothstep5_double_integral(s2));
    return Jet{t + lambda * i2, 1.0 + lambda * i1, lambda * (a.v - b.v), lambda * (a.d1 - b.d1) / w};
  };
  const double end_value = raw(t3 + delta).v;
  auto eval = [raw, t2, t3, delta, end_value](double t) {
    if (t <= t2 - delta) return Jet{t, 1.0, 0.0, 0.0};
    if (t >= t3 + delta) return Jet{end_value, 0.0, 0.0, 0.0};
    return raw(t);
  };
  PhiResult r;
  r.phi = ScalarFunction("phi", eval, 0.0, std::max(h.hi(), t3 + 10.0),
                         {{"t2", t2}, {"t3", t3}, {"lambda", lambda}, {"delta", delta}}, 3);
  r.t2 = t2;
  r.t3 = t3;
  r.lambda = lambda;
  r.delta = delta;
  return r;
}

ScalarFunction bend_h(const ScalarFunction& h, const PhiResult& phi) {
  return compose(h, phi.phi).with_domain(h.lo(), std::min(h.hi(), phi.phi.hi()));
}

ScalarFunction concave_bend_f(const ScalarFunction& f, double t3, double delta, double bend, double hi) {
  if (bend == 0.0) return f;
  if (!(bend > 0.0) || !(delta > 0.0)) throw Error(ErrorCode::BadParams, "bend and width must be positive");
  const double tb = t3 - delta;
  const double end_slope = f.derivative(1, hi) - bend * delta * smoothstep5_integral((hi - tb) / delta);
  if (end_slope < 0.0) throw Error(ErrorCode::BendTooLarge, "bend would make f' negative before " + fmt(hi));
  auto eval = [f, tb, delta, bend](double t) {
    const Jet j = f.raw(t);
    if (t <= tb) return j;
    const double s = (t - tb) / delta;
    const Jet w = smoothstep5(s);
    return Jet{j.v - bend * delta * delta * smoothstep5_double_integral(s),
               j.d1 - bend * delta * smoothstep5_integral(s), j.d2 - bend * w.v, j.d3 - bend * w.d1 / delta};
  };
  return ScalarFunction("concave_bend", eval, f.lo(), f.hi(), {{"t_start", tb}, {"bend", bend}}, 3);
}

std::string to_string(Stage s) {
  switch (s) {
    case Stage::Base: return "base";
    case Stage::Extended: return "extended";
    case Stage::Smoothed: return "smoothed";
    case Stage::Bent: return "bent";
    case Stage::Final: return "final";
  }
  return "?";
}

WarpPair DeformationState::pair() const { return {h, f, 0.0, a, p, q}; }

PipelineResult run_pipeline(int p, int q, int k, double delta, double rho_prime, const PipelineOptions& opt) {
  if (p < 2 || q < 2) throw Error(ErrorCode::BadParams, "p and q must be at least 2");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::BadParams, "delta must lie in (0, 1)");
  if (!(rho_prime > 0.0)) throw Error(ErrorCode::BadParams, "rho' must be positive");

  PipelineResult res;
  DeformationState& st = res.state;
  st.p = p;
  st.q = q;
  st.k = k;
  st.delta = delta;
  st.rho_prime = rho_prime;
  st.r_prime = opt.h.r_prime;
  res.k_in_range = k >= std::max(p, q) + 2;
  if (!res.k_in_range) res.notes.push_back("k below max(p,q)+2");

  Strictness strict;
  strict.tol = opt.tol;
  Strictness loose = Strictness::loose_first();
  loose.tol = opt.tol;

  auto stage = [&](const char* name, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      throw Error(ErrorCode::PipelineFailed, std::string(name) + ": " + e.what());
    }
  };

  stage("base", [&] {
    st.h_base = default_h(opt.h);
    FParams fp;
    fp.rho_prime = rho_prime;
    fp.kappa = opt.kappa;
    fp.r_prime = opt.h.r_prime;
    fp.bridge = opt.f_bridge;
    st.f_base = default_f(fp);
    st.t2 = find_t2(st.f_base, delta, st.r_prime, st.f_base.hi());
    st.h = st.h_base;
    st.f = st.f_base;
    res.base_report = verify_on_grid(WarpPair{st.h_base, st.f_base, 0.0, st.t2, p, q}, k, opt.grid_points, strict);
  });

  LinearExtension ext;
  stage("extended", [&] {
    ext = linear_extension(st.f_base, st.t2, delta);
    st.fbar = ext.fbar;
    st.stage = Stage::Extended;
  });

  stage("smoothed", [&] {
    st.eps = opt.eps_fraction * (st.t2 - st.t0);
    GuardContext guard{st.h_base, p, q, k, 2001, opt.tol};
    res.smoothing = c1_smooth(ext, st.eps, &guard);
    st.f_smooth = res.smoothing.g;
    st.f = st.f_smooth;
    st.stage = Stage::Smoothed;
  });

  stage("bent", [&] {
    st.lambda_t2 = lambda_t2(st.h_base, st.t2);
    const double t3 = st.t2 - 1.0 / st.lambda_t2;
    st.delta_phi = opt.delta_phi_fraction * (t3 - st.t2);
    const PhiResult phi = build_phi(st.h_base, st.t2, st.delta_phi);
    st.t3 = phi.t3;
    st.phi = phi.phi;
    st.h = bend_h(st.h_base, phi);
    st.a = st.t3 + 2.0 * st.delta_phi;
    st.stage = Stage::Bent;
    res.pre_bend_report = verify_on_grid(st.pair(), k, opt.grid_points, loose);
  });

  stage("final", [&] {
    st.bend_width = 2.0 * st.delta_phi;
    st.bend = opt.bend_fraction * delta / (1.5 * st.bend_width);
    st.f = concave_bend_f(st.f_smooth, st.t3, st.bend_width, st.bend, st.a);
    st.stage = Stage::Final;
    res.final_report = verify_on_grid(st.pair(), k, opt.grid_points, strict);
  });

  res.verdict = res.final_report.verdict;
  return res;
}

bool SReport::passes() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.informational || c.pass; });
}

const PropertyCheck& SReport::get(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::BadParams, "no property named " + name);
}

double s8_threshold(const ScalarFunction& h, double lo, double hi) {
  const double bound = 0.5 * std::abs(h.derivative(2, kHalf));
  auto ok = [&](double t) {
    const Jet j = h.jet(t);
    return std::abs(j.d2) < bound && std::abs(j.d2) + j.d1 * j.d1 / j.v < bound;
  };
  if (!ok(hi)) return std::numeric_limits<double>::infinity();
  double prev = lo;
  const int n = 2000;
  for (int i = 0; i <= n; ++i) {
    const double t = lo + (hi - lo) * i / n;
    if (ok(t)) {
      if (i == 0) return t;
      double a = prev, b = t;
      for (int it = 0; it < 100; ++it) {
        const double m = 0.5 * (a + b);
        (ok(m) ? b : a) = m;
      }
      return b;
    }
    prev = t;
  }
  return std::numeric_limits<double>::infinity();
}

SReport check_S_properties(const DeformationState& st, const std::vector<DeformationState>& sequence,
                           int grid_points) {
  if (st.stage != Stage::Final) throw Error(ErrorCode::WrongStage, "S properties need the final stage");
  SReport rep;
  const auto grid = uniform_grid(0.0, st.a, grid_points);
  auto add = [&](std::string name, bool pass, std::string detail, bool info = false) {
    rep.checks.push_back({std::move(name), pass, info, std::move(detail)});
  };
  constexpr double tol = 1e-10;

  {
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) worst = std::max(worst, std::abs(st.f(st.r_prime * i / 1000.0) - st.rho_prime));
    add("S1", worst == 0.0, "max |f - rho'| on [0,R'] = " + fmt(worst));
  }
  {
    const double bend_lo = st.t3 - st.bend_width;
    bool ok = true;
    double min_f = std::numeric_limits<double>::infinity(), min_d1 = min_f, min_d2 = min_f, bend_min_d2 = min_f;
    for (double t : grid) {
      const Jet j = st.f.jet(t);
      min_f = std::min(min_f, j.v);
      min_d1 = std::min(min_d1, j.d1);
      if (t >= bend_lo) {
        bend_min_d2 = std::min(bend_min_d2, j.d2);
        continue;
      }
      min_d2 = std::min(min_d2, j.d2);
    }
    ok = min_f > 0.0 && min_d1 >= -tol && min_d2 >= -tol;
    add("S2", ok,
        "min f = " + fmt(min_f) + ", min f' = " + fmt(min_d1) + ", min f'' = " + fmt(min_d2) +
            " outside the bend window; f'' reaches " + fmt(bend_min_d2) + " on [" + fmt(bend_lo) + ", a] (exempt)");
  }
  add("S3", false, "|f'(a) - delta| = " + fmt(std::abs(st.f.derivative(1, st.a) - st.delta)), true);
  {
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = st.r_prime * i / 1000.0;
      worst = std::max(worst, std::abs(st.h(t) - std::sin(t)));
    }
    add("S4", worst <= 1e-15, "max |h - sin| on [0,R'] = " + fmt(worst));
  }
  {
    bool same = true;
    for (const auto& other : sequence) {
      for (int i = 0; i <= 1000; ++i) {
        const double t = kHalf * i / 1000.0;
        const Jet a = st.h.jet(t), b = other.h.jet(t);
        same = same && a.v == b.v && a.d1 == b.d1 && a.d2 == b.d2;
      }
    }
    add("S5", same && !sequence.empty(),
        "h on [0,1/2] compared bitwise across " + std::to_string(sequence.size()) + " rho' values");
  }
  {
    double min_h = std::numeric_limits<double>::infinity(), min_d1 = min_h, max_d2 = -min_h;
    for (double t : grid) {
      const Jet j = st.h.jet(t);
      min_h = std::min(min_h, j.v);
      min_d1 = std::min(min_d1, j.d1);
      max_d2 = std::max(max_d2, j.d2);
    }
    add("S6", min_h > 0.0 && min_d1 >= -tol && max_d2 <= tol,
        "min h = " + fmt(min_h) + ", min h' = " + fmt(min_d1) + ", max h'' = " + fmt(max_d2));
  }
  {
    const double lo = st.t3 + st.delta_phi;
    bool zero = lo < st.a;
    for (int i = 0; i <= 200; ++i) zero = zero && st.h.derivative(1, lo + (st.a - lo) * i / 200.0) == 0.0;
    add("S7", zero, "h' == 0 on [" + fmt(lo) + ", a]");
  }
  {
    double sup_all = 0.0, sup_half = 0.0;
    for (double t : grid) sup_all = std::max(sup_all, std::abs(st.h.derivative(2, t)));
    for (int i = 0; i <= 2000; ++i) sup_half = std::max(sup_half, std::abs(st.h.derivative(2, kHalf * i / 2000.0)));
    sup_all = std::max(sup_all, sup_half);
    rep.s8_threshold_t2 = s8_threshold(st.h_base, kHalf, st.h_base.hi());
    add("S8", sup_all <= sup_half * (1.0 + 1e-12),
        "sup|h''| on [0,a] = " + fmt(sup_all) + ", on [0,1/2] = " + fmt(sup_half) + "; t2 = " + fmt(st.t2) +
            ", threshold t2 = " + fmt(rep.s8_threshold_t2));
  }
  {
    bool decreasing = sequence.size() >= 2;
    for (const auto& s : sequence) rep.s9_ratios.push_back(s.h(s.a) / s.f(s.a));
    for (std::size_t i = 1; i < rep.s9_ratios.size(); ++i) {
      decreasing = decreasing && rep.s9_ratios[i] < rep.s9_ratios[i - 1];
    }
    std::string d = "h(a)/f(a):";
    for (double r : rep.s9_ratios) d += " " + fmt(r);
    add("S9", decreasing, d);
  }
  return rep;
}

std::vector<DeformationState> rho_sequence(int p, int q, int k, double delta, double rho_prime, int halvings,
                                           const PipelineOptions& options) {
  std::vector<DeformationState> out;
  double rho = rho_prime;
  for (int i = 0; i <= halvings; ++i, rho *= 0.5) out.push_back(run_pipeline(p, q, k, delta, rho, options).state);
  return out;
}

bool LemmaReport::passes() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.pass; });
}

ComparisonOutcome f_comparison_random_pair(std::uint64_t seed, double T, double span, int steps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double a0 = -0.5 + U(rng), a1 = U(rng), w1 = 0.5 + 2.0 * U(rng), ph1 = 6.283 * U(rng);
  const double d0 = 0.01 + 0.5 * U(rng), d1 = 0.5 * U(rng), w2 = 0.5 + 2.0 * U(rng);
  const double v0 = 0.5 + 1.5 * U(rng), s0 = -1.0 + 2.0 * U(rng);
  auto q2 = [=](double t) { return a0 + a1 * std::sin(w1 * t + ph1); };
  auto q1 = [=](double t) { return q2(t) + d0 + d1 * (1.0 + std::sin(w2 * t)); };

  auto integrate = [&](auto&& qf) {
    std::vector<std::array<double, 2>> y(steps + 1);
    y[0] = {v0, s0};
    const double h = span / steps;
    for (int i = 0; i < steps; ++i) {
      const double t = T + i * h;
      auto rhs = [&](double tt, const std::array<double, 2>& s) { return std::array<double, 2>{s[1], qf(tt) * s[0]}; };
      const auto& s = y[i];
      const auto k1 = rhs(t, s);
      const auto k2 = rhs(t + h / 2, {s[0] + h / 2 * k1[0], s[1] + h / 2 * k1[1]});
      const auto k3 = rhs(t + h / 2, {s[0] + h / 2 * k2[0], s[1] + h / 2 * k2[1]});
      const auto k4 = rhs(t + h, {s[0] + h * k3[0], s[1] + h * k3[1]});
      y[i + 1] = {s[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                  s[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
    }
    return y;
  };
  const auto y1 = integrate(q1);
  const auto y2 = integrate(q2);
  ComparisonOutcome out;
  out.admissible = true;
  out.conclusion = true;
  for (int i = 0; i <= steps; ++i) {
    if (!(y1[i][0] > 0.0 && y2[i][0] > 0.0)) {
      out.admissible = false;
      return out;
    }
    if (i > 0) out.conclusion = out.conclusion && y1[i][1] / y1[i][0] > y2[i][1] / y2[i][0];
  }
  return out;
}

LemmaReport check_support_lemmas(const DeformationState& st, int random_pairs, std::uint64_t seed, int grid_points) {
  if (st.stage == Stage::Base) throw Error(ErrorCode::WrongStage, "support lemmas need the extended stage");
  LemmaReport rep;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, false, std::move(detail)});
  };

  std::uint64_t s = seed;
  while (rep.comparison_pairs < random_pairs) {
    const auto o = f_comparison_random_pair(s++);
    if (!o.admissible) continue;
    ++rep.comparison_pairs;
    rep.comparison_counterexamples += !o.conclusion;
  }
  add("f_comparison", rep.comparison_counterexamples == 0,
      std::to_string(rep.comparison_pairs) + " pairs, " + std::to_string(rep.comparison_counterexamples) +
          " counterexamples");

  {
    bool ok = true;
    for (double t : uniform_grid(st.t2, st.t2 + 5.0, grid_points)) {
      const Jet f = st.f_base.jet(t), l = st.fbar.jet(t);
      ok = ok && f.d1 / f.v > l.d1 / l.v;
    }
    rep.f_vs_fbar = ok;
    add("f_vs_fbar", ok, "f'/f > L'/L on (t2, t2+5]");
  }
  {
    const double hi = st.t3 > 0.0 ? st.t3 : st.t2 + 5.0;
    double worst = -std::numeric_limits<double>::infinity();
    for (double t : uniform_grid(0.0, hi, grid_points)) {
      const Jet h = st.h_base.jet(t), f = st.f_base.jet(t);
      worst = std::max(worst, h.d2 * f.v + h.d1 * f.d1);
    }
    rep.hf_max_derivative = worst;
    rep.hf_decreasing = worst <= 1e-12;
    add("hf_decreasing", rep.hf_decreasing, "max (h'f)' on (0, t3] = " + fmt(worst));
  }
  if (st.stage == Stage::Bent || st.stage == Stage::Final) {
    const Jet h2 = st.h_base.jet(st.t2);
    double worst = -std::numeric_limits<double>::infinity();
    for (double t : uniform_grid(0.0, st.a, grid_points)) {
      const Jet h = st.h_base.jet(t);
      const double rhs = h.d1 * h2.v / (h.v * h2.d1);
      worst = std::max(worst, st.phi.derivative(1, t) - rhs);
    }
    rep.star_worst = worst;
    rep.star = worst <= 1e-12;
    add("star", rep.star, "max phi' - h'(t)h(t2)/(h(t)h'(t2)) = " + fmt(worst));

    const double half = std::abs(st.h_base.derivative(2, kHalf));
    const double b1 = std::abs(h2.d2), b2 = std::abs(h2.d1 * st.lambda_t2);
    double sup = 0.0;
    for (double t : uniform_grid(st.t2, st.t3, grid_points)) sup = std::max(sup, std::abs(st.h.derivative(2, t)));
    rep.phi_chain = b1 < half / 2 && b2 < half / 2 && sup <= (b1 + b2) * (1.0 + 1e-12) && b1 + b2 < half;
    add("phi_chain", rep.phi_chain,
        "|h''(t2)| = " + fmt(b1) + ", |h'(t2) lambda| = " + fmt(b2) + ", sup|h~''| on [t2,t3] = " + fmt(sup) +
            ", |h''(1/2)| = " + fmt(half));
  }
  return rep;
}

std::optional<double> find_rho0(int p, int q, int k, double delta, double lo, double hi, int steps,
                                const PipelineOptions& options) {
  auto passes = [&](double rho) {
    try {
      return run_pipeline(p, q, k, delta, rho, options).verdict;
    } catch (const Error&) {
      return false;
    }
  };
  if (passes(hi)) return hi;
  if (!passes(lo)) return std::nullopt;
  double good = lo, bad = hi;
  for (int i = 0; i < steps; ++i) {
    const double mid = std::sqrt(good * bad);
    (passes(mid) ? good : bad) = mid;
  }
  return good;
}

}  // namespace ricci
