#include "ricci/experiment.hpp"

#include "ricci/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ricci {

namespace {

namespace fs = std::filesystem;

template <class T>
T opt(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("field '") + key + "': " + e.what());
  }
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw Error(ErrorCode::SchemaError, std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

double require_double(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorCode::SchemaError, std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

json header_for(const ExperimentConfig& c) {
  json h = convention_header(c.tol);
  h["mode"] = to_string(c.mode);
  h["seed"] = c.seed;
  h["schema_version"] = kSchemaVersion;
  return h;
}

json to_json(const Quadruple& q) { return json::array({q[0], q[1], q[2], q[3]}); }

SubmersionPointData load_submersion(const ExperimentConfig& c) {
  const json& b = c.body;
  if (b.contains("submersion")) return submersion_from_json(b["submersion"]);
  if (b.contains("submersion_path")) return submersion_from_json(load_json(c.base_dir / b["submersion_path"].get<std::string>()));
  if (b.contains("synthetic")) {
    const json& s = b["synthetic"];
    SyntheticParams sp;
    sp.p = require_int(s, "p");
    sp.q = require_int(s, "q");
    sp.fibre_kappa = opt(s, "fibre_kappa", sp.fibre_kappa);
    sp.base_kappa = opt(s, "base_kappa", sp.base_kappa);
    sp.perturbation = opt(s, "perturbation", sp.perturbation);
    sp.a_magnitude = opt(s, "a_magnitude", sp.a_magnitude);
    sp.nabla_magnitude = opt(s, "nabla_magnitude", sp.nabla_magnitude);
    sp.seed = opt<std::uint64_t>(s, "seed", c.seed);
    return synthetic_data(sp);
  }
  if (opt<std::string>(b, "model", "") == "berger") return berger_submersion_data();
  throw Error(ErrorCode::SchemaError, "sweep needs one of 'submersion', 'submersion_path', 'synthetic' or model 'berger'");
}

RunOutcome run_sweep(const ExperimentConfig& c) {
  const json& b = c.body;
  const auto data = load_submersion(c);
  const int k = require_int(b, "k");
  SweepConfig sc = SweepConfig::defaults();
  sc.t_grid = opt(b, "t_grid", sc.t_grid);
  sc.lambda_grid = opt(b, "lambda_grid", sc.lambda_grid);
  sc.n_u_random = opt(b, "n_u_random", sc.n_u_random);
  sc.n_x_random = opt(b, "n_x_random", sc.n_x_random);
  sc.seed = c.seed;
  sc.tol = opt(b, "margin_tol", sc.tol);
  const auto sweep = tau_scan(data, k, sc);

  CsvWriter csv(c.out_dir / "sweep.csv", {"t", "lambda", "sample_id", "margin", "pass"}, header_for(c));
  for (const auto& r : sweep.rows) {
    csv.row({format_double(r.t), format_double(r.lambda), std::to_string(r.sample_id), format_double(r.margin),
             r.pass ? "1" : "0"});
  }
  RunOutcome out;
  out.verdict = sweep.tau_estimate.has_value();
  json& s = out.summary;
  s["p"] = data.p;
  s["q"] = data.q;
  s["k"] = k;
  s["m"] = sweep.m;
  s["rows"] = sweep.rows.size();
  s["t_grid"] = sweep.t_grid;
  s["t_min_margin"] = sweep.t_min_margin;
  s["tau_estimate"] = sweep.tau_estimate ? json(*sweep.tau_estimate) : json(nullptr);
  s["verdict_kind"] = "sampled";
  return out;
}

WarpPair load_warp_pair(const json& b) {
  if (!b.contains("warp_pair")) throw Error(ErrorCode::SchemaError, "missing field 'warp_pair'");
  const json& w = b["warp_pair"];
  if (w.is_string()) {
    if (w.get<std::string>() != "round_witness") throw Error(ErrorCode::SchemaError, "unknown warp_pair preset");
    WarpPair r = round_witness(require_int(b, "p"), require_int(b, "q"));
    r.t_lo = opt(b, "t_lo", r.t_lo);
    r.t_hi = opt(b, "t_hi", r.t_hi);
    if (!(0.0 <= r.t_lo && r.t_lo < r.t_hi && r.t_hi <= 1.57079632679489661923)) {
      throw Error(ErrorCode::SchemaError, "round_witness interval must lie in [0, pi/2]");
    }
    return r;
  }
  return warp_pair_from_json(w);
}

RunOutcome run_verify_dwp(const ExperimentConfig& c) {
  const json& b = c.body;
  const WarpPair w = load_warp_pair(b);
  const int k = require_int(b, "k");
  const int n = opt(b, "grid_points", 1000);
  if (n < 2) throw Error(ErrorCode::SchemaError, "grid_points must be at least 2");
  Strictness st;
  st.tol = c.tol;
  const auto strict = opt<std::vector<bool>>(b, "strict", {true, true, true, true});
  if (strict.size() != 4) throw Error(ErrorCode::SchemaError, "'strict' holds four booleans");
  std::copy(strict.begin(), strict.end(), st.strict.begin());

  const auto grid = uniform_grid(w.t_lo, w.t_hi, n);
  const auto report = verify_on_grid(w, k, grid, st);
  const auto cross = cross_check(w, k, grid, c.tol);

  CsvWriter csv(c.out_dir / "inequalities.csv", {"t", "lhs1", "lhs2", "lhs3", "lhs4"}, header_for(c));
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    csv.row({report.grid[i], report.lhs[0][i], report.lhs[1][i], report.lhs[2][i], report.lhs[3][i]});
  }
  RunOutcome out;
  out.verdict = report.verdict && cross.consistent;
  json& s = out.summary;
  s["p"] = w.p;
  s["q"] = w.q;
  s["k"] = k;
  s["grid_points"] = n;
  s["minima"] = to_json(report.minima);
  s["argmin"] = json::array({report.argmin[0], report.argmin[1], report.argmin[2], report.argmin[3]});
  s["pass"] = json::array({report.pass[0], report.pass[1], report.pass[2], report.pass[3]});
  s["strict"] = strict;
  s["inequalities_verdict"] = report.verdict;
  s["cross_check"] = {{"consistent", cross.consistent},
                      {"counterexamples", cross.counterexamples},
                      {"inequality_true", cross.inequality_true},
                      {"spectral_true", cross.spectral_true}};
  s["verdict_kind"] = "sampled";
  return out;
}

void write_stage(const fs::path& path, const ScalarFunction& h, const ScalarFunction& f, double lo, double hi, int n,
                 const json& header) {
  CsvWriter csv(path, {"t", "h", "h1", "h2", "f", "f1", "f2"}, header);
  for (double t : uniform_grid(lo, hi, n)) {
    const Jet a = h.jet(t), b = f.jet(t);
    csv.row({t, a.v, a.d1, a.d2, b.v, b.d1, b.d2});
  }
}

json report_json(const InequalityReport& r) {
  return {{"minima", to_json(r.minima)},
          {"argmin", json::array({r.argmin[0], r.argmin[1], r.argmin[2], r.argmin[3]})},
          {"pass", json::array({r.pass[0], r.pass[1], r.pass[2], r.pass[3]})},
          {"verdict", r.verdict}};
}

RunOutcome run_build_functions(const ExperimentConfig& c) {
  const json& b = c.body;
  const int p = require_int(b, "p"), q = require_int(b, "q"), k = require_int(b, "k");
  const double delta = require_double(b, "delta"), rho = require_double(b, "rho_prime");
  PipelineOptions o = pipeline_options_from_json(b);
  o.tol = c.tol;
  const int halvings = opt(b, "halvings", 5);
  const int csv_points = opt(b, "csv_points", 2001);

  const auto result = run_pipeline(p, q, k, delta, rho, o);
  const auto seq = rho_sequence(p, q, k, delta, rho, halvings, o);
  const auto sreport = check_S_properties(result.state, seq, o.grid_points);
  const auto lemmas = check_support_lemmas(result.state, opt(b, "comparison_pairs", 200), c.seed, o.grid_points);

  const auto& st = result.state;
  const json header = header_for(c);
  const double lo = st.pair().t_lo, hi = st.pair().t_hi;
  write_stage(c.out_dir / "stage_base.csv", st.h_base, st.f_base, lo, hi, csv_points, header);
  write_stage(c.out_dir / "stage_extended.csv", st.h_base, st.fbar, lo, hi, csv_points, header);
  write_stage(c.out_dir / "stage_smoothed.csv", st.h_base, st.f_smooth, lo, hi, csv_points, header);
  write_stage(c.out_dir / "stage_final.csv", st.h, st.f, lo, hi, csv_points, header);

  CsvWriter props(c.out_dir / "s_properties.csv", {"name", "pass", "informational", "detail"}, header);
  auto quote = [](std::string s) {
    std::replace(s.begin(), s.end(), '"', '\'');
    return "\"" + s + "\"";
  };
  for (const auto& pc : sreport.checks) {
    props.row({pc.name, pc.pass ? "1" : "0", pc.informational ? "1" : "0", quote(pc.detail)});
  }
  for (const auto& pc : lemmas.checks) {
    props.row({pc.name, pc.pass ? "1" : "0", pc.informational ? "1" : "0", quote(pc.detail)});
  }

  RunOutcome out;
  out.verdict = result.verdict && sreport.passes() && lemmas.passes();
  json& s = out.summary;
  s["p"] = p;
  s["q"] = q;
  s["k"] = k;
  s["delta"] = delta;
  s["rho_prime"] = rho;
  s["t2"] = st.t2;
  s["t3"] = st.t3;
  s["a"] = st.a;
  s["lambda_t2"] = st.lambda_t2;
  s["eps"] = st.eps;
  s["delta_phi"] = st.delta_phi;
  s["bend"] = st.bend;
  s["k_in_range"] = result.k_in_range;
  s["base_report"] = report_json(result.base_report);
  s["pre_bend_report"] = report_json(result.pre_bend_report);
  s["final_report"] = report_json(result.final_report);
  s["pipeline_verdict"] = result.verdict;
  s["s_properties_pass"] = sreport.passes();
  s["s8_threshold_t2"] = sreport.s8_threshold_t2;
  s["s9_ratios"] = sreport.s9_ratios;
  s["lemmas_pass"] = lemmas.passes();
  s["notes"] = result.notes;
  if (b.contains("passthrough")) s["passthrough"] = b["passthrough"];
  s["verdict_kind"] = "sampled";
  return out;
}

RunOutcome run_cross_validate(const ExperimentConfig& c) {
  const json& b = c.body;
  const auto t_list = opt<std::vector<double>>(b, "t_list", {0.1, 0.25, 0.5, 1.0, 1.3});
  const double match_tol = opt(b, "match_tol", 1e-10);
  const auto data = berger_submersion_data();

  CsvWriter csv(c.out_dir / "oracle.csv", {"t", "a", "b", "c", "d", "assembled", "oracle", "abs_diff"}, header_for(c));
  RunOutcome out;
  out.verdict = true;
  json rows = json::array();
  for (double t : t_list) {
    if (!(t > 0.0)) throw Error(ErrorCode::SchemaError, "t_list entries must be positive");
    const auto model = LieAlgebraModel::berger(t);
    const auto gamma = koszul_connection(model);
    const auto oracle = curvature_from_connection(model, gamma);
    const auto assembled = assemble_gt_unit(data, t);
    for (int i0 = 0; i0 < 3; ++i0)
      for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = 0; i2 < 3; ++i2)
          for (int i3 = 0; i3 < 3; ++i3) {
            const double x = assembled(i0, i1, i2, i3), y = oracle(i0, i1, i2, i3);
            csv.row({t, double(i0), double(i1), double(i2), double(i3), x, y, std::abs(x - y)});
          }
    const double diff = assembled.max_abs_diff(oracle);
    const double k_xy = oracle(1, 2, 1, 2), k_xu = oracle(0, 1, 0, 1);
    const bool ok = diff <= match_tol && std::abs(k_xy - (4.0 - 3.0 * t)) <= match_tol &&
                    std::abs(k_xu - t) <= match_tol;
    out.verdict = out.verdict && ok;
    rows.push_back({{"t", t}, {"max_abs_diff", diff}, {"K_XY", k_xy}, {"K_XU", k_xu}, {"pass", ok}});
  }
  out.summary["berger"] = rows;
  out.summary["match_tol"] = match_tol;

  if (b.contains("lie_algebra")) {
    const auto model = lie_algebra_from_json(b["lie_algebra"]);
    const auto gamma = koszul_connection(model);
    const auto audit = audit_connection(model, gamma);
    const auto r = curvature_from_connection(model, gamma);
    const auto sym = validate_symmetries(r, c.tol);
    const bool ok = audit.metric_compatibility <= 1e-12 && audit.torsion <= 1e-12 && sym.passes;
    out.verdict = out.verdict && ok;
    out.summary["lie_algebra"] = {{"dim", model.dim},
                                  {"metric_compatibility", audit.metric_compatibility},
                                  {"torsion", audit.torsion},
                                  {"symmetry_violation", sym.max_violation()},
                                  {"curvature", r.data()},
                                  {"pass", ok}};
  }
  return out;
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "sweep-canonical-variation") return Mode::SweepCanonicalVariation;
  if (name == "verify-dwp") return Mode::VerifyDwp;
  if (name == "build-functions") return Mode::BuildFunctions;
  if (name == "cross-validate-oracle") return Mode::CrossValidateOracle;
  throw Error(ErrorCode::SchemaError, "unknown mode '" + name + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::SweepCanonicalVariation: return "sweep-canonical-variation";
    case Mode::VerifyDwp: return "verify-dwp";
    case Mode::BuildFunctions: return "build-functions";
    case Mode::CrossValidateOracle: return "cross-validate-oracle";
  }
  return "unknown";
}

ExperimentConfig config_from_json(const json& doc, const fs::path& base_dir) {
  require_schema_version(doc);
  ExperimentConfig c;
  if (!doc.contains("mode") || !doc["mode"].is_string()) throw Error(ErrorCode::SchemaError, "missing field 'mode'");
  c.mode = parse_mode(doc["mode"].get<std::string>());
  c.body = doc;
  c.base_dir = base_dir;
  c.seed = opt<std::uint64_t>(doc, "seed", c.seed);
  c.tol = opt(doc, "tol", c.tol);
  if (!(c.tol >= 0.0)) throw Error(ErrorCode::SchemaError, "tol must be non-negative");
  if (doc.contains("out")) c.out_dir = base_dir / doc["out"].get<std::string>();
  return c;
}

RunOutcome run_experiment(const ExperimentConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + config.out_dir.string() + ": " + ec.message());

  RunOutcome out;
  switch (config.mode) {
    case Mode::SweepCanonicalVariation: out = run_sweep(config); break;
    case Mode::VerifyDwp: out = run_verify_dwp(config); break;
    case Mode::BuildFunctions: out = run_build_functions(config); break;
    case Mode::CrossValidateOracle: out = run_cross_validate(config); break;
  }
  json summary = {{"schema_version", kSchemaVersion},
                  {"mode", to_string(config.mode)},
                  {"seed", config.seed},
                  {"conventions", convention_header(config.tol)},
                  {"verdict", out.verdict}};
  summary.update(out.summary);
  out.summary = summary;
  write_json(config.out_dir / "summary.json", out.summary);
  return out;
}

std::string describe_outputs() {
  return "Outputs (CSV files start with '# key: value' convention lines):\n"
         "  sweep-canonical-variation  sweep.csv: t,lambda,sample_id,margin,pass\n"
         "  verify-dwp                 inequalities.csv: t,lhs1,lhs2,lhs3,lhs4\n"
         "  build-functions            stage_{base,extended,smoothed,final}.csv: t,h,h1,h2,f,f1,f2\n"
         "                             s_properties.csv: name,pass,informational,detail\n"
         "  cross-validate-oracle      oracle.csv: t,a,b,c,d,assembled,oracle,abs_diff\n"
         "Every mode writes summary.json with the verdict.\n"
         "Exit status: 0 all verdicts pass, 2 verdict failure, 1 input error.\n";
}

}  // namespace ricci
