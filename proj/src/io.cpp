#include "ricci/io.hpp"

#include "ricci/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ricci {

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::SchemaError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

int index_in(const json& v, int n, const char* what) {
  if (!v.is_number_integer()) throw Error(ErrorCode::SchemaError, std::string(what) + " index must be an integer");
  const int i = v.get<int>();
  if (i < 0 || i >= n) throw Error(ErrorCode::SchemaError, std::string(what) + " index out of range");
  return i;
}

void set_checked(double& slot, double v, const char* what) {
  if (slot != 0.0 && slot != v) throw Error(ErrorCode::SchemaError, std::string("conflicting entries in ") + what);
  slot = v;
}

CurvatureTensor tensor_from(const json& j, const char* key, int n) {
  CurvatureTensor r(n);
  if (!j.contains(key)) return r;
  const auto v = get<std::vector<double>>(j, key);
  if (v.size() != r.data().size()) {
    throw Error(ErrorCode::SchemaError, std::string(key) + " must hold dim^4 = " + std::to_string(r.data().size()) +
                                            " values");
  }
  std::copy(v.begin(), v.end(), r.data().begin());
  return r;
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(text, offset);
    throw Error(ErrorCode::SchemaError, origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                            ": malformed JSON (line " + std::to_string(line) + ", column " +
                                            std::to_string(col) + ")");
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

void require_schema_version(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "top level must be a JSON object");
  const int v = get<int>(doc, "schema_version");
  if (v != kSchemaVersion) {
    throw Error(ErrorCode::SchemaError, "unsupported schema_version " + std::to_string(v) + " (expected " +
                                            std::to_string(kSchemaVersion) + ")");
  }
}

SubmersionPointData submersion_from_json(const json& j) {
  const int p = get<int>(j, "p"), q = get<int>(j, "q");
  if (p < 1 || q < 1) throw Error(ErrorCode::SchemaError, "p and q must be positive");
  SubmersionPointData d(p, q);
  d.fibre_R = tensor_from(j, "fibre_R", p);
  d.base_R = tensor_from(j, "base_R", q);
  for (const auto& e : get_or<json>(j, "A", json::array())) {
    if (!e.is_array() || e.size() != 4) throw Error(ErrorCode::SchemaError, "A entries are [x, y, u, value]");
    const int x = index_in(e[0], q, "A"), y = index_in(e[1], q, "A"), u = index_in(e[2], p, "A");
    const double v = e[3].get<double>();
    set_checked(d.a_hh(x, y, u), v, "A");
    set_checked(d.a_hh(y, x, u), -v, "A");
  }
  for (const auto& e : get_or<json>(j, "nabla_A_vertical", json::array())) {
    if (!e.is_array() || e.size() != 5) {
      throw Error(ErrorCode::SchemaError, "nabla_A_vertical entries are [u, x, y, v, value]");
    }
    const int u = index_in(e[0], p, "nabla_A_vertical"), x = index_in(e[1], q, "nabla_A_vertical");
    const int y = index_in(e[2], q, "nabla_A_vertical"), v = index_in(e[3], p, "nabla_A_vertical");
    const double w = e[4].get<double>();
    set_checked(d.nav(u, x, y, v), w, "nabla_A_vertical");
    set_checked(d.nav(u, y, x, v), -w, "nabla_A_vertical");
    set_checked(d.nav(v, x, y, u), -w, "nabla_A_vertical");
    set_checked(d.nav(v, y, x, u), w, "nabla_A_vertical");
  }
  for (const auto& e : get_or<json>(j, "nabla_A_horizontal", json::array())) {
    if (!e.is_array() || e.size() != 5) {
      throw Error(ErrorCode::SchemaError, "nabla_A_horizontal entries are [z, x, y, u, value]");
    }
    const int z = index_in(e[0], q, "nabla_A_horizontal"), x = index_in(e[1], q, "nabla_A_horizontal");
    const int y = index_in(e[2], q, "nabla_A_horizontal"), u = index_in(e[3], p, "nabla_A_horizontal");
    const double w = e[4].get<double>();
    set_checked(d.nah(z, x, y, u), w, "nabla_A_horizontal");
    set_checked(d.nah(z, y, x, u), -w, "nabla_A_horizontal");
  }
  return d;
}

json submersion_to_json(const SubmersionPointData& d) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = d.p;
  j["q"] = d.q;
  j["fibre_R"] = d.fibre_R.data();
  j["base_R"] = d.base_R.data();
  json a = json::array(), nv = json::array(), nh = json::array();
  for (int x = 0; x < d.q; ++x)
    for (int y = x + 1; y < d.q; ++y)
      for (int u = 0; u < d.p; ++u)
        if (d.a_hh(x, y, u) != 0.0) a.push_back({x, y, u, d.a_hh(x, y, u)});
  for (int u = 0; u < d.p; ++u)
    for (int v = u + 1; v < d.p; ++v)
      for (int x = 0; x < d.q; ++x)
        for (int y = x + 1; y < d.q; ++y)
          if (d.nav(u, x, y, v) != 0.0) nv.push_back({u, x, y, v, d.nav(u, x, y, v)});
  for (int z = 0; z < d.q; ++z)
    for (int x = 0; x < d.q; ++x)
      for (int y = x + 1; y < d.q; ++y)
        for (int u = 0; u < d.p; ++u)
          if (d.nah(z, x, y, u) != 0.0) nh.push_back({z, x, y, u, d.nah(z, x, y, u)});
  j["A"] = a;
  j["nabla_A_vertical"] = nv;
  j["nabla_A_horizontal"] = nh;
  return j;
}

LieAlgebraModel lie_algebra_from_json(const json& j) {
  const int n = get<int>(j, "dim");
  auto model = LieAlgebraModel::abelian(n, get<std::vector<double>>(j, "metric"));
  for (const auto& e : get_or<json>(j, "brackets", json::array())) {
    if (!e.is_array() || e.size() != 4) throw Error(ErrorCode::SchemaError, "brackets entries are [i, j, k, c]");
    const int a = index_in(e[0], n, "brackets"), b = index_in(e[1], n, "brackets"), c = index_in(e[2], n, "brackets");
    const double v = e[3].get<double>();
    set_checked(model.c(a, b, c), v, "brackets");
    set_checked(model.c(b, a, c), -v, "brackets");
  }
  return model;
}

ScalarFunction cubic_spline(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (n < 3 || y.size() != n) throw Error(ErrorCode::SchemaError, "spline needs >= 3 matching samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t[i] > t[i - 1])) throw Error(ErrorCode::SchemaError, "spline abscissae must increase");
  }
  // Second derivatives of the natural spline (tridiagonal solve).
  std::vector<double> m(n, 0.0), c(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
    const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
    c[i] = h1 / diag;
    const double r = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    rhs[i] = (r - h0 * rhs[i - 1]) / diag;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m[i] = rhs[i] - c[i] * m[i + 1];
    if (i == 1) break;
  }
  auto eval = [t, y, m](double s) {
    auto it = std::upper_bound(t.begin(), t.end(), s);
    std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    i = std::min(i, t.size() - 2);
    const double h = t[i + 1] - t[i], a = (t[i + 1] - s) / h, b = (s - t[i]) / h;
    const double v = a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
    const double d1 = (y[i + 1] - y[i]) / h - (3 * a * a - 1) * h * m[i] / 6.0 + (3 * b * b - 1) * h * m[i + 1] / 6.0;
    const double d2 = a * m[i] + b * m[i + 1];
    const double d3 = (m[i + 1] - m[i]) / h;
    return Jet{v, d1, d2, d3};
  };
  return ScalarFunction("sampled", eval, t.front(), t.back(), {{"degree", 3}}, 2);
}

ScalarFunction function_from_json(const json& j, double lo, double hi) {
  const auto family = get<std::string>(j, "family");
  if (family == "sin") return sine_function(lo, hi);
  if (family == "cos") return cosine_function(lo, hi);
  if (family == "constant") return constant_function(get<double>(j, "value"), lo, hi);
  if (family == "linear") return linear_function(get<double>(j, "a"), get<double>(j, "b"), lo, hi);
  if (family == "exp_tail") return exp_tail(get<double>(j, "A"), get<double>(j, "B"), get<double>(j, "sigma"), lo, hi);
  if (family == "default_h") {
    HParams hp = HParams::matched(get_or<double>(j, "r_prime", 0.2));
    if (j.contains("A")) {
      hp.A = get<double>(j, "A");
      hp.B = get<double>(j, "B");
      hp.sigma = get<double>(j, "sigma");
    }
    hp.domain_hi = std::max(hi, 1.0);
    return default_h(hp).with_domain(lo, hi);
  }
  if (family == "default_f") {
    FParams fp;
    fp.rho_prime = get<double>(j, "rho_prime");
    fp.kappa = get_or<double>(j, "kappa", fp.kappa);
    fp.r_prime = get_or<double>(j, "r_prime", fp.r_prime);
    fp.bridge = get_or<double>(j, "bridge", fp.bridge);
    fp.domain_hi = std::max(hi, 1.0);
    return default_f(fp).with_domain(lo, hi);
  }
  if (family == "sampled") {
    if (get_or<int>(j, "degree", 3) != 3) throw Error(ErrorCode::SchemaError, "sampled functions support degree 3 only");
    return cubic_spline(get<std::vector<double>>(j, "t"), get<std::vector<double>>(j, "values"));
  }
  throw Error(ErrorCode::SchemaError, "unknown function family '" + family + "'");
}

WarpPair warp_pair_from_json(const json& j) {
  WarpPair w;
  w.t_lo = get<double>(j, "t_lo");
  w.t_hi = get<double>(j, "t_hi");
  if (!(w.t_lo < w.t_hi)) throw Error(ErrorCode::SchemaError, "t_lo must be below t_hi");
  w.p = get<int>(j, "p");
  w.q = get<int>(j, "q");
  if (w.p < 2 || w.q < 2) throw Error(ErrorCode::SchemaError, "p and q must be at least 2");
  w.h = function_from_json(get<json>(j, "h"), w.t_lo, w.t_hi);
  w.f = function_from_json(get<json>(j, "f"), w.t_lo, w.t_hi);
  return w;
}

PipelineOptions pipeline_options_from_json(const json& j) {
  PipelineOptions o;
  const json fam = get_or<json>(j, "family_params", json::object());
  if (fam.contains("h")) {
    const json& h = fam["h"];
    o.h = HParams::matched(get_or<double>(h, "r_prime", o.h.r_prime));
    if (h.contains("A")) {
      o.h.A = get<double>(h, "A");
      o.h.B = get<double>(h, "B");
      o.h.sigma = get<double>(h, "sigma");
    }
  }
  o.kappa = get_or<double>(fam, "kappa", o.kappa);
  o.f_bridge = get_or<double>(fam, "f_bridge", o.f_bridge);
  o.eps_fraction = get_or<double>(j, "eps_fraction", o.eps_fraction);
  o.delta_phi_fraction = get_or<double>(j, "delta_phi_fraction", o.delta_phi_fraction);
  o.bend_fraction = get_or<double>(j, "bend_fraction", o.bend_fraction);
  o.grid_points = get_or<int>(j, "grid_points", o.grid_points);
  o.tol = get_or<double>(j, "tol", o.tol);
  return o;
}

json convention_header(double tol) {
  return {{"curvature", "comp[a][b][c][d] = <R(e_a,e_b)e_c,e_d>, K(v,w) = R(v,w,v,w), R(X,Y) = nabla_[X,Y] - "
                        "[nabla_X, nabla_Y]; constant curvature k has comp = k(d_ac d_bd - d_ad d_bc)"},
          {"hopf", "S^3(1) -> S^2(1/2), base curvature 4, Berger fibre scaled by t"},
          {"ric_k", "Ric_k > 0 at X iff the k+1 smallest eigenvalues of R_X sum to more than tol"},
          {"tolerance", tol}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns, const json& header)
    : out_(path), n_columns_(columns.size()) {
  if (!out_) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  for (auto it = header.begin(); it != header.end(); ++it) {
    out_ << "# " << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_columns_) throw Error(ErrorCode::IoError, "CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace ricci
