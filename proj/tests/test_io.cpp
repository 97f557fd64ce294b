#include "ricci/error.hpp"
#include "ricci/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ricci;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ricci_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}", "cfg.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    CHECK(std::string(e.what()).find("cfg.json:3:8") != std::string::npos);
  }
  CHECK_THROWS_AS(load_json(scratch("missing.json").string() + ".nope"), Error);
}

TEST_CASE("schema version is required") {
  CHECK_NOTHROW(require_schema_version(json{{"schema_version", 1}}));
  CHECK_THROWS_AS(require_schema_version(json{{"schema_version", 2}}), Error);
  CHECK_THROWS_AS(require_schema_version(json::object()), Error);
  CHECK_THROWS_AS(require_schema_version(json::array()), Error);
}

TEST_CASE("submersion entries are completed by antisymmetry") {
  const json j = {{"p", 2},
                  {"q", 2},
                  {"A", {{0, 1, 1, 0.5}}},
                  {"nabla_A_vertical", {{0, 0, 1, 1, 0.25}}},
                  {"nabla_A_horizontal", {{1, 0, 1, 0, -0.75}}}};
  const auto d = submersion_from_json(j);
  CHECK(d.a_hh(0, 1, 1) == 0.5);
  CHECK(d.a_hh(1, 0, 1) == -0.5);
  CHECK(d.nav(0, 0, 1, 1) == 0.25);
  CHECK(d.nav(0, 1, 0, 1) == -0.25);
  CHECK(d.nav(1, 0, 1, 0) == -0.25);
  CHECK(d.nav(1, 1, 0, 0) == 0.25);
  CHECK(d.nah(1, 0, 1, 0) == -0.75);
  CHECK(d.nah(1, 1, 0, 0) == 0.75);
}

TEST_CASE("submersion round trip") {
  SyntheticParams sp;
  sp.p = 2;
  sp.q = 3;
  const auto d = synthetic_data(sp);
  const auto back = submersion_from_json(submersion_to_json(d));
  CHECK(back.fibre_R.max_abs_diff(d.fibre_R) == 0.0);
  CHECK(back.base_R.max_abs_diff(d.base_R) == 0.0);
  CHECK(back.A_hh == d.A_hh);
  CHECK(back.nablaA_v == d.nablaA_v);
  CHECK(back.nablaA_h == d.nablaA_h);
}

TEST_CASE("bad submersion documents") {
  CHECK_THROWS_AS(submersion_from_json(json{{"p", 2}}), Error);
  CHECK_THROWS_AS(submersion_from_json(json{{"p", 1}, {"q", 2}, {"base_R", {1.0, 2.0}}}), Error);
  CHECK_THROWS_AS(submersion_from_json(json{{"p", 1}, {"q", 2}, {"A", {{0, 5, 0, 1.0}}}}), Error);
  CHECK_THROWS_AS(submersion_from_json(json{{"p", 1}, {"q", 2}, {"A", {{0, 1, 0, 1.0}, {1, 0, 0, 1.0}}}}), Error);
}

TEST_CASE("Lie algebra section") {
  const json j = {{"dim", 3}, {"metric", {1.0, 2.0, 3.0}}, {"brackets", {{0, 1, 2, 2.0}, {1, 2, 0, 2.0}, {2, 0, 1, 2.0}}}};
  const auto m = lie_algebra_from_json(j);
  const auto ref = LieAlgebraModel::su2({1.0, 2.0, 3.0});
  CHECK(m.structure == ref.structure);
  CHECK(m.metric == ref.metric);
}

TEST_CASE("function families from JSON") {
  CHECK(function_from_json(json{{"family", "sin"}}, 0.0, 1.0)(0.3) == std::sin(0.3));
  CHECK(function_from_json(json{{"family", "linear"}, {"a", 1.0}, {"b", 2.0}}, 0.0, 1.0)(0.5) == 2.0);
  CHECK(function_from_json(json{{"family", "constant"}, {"value", 0.2}}, 0.0, 1.0)(0.5) == 0.2);
  CHECK(function_from_json(json{{"family", "default_h"}}, 0.0, 10.0)(0.1) == doctest::Approx(std::sin(0.1)));
  CHECK(function_from_json(json{{"family", "default_f"}, {"rho_prime", 0.05}}, 0.0, 10.0)(0.1) == 0.05);
  CHECK_THROWS_AS(function_from_json(json{{"family", "bogus"}}, 0.0, 1.0), Error);
  CHECK_THROWS_AS(function_from_json(json{{"family", "sampled"}, {"degree", 1}, {"t", {0, 1, 2}}, {"values", {0, 1, 2}}}, 0.0, 2.0),
                  Error);
}

TEST_CASE("natural cubic spline") {
  std::vector<double> t, y;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(0.1 * i);
    y.push_back(3.0 - 0.5 * t.back());
  }
  const auto lin = cubic_spline(t, y);
  CHECK(lin(0.77) == doctest::Approx(3.0 - 0.385).epsilon(1e-14));
  CHECK(lin.derivative(1, 1.33) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::abs(lin.derivative(2, 1.33)) < 1e-12);

  y.clear();
  for (double s : t) y.push_back(std::sin(s));
  const auto s = cubic_spline(t, y);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(s(t[i]) == doctest::Approx(y[i]).epsilon(1e-14));
  CHECK(s(1.05) == doctest::Approx(std::sin(1.05)).epsilon(1e-5));
  CHECK(s.derivative(1, 1.05) == doctest::Approx(std::cos(1.05)).epsilon(1e-3));
  CHECK_THROWS_AS(cubic_spline({0.0, 1.0}, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(cubic_spline({0.0, 2.0, 1.0}, {0.0, 1.0, 2.0}), Error);
}

TEST_CASE("warp pair from JSON") {
  const json j = {{"p", 2}, {"q", 3}, {"t_lo", 0.1}, {"t_hi", 1.4}, {"h", {{"family", "sin"}}}, {"f", {{"family", "cos"}}}};
  const auto w = warp_pair_from_json(j);
  CHECK(w.p == 2);
  CHECK(w.q == 3);
  CHECK(w.f(1.0) == std::cos(1.0));
  json bad = j;
  bad["p"] = 1;
  CHECK_THROWS_AS(warp_pair_from_json(bad), Error);
}

TEST_CASE("pipeline options override defaults") {
  const auto o = pipeline_options_from_json(json{{"grid_points", 500}, {"family_params", {{"kappa", 0.4}}}});
  CHECK(o.grid_points == 500);
  CHECK(o.kappa == 0.4);
  CHECK(o.eps_fraction == PipelineOptions{}.eps_fraction);
}

TEST_CASE("CSV output carries the convention header and full precision") {
  const auto path = scratch("out.csv");
  {
    CsvWriter w(path, {"x", "y"}, convention_header(1e-9));
    w.row({0.1, 1.0 / 3.0});
    CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), Error);
  }
  const std::string text = read_file(path);
  CHECK(text.rfind("# ", 0) == 0);
  CHECK(text.find("base curvature 4") != std::string::npos);
  CHECK(text.find("x,y\n0.10000000000000001,0.33333333333333331\n") != std::string::npos);
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}
