#pragma once

// JSON ingestion and CSV/JSON report writing.

#include "ricci/deform.hpp"
#include "ricci/dwp.hpp"
#include "ricci/oracle.hpp"
#include "ricci/submersion.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace ricci {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Parses JSON text; syntax errors become SchemaError with line and column.
json parse_json(const std::string& text, const std::string& origin = "<string>");
json load_json(const std::filesystem::path& path);

/// Rejects documents whose schema_version is missing or unsupported.
void require_schema_version(const json& doc);

/// {"p", "q", "fibre_R": [p^4], "base_R": [q^4], "A": [[x,y,u,v]...],
///  "nabla_A_vertical": [[u,x,y,v,value]...], "nabla_A_horizontal": [[z,x,y,u,value]...]}
/// Antisymmetric partners of listed entries are filled in.
SubmersionPointData submersion_from_json(const json& j);
json submersion_to_json(const SubmersionPointData& d);

/// {"dim", "metric": [...], "brackets": [[i,j,k,c]...]}, [e_j,e_i] filled in.
LieAlgebraModel lie_algebra_from_json(const json& j);

/// {"family": name, ...parameters} or {"family": "sampled", "t": [...], "values": [...], "degree": 3}.
ScalarFunction function_from_json(const json& j, double lo, double hi);
WarpPair warp_pair_from_json(const json& j);

/// Overrides defaults with the keys present in j.
PipelineOptions pipeline_options_from_json(const json& j);

/// Natural cubic spline through (t_i, y_i).
ScalarFunction cubic_spline(const std::vector<double>& t, const std::vector<double>& y);

/// Conventions embedded in every report.
json convention_header(double tol);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns, const json& header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t n_columns_;
};

std::string format_double(double v);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace ricci
