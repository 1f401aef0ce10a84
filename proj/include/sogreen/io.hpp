#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sogreen/green.hpp"
#include "sogreen/model.hpp"
#include "sogreen/renorm.hpp"
#include "sogreen/spectrum.hpp"
#include "sogreen/verify.hpp"

// Text formats shared by the CLI and the tests.
namespace sogreen::io {

using nlohmann::json;

// Shortest decimal string that reads back to the same double.
std::string format_double(double v);
// "a+bi" / "a-bi" with shortest round-trip components.
std::string format_complex(Complex z);

// Grammar (spaces ignored anywhere):
//   complex := real | imag | real sign imag
//   imag    := [sign] [unsigned-real] "i"
// e.g. "-2+0.5i", " -2 + 0.5 i", "3", "i", "-1e-3i".
Complex parse_complex(std::string_view text);
// "x,y"
Point2 parse_point(std::string_view text);

struct ResolvedParams {
  ModelParams params;
  bool from_physical = false;
  Conversion conversion{};  // valid when from_physical
};

// {"variant","kappa","b","gamma"} or {"variant", "physical": {...}} (units
// either inside "physical" or at the top level).
ResolvedParams params_from_json(const json& j);

json to_json(const ModelParams& p);
json to_json(const ResolvedParams& p);
json to_json(const SpinKernel& k);
json to_json(const RenormValue& v);
json to_json(const ResidualReport& r);
json to_json(const LevelTable& t);
json complex_json(Complex z);

// Columns energy,n,s,branch; a merged level gives one row per index.
std::string level_table_csv(const LevelTable& t, const std::vector<std::string>& meta);

} // namespace sogreen::io
