#include "sogreen/io.hpp"

#include <array>
#include <cmath>
#include <charconv>
#include <sstream>

namespace sogreen::io {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_complex(Complex z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im = "+" + im;
  return format_double(z.real()) + im + "i";
}

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidParameter, "cannot parse number in '" + std::string(whole) + "'");
  if (!std::isfinite(v))
    throw Error(ErrorKind::InvalidParameter, "non-finite number in '" + std::string(whole) + "'");
  return v;
}

double parse_imag_coeff(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key))
    throw Error(ErrorKind::InvalidParameter, std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw Error(ErrorKind::InvalidParameter, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

} // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::InvalidParameter, "empty complex number");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  s.pop_back();
  // split at the last sign that is not a leading sign or part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_imag_coeff(s, text)};
  return {parse_real(std::string_view(s).substr(0, split), text),
          parse_imag_coeff(std::string_view(s).substr(split), text)};
}

Point2 parse_point(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  const auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw Error(ErrorKind::InvalidParameter, "point must be 'x,y': '" + std::string(text) + "'");
  return {parse_real(std::string_view(s).substr(0, comma), text),
          parse_real(std::string_view(s).substr(comma + 1), text)};
}

ResolvedParams params_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidParameter, "parameter file must hold a JSON object");
  const json& vj = require(j, "variant");
  if (!vj.is_string()) throw Error(ErrorKind::InvalidParameter, "'variant' must be a string");
  const Variant variant = parse_variant(vj.get<std::string>());

  ResolvedParams out;
  if (j.contains("physical")) {
    const json& ph = j.at("physical");
    if (!ph.is_object()) throw Error(ErrorKind::InvalidParameter, "'physical' must be an object");
    std::string units = "SI";
    if (ph.contains("units")) units = ph.at("units").get<std::string>();
    else if (j.contains("units")) units = j.at("units").get<std::string>();
    PhysicalParams pp = PhysicalParams::with_constants(parse_unit_system(units));
    pp.effective_mass = number(ph, "effective_mass");
    pp.rashba_alpha = ph.contains("rashba_alpha") ? number(ph, "rashba_alpha") : 0.0;
    pp.dresselhaus_alpha = ph.contains("dresselhaus_alpha") ? number(ph, "dresselhaus_alpha") : 0.0;
    pp.g_factor = ph.contains("g_factor") ? number(ph, "g_factor") : 0.0;
    pp.field = ph.contains("field") ? number(ph, "field") : 0.0;
    if (ph.contains("electron_mass")) pp.electron_mass = number(ph, "electron_mass");
    if (ph.contains("hbar")) pp.hbar = number(ph, "hbar");
    if (ph.contains("charge")) pp.charge = number(ph, "charge");
    if (ph.contains("light_speed")) pp.light_speed = number(ph, "light_speed");
    out.conversion = dimensionless_from_physical(pp, variant);
    out.params = out.conversion.params;
    out.from_physical = true;
    return out;
  }
  out.params.variant = variant;
  out.params.kappa = number(j, "kappa");
  out.params.b = number(j, "b");
  out.params.gamma = number(j, "gamma");
  out.params.validate();
  return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ModelParams& p) {
  json j = {{"variant", std::string(to_string(p.variant))},
            {"kappa", p.kappa},
            {"b", p.b},
            {"gamma", p.gamma}};
  if (p.b == 0.0 || p.kappa != 0.0) j["beta"] = beta(p);
  return j;
}

json to_json(const ResolvedParams& p) {
  json j = to_json(p.params);
  if (p.from_physical) {
    j["energy_scale"] = p.conversion.energy_scale;
    j["flux_quantum"] = p.conversion.flux_quantum;
  }
  return j;
}

json to_json(const SpinKernel& k) {
  return {{"g11", complex_json(k.g11)},
          {"g12", complex_json(k.g12)},
          {"g21", complex_json(k.g21)},
          {"g22", complex_json(k.g22)}};
}

json to_json(const RenormValue& v) {
  return {{"diag_up", complex_json(v.diag_up)}, {"diag_down", complex_json(v.diag_down)}};
}

json to_json(const ResidualReport& r) {
  return {{"residual_max", r.residual_max},
          {"tolerance", r.tolerance},
          {"passed", r.passed},
          {"context", r.context}};
}

json to_json(const LevelTable& t) {
  const auto levels = [](const std::vector<Level>& ls) {
    json arr = json::array();
    for (const auto& l : ls) {
      json idx = json::array();
      for (const auto& i : l.indices) idx.push_back({{"n", i.n}, {"s", i.s}, {"branch", i.branch}});
      json e = {{"energy", l.energy}, {"indices", idx}};
      if (!l.note.empty()) e["note"] = l.note;
      arr.push_back(e);
    }
    return arr;
  };
  return {{"levels", levels(t.entries)}, {"excluded", levels(t.excluded)}};
}

std::string level_table_csv(const LevelTable& t, const std::vector<std::string>& meta) {
  std::ostringstream out;
  for (const auto& m : meta) out << "# " << m << "\n";
  out << "energy,n,s,branch\n";
  for (const auto& l : t.entries)
    for (const auto& i : l.indices)
      out << format_double(l.energy) << "," << i.n << "," << i.s << "," << i.branch << "\n";
  return out.str();
}

} // namespace sogreen::io
