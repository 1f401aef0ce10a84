// sogreen: spectra, Green kernels, renormalized values and verification runs
// for the Rashba / Dresselhaus Hamiltonians. See README.md for the flag list.
//
// exit status: 0 ok, 1 usage / invalid input, 2 domain error (pole, cut,
// spectrum, wrong case), 3 accuracy error or failed verification.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sogreen/io.hpp"
#include "sogreen/renorm.hpp"
#include "sogreen/verify.hpp"

using namespace sogreen;
using io::json;

namespace {

constexpr const char* kConventions =
    "sqrt and log: principal branch, cut (-inf,0]; eta on its cut taken as i*sqrt(|w|); "
    "gauge a=(-b*y/2, b*x/2), Landau phase exp(-i*b*(x*y'-y*x')/2); "
    "complex values as [re, im]";

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string params_file;
  std::string variant = "R";
  double kappa = 0.0, b = 0.0, gamma = 0.0;
  std::string out = "-";
  std::string format;

  // spectrum
  int n_max = 10;
  std::string method = "closed";
  int basis = 200;

  // green
  std::string z = "-1+0.5i";
  std::string r0 = "0,0";
  std::string r = "1,0";
  std::string rx, ry;
  std::string form = "operator";

  // green-ren
  std::vector<std::string> zs;
  std::string zline;

  // verify
  std::string suite = "all";
  int trials = 100;
  unsigned seed = 12345;
  double tol = -1.0;
};

unsigned thread_count() {
  if (const char* env = std::getenv("SOG_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return unsigned(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates f(i) for i < n on a small pool; results are stored by index so
// the output order never depends on scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned k = std::min<unsigned>(thread_count(), unsigned(std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < k; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);  // first failing index wins
  return out;
}

std::vector<double> parse_range(const std::string& text) {
  // "a:b:n"
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw Usage("range must be 'start:stop:count': " + text);
  const double a = io::parse_complex(parts[0]).real();
  const double b = io::parse_complex(parts[1]).real();
  const int n = std::stoi(parts[2]);
  if (n < 1) throw Usage("range count must be >= 1");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

io::ResolvedParams resolve_params(const Options& o) {
  if (!o.params_file.empty()) {
    std::ifstream in(o.params_file);
    if (!in) throw Usage("cannot read parameter file " + o.params_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Usage(std::string("bad parameter file: ") + e.what());
    }
    return io::params_from_json(j);
  }
  io::ResolvedParams p;
  p.params = {parse_variant(o.variant), o.kappa, o.b, o.gamma};
  p.params.validate();
  return p;
}

std::string output_format(const Options& o) {
  if (!o.format.empty()) return o.format;
  if (o.out.size() > 4 && o.out.substr(o.out.size() - 4) == ".csv") return "csv";
  return "json";
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Usage("cannot write " + path);
  f << text;
}

void write_outputs(const std::string& command, const Options& o, const json& resolved,
                   const std::string& body, const json& job) {
  write_text(o.out, body);
  json manifest = {{"command", command},
                   {"params", resolved},
                   {"job", job},
                   {"format", output_format(o)},
                   {"conventions", kConventions}};
  const std::string mpath = o.out == "-" ? "sogreen.manifest.json" : o.out + ".manifest.json";
  write_text(mpath, manifest.dump(2) + "\n");
}

std::vector<std::string> meta_lines(const std::string& command, const json& params) {
  return {"sogreen " + command, "params " + params.dump(), std::string("conventions ") + kConventions};
}

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  for (double v : values) {
    if (!line.empty()) line += ",";
    line += io::format_double(v);
  }
  return line + "\n";
}

// ------------------------------------------------------------------ commands

void run_spectrum(const Options& o) {
  const auto rp = resolve_params(o);
  const auto& p = rp.params;
  const json params = io::to_json(rp);
  const json job = {{"n_max", o.n_max}, {"method", o.method}, {"basis", o.basis}};
  const std::string fmt = output_format(o);

  if (p.b == 0.0) {
    const auto fs = free_spectrum(p);
    std::string body;
    if (fmt == "csv") {
      std::ostringstream s;
      for (const auto& m : meta_lines("spectrum", params)) s << "# " << m << "\n";
      s << "threshold,purely_continuous\n" << io::format_double(fs.threshold) << ",1\n";
      body = s.str();
    } else {
      body = json({{"params", params},
                   {"conventions", kConventions},
                   {"threshold", fs.threshold},
                   {"purely_continuous", fs.purely_continuous}})
                 .dump(2) + "\n";
    }
    write_outputs("spectrum", o, params, body, job);
    return;
  }

  LevelTable t;
  if (o.method == "closed") t = spin_orbit_levels(p, o.n_max);
  else if (o.method == "fock") t = fock_basis_levels(p, o.basis);
  else if (o.method == "susy") {
    for (double e : spin_orbit_levels_susy(p, o.n_max)) t.entries.push_back({e, {}, ""});
  } else if (o.method == "landau") t = landau_levels(p.b, o.n_max);
  else throw Usage("unknown --method " + o.method);

  std::string body;
  if (fmt == "csv") {
    if (o.method == "closed" || o.method == "landau") {
      body = io::level_table_csv(t, meta_lines("spectrum", params));
    } else {
      std::ostringstream s;
      for (const auto& m : meta_lines("spectrum", params)) s << "# " << m << "\n";
      s << "energy\n";
      for (const auto& l : t.entries) s << io::format_double(l.energy) << "\n";
      body = s.str();
    }
  } else {
    json j = io::to_json(t);
    j["params"] = params;
    j["conventions"] = kConventions;
    body = j.dump(2) + "\n";
  }
  write_outputs("spectrum", o, params, body, job);
}

void run_green(const Options& o) {
  const auto rp = resolve_params(o);
  const auto& p = rp.params;
  const json params = io::to_json(rp);
  const Complex z = io::parse_complex(o.z);
  const Point2 r0 = io::parse_point(o.r0);

  std::vector<Point2> points;
  if (!o.rx.empty() || !o.ry.empty()) {
    const Point2 base = io::parse_point(o.r);
    const auto xs = o.rx.empty() ? std::vector<double>{base.x} : parse_range(o.rx);
    const auto ys = o.ry.empty() ? std::vector<double>{base.y} : parse_range(o.ry);
    for (double y : ys)
      for (double x : xs) points.push_back({x, y});
  } else {
    points.push_back(io::parse_point(o.r));
  }
  if (o.form != "operator" && o.form != "entrywise") throw Usage("--form must be operator or entrywise");

  const auto kernels = parallel_map<SpinKernel>(points.size(), [&](std::size_t i) {
    const KernelRequest req{p, points[i], r0, z};
    if (p.b == 0.0) return o.form == "operator" ? green_free_operator_form(req) : green_free(req);
    return o.form == "operator" ? green_magnetic(req) : green_magnetic_entrywise(req);
  });

  const json job = {{"z", io::complex_json(z)}, {"r_prime", {r0.x, r0.y}}, {"points", points.size()},
                    {"rx", o.rx}, {"ry", o.ry}, {"r", o.r}, {"form", o.form}};
  std::string body;
  if (output_format(o) == "csv") {
    std::ostringstream s;
    for (const auto& m : meta_lines("green", params)) s << "# " << m << "\n";
    s << "# z " << io::format_complex(z) << "\n";
    s << "x,y,xp,yp,re_g11,im_g11,re_g12,im_g12,re_g21,im_g21,re_g22,im_g22\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& k = kernels[i];
      s << csv_row({points[i].x, points[i].y, r0.x, r0.y, k.g11.real(), k.g11.imag(), k.g12.real(),
                    k.g12.imag(), k.g21.real(), k.g21.imag(), k.g22.real(), k.g22.imag()});
    }
    body = s.str();
  } else {
    json records = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
      json rec = io::to_json(kernels[i]);
      rec["r"] = {points[i].x, points[i].y};
      rec["r_prime"] = {r0.x, r0.y};
      records.push_back(rec);
    }
    body = json({{"params", params},
                 {"conventions", kConventions},
                 {"z", io::complex_json(z)},
                 {"records", records}})
               .dump(2) + "\n";
  }
  write_outputs("green", o, params, body, job);
}

void run_green_ren(const Options& o) {
  const auto rp = resolve_params(o);
  const auto& p = rp.params;
  const json params = io::to_json(rp);

  std::vector<Complex> zs;
  for (const auto& s : o.zs) zs.push_back(io::parse_complex(s));
  if (!o.zline.empty()) {
    // "z0:z1:n", linear path in the complex plane
    std::vector<std::string> parts;
    std::stringstream ss(o.zline);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw Usage("--zline must be 'z0:z1:count'");
    const Complex a = io::parse_complex(parts[0]), b = io::parse_complex(parts[1]);
    const int n = std::stoi(parts[2]);
    if (n < 1) throw Usage("--zline count must be >= 1");
    for (int i = 0; i < n; ++i) zs.push_back(n == 1 ? a : a + (b - a) * (double(i) / (n - 1)));
  }
  if (zs.empty()) zs.push_back(io::parse_complex(o.z));

  const auto values =
      parallel_map<RenormValue>(zs.size(), [&](std::size_t i) { return green_ren(p, zs[i]); });

  json zj = json::array();
  for (auto z : zs) zj.push_back(io::complex_json(z));
  const json job = {{"z", zj}};
  std::string body;
  if (output_format(o) == "csv") {
    std::ostringstream s;
    for (const auto& m : meta_lines("green-ren", params)) s << "# " << m << "\n";
    s << "re_z,im_z,re_up,im_up,re_down,im_down\n";
    for (std::size_t i = 0; i < zs.size(); ++i)
      s << csv_row({zs[i].real(), zs[i].imag(), values[i].diag_up.real(), values[i].diag_up.imag(),
                    values[i].diag_down.real(), values[i].diag_down.imag()});
    body = s.str();
  } else {
    json records = json::array();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      json rec = io::to_json(values[i]);
      rec["z"] = io::complex_json(zs[i]);
      records.push_back(rec);
    }
    body = json({{"params", params}, {"conventions", kConventions}, {"records", records}}).dump(2) + "\n";
  }
  write_outputs("green-ren", o, params, body, job);
}

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = {nd(rng), nd(rng)};
  return m;
}

bool run_verify(const Options& o) {
  const std::vector<std::string> known = {"resolvent", "susy", "spectral-sum", "fd", "fock", "all"};
  if (std::find(known.begin(), known.end(), o.suite) == known.end())
    throw Usage("unknown --suite " + o.suite);
  if (o.trials < 1) throw Usage("--trials must be >= 1");
  const bool all = o.suite == "all";
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<ResidualReport> reports;

  if (all || o.suite == "resolvent") {
    const double tol = o.tol > 0 ? o.tol : 1e-10;
    for (int t = 0; t < o.trials; ++t) {
      const int n = 1 + int(unif(rng) * 8);
      Eigen::MatrixXcd a = random_matrix(rng, n, n);
      a = 0.5 * (a + a.adjoint()).eval();
      const double alpha = -2 + 4 * unif(rng);
      const Complex e{-3 + 6 * unif(rng), 0.1 + 2 * unif(rng)};
      reports.push_back(check_resolvent_identity({a, true}, alpha, e, tol));
    }
  }
  if (all || o.suite == "susy") {
    const double tol = o.tol > 0 ? o.tol : 1e-10;
    const double ms[] = {0.0, 0.3, 1.0};
    for (int t = 0; t < o.trials; ++t) {
      const int rows = 1 + int(unif(rng) * 8), cols = 1 + int(unif(rng) * 5);
      reports.push_back(check_susy_proposition({random_matrix(rng, rows, cols), false}, ms[t % 3], tol));
    }
  }
  if (all || o.suite == "spectral-sum") {
    const double tol = o.tol > 0 ? o.tol : 1e-6;
    const double bs[] = {0.5, -0.5, 1.0, -1.0, 2.0};
    const int n = std::min(o.trials, 10);
    for (double b : bs)
      for (int t = 0; t < n; ++t) {
        const Point2 r{-1 + 2 * unif(rng), -1 + 2 * unif(rng)}, rp{-1 + 2 * unif(rng), -1 + 2 * unif(rng)};
        const Complex z{-2 + 6 * unif(rng), 0.5 + unif(rng)};
        const auto s = spectral_sum_green0(b, r, rp, z, 2000, 1e-3);
        std::ostringstream ctx;
        ctx << "spectral sum b=" << b << " z=" << z;
        reports.push_back(make_report(std::abs(s.value - green0_landau(b, r, rp, z)), tol, ctx.str()));
      }
  }
  if (all || o.suite == "fd") {
    const int n = std::min(o.trials, 10);
    for (auto v : {Variant::Rashba, Variant::Dresselhaus})
      for (double b : {0.0, 1.0}) {
        for (int t = 0; t < n; ++t) {
          const ModelParams p{v, 0.2 + unif(rng), b, b == 0 ? 0.0 : unif(rng)};
          const Complex z{-2 + unif(rng), 0.3 + unif(rng)};
          const Point2 rp{0.0, 0.0};
          const double ang = 2 * kPi * unif(rng), rad = 0.6 + unif(rng);
          const Point2 r{rad * std::cos(ang), rad * std::sin(ang)};
          const auto ker = [&](Point2 x) { return green({p, x, rp, z}); };
          const double h = 1e-2;
          const auto r1 = apply_hamiltonian_fd(p, ker, z, r, h, rp);
          const auto r2 = apply_hamiltonian_fd(p, ker, z, r, h / 2, rp);
          const double ratio = r1.residual_max / r2.residual_max;
          reports.push_back(make_report(std::abs(ratio - 4.0), o.tol > 0 ? o.tol : 0.4,
                                        r1.context + " ratio=" + io::format_double(ratio)));
        }
      }
  }
  if (all || o.suite == "fock") {
    const double tol = o.tol > 0 ? o.tol : 1e-8;
    for (auto v : {Variant::Rashba, Variant::Dresselhaus})
      for (auto [b, g, k] : {std::tuple{1.0, 0.0, 1.0}, {1.0, 1.0, 0.5}, {-1.0, 0.3, 0.7}}) {
        const ModelParams p{v, k, b, g};
        const auto closed = spin_orbit_levels(p, 20).energies();
        const auto fock = fock_basis_levels(p, 200).energies();
        double worst = 0.0;
        for (std::size_t i = 0; i < 6; ++i) worst = std::max(worst, std::abs(closed[i] - fock[i]));
        std::ostringstream ctx;
        ctx << "fock vs closed form " << to_string(v) << " b=" << b << " gamma=" << g << " kappa=" << k;
        reports.push_back(make_report(worst, tol, ctx.str()));
      }
  }

  json arr = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    arr.push_back(io::to_json(r));
    ok = ok && r.passed;
  }
  const json job = {{"suite", o.suite}, {"trials", o.trials}, {"seed", o.seed}, {"tol", o.tol}};
  write_outputs("verify", o, json::object(), arr.dump(2) + "\n", job);
  return ok;
}

void add_param_flags(CLI::App* app, Options& o) {
  app->add_option("--params", o.params_file, "JSON parameter file");
  app->add_option("--variant", o.variant, "R or D");
  app->add_option("--kappa", o.kappa, "spin-orbit strength");
  app->add_option("--b", o.b, "dimensionless field");
  app->add_option("--gamma", o.gamma, "Zeeman coupling");
}

void add_output_flags(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "output path ('-' for stdout)");
  app->add_option("--format", o.format, "csv or json (default: from the extension)")
      ->check(CLI::IsMember({"csv", "json"}));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green functions and spectra of the Rashba and Dresselhaus Hamiltonians"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "level tables");
  add_param_flags(spectrum, o);
  add_output_flags(spectrum, o);
  spectrum->add_option("--nmax", o.n_max, "largest quantum number n");
  spectrum->add_option("--method", o.method, "closed, susy, fock or landau");
  spectrum->add_option("--basis", o.basis, "Fock basis size for --method fock");

  auto* green_cmd = app.add_subcommand("green", "2x2 kernels G(r, r'; z)");
  add_param_flags(green_cmd, o);
  add_output_flags(green_cmd, o);
  green_cmd->add_option("--z", o.z, "spectral parameter, e.g. ' -2+0.5i'");
  green_cmd->add_option("--r0", o.r0, "source point r' as x,y");
  green_cmd->add_option("--r", o.r, "field point r as x,y");
  green_cmd->add_option("--rx", o.rx, "grid in x: start:stop:count");
  green_cmd->add_option("--ry", o.ry, "grid in y: start:stop:count");
  green_cmd->add_option("--form", o.form, "operator or entrywise");

  auto* ren = app.add_subcommand("green-ren", "renormalized diagonal values");
  add_param_flags(ren, o);
  add_output_flags(ren, o);
  ren->add_option("--z", o.zs, "spectral parameter (repeatable)");
  ren->add_option("--zline", o.zline, "linear z path z0:z1:count");

  auto* verify = app.add_subcommand("verify", "oracle checks; JSON report");
  add_output_flags(verify, o);
  verify->add_option("--suite", o.suite, "resolvent, susy, spectral-sum, fd, fock or all");
  verify->add_option("--trials", o.trials, "random trials per check");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--tol", o.tol, "override the suite tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*spectrum) run_spectrum(o);
    else if (*green_cmd) run_green(o);
    else if (*ren) run_green_ren(o);
    else if (*verify) {
      if (!run_verify(o)) {
        std::cerr << "sogreen: verification failed\n";
        return 3;
      }
    }
  } catch (const Usage& e) {
    std::cerr << "sogreen: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "sogreen: " << to_string(e.kind()) << ": " << e.what() << "\n";
    if (e.kind() == ErrorKind::Accuracy) return 3;
    return e.is_domain() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "sogreen: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
