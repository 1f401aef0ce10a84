#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sogreen/green.hpp"
#include "sogreen/io.hpp"
#include "sogreen/spectrum.hpp"

using namespace sogreen;
namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path path;
  Workdir() {
    path = fs::temp_directory_path() / ("sogreen_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SOGREEN_CLI + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("spectrum table") {
  Workdir w;
  const std::string out = w / "levels.csv";
  REQUIRE(run("spectrum --variant R --kappa 1 --b 1 --gamma 0 --nmax 5 --out " + out) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("energy,n,s,branch\n") != std::string::npos);
  CHECK(csv.find("\n-1,1,") != std::string::npos);
  const auto manifest = io::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest.at("params").at("kappa") == 1.0);
  CHECK(manifest.at("command") == "spectrum");

  // every table row carries a closed-form level
  const auto levels = spin_orbit_levels({Variant::Rashba, 1, 1, 0}, 5);
  size_t rows = 0;
  for (const auto& l : levels.entries) rows += l.indices.size();
  size_t lines = 0;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#' && line[0] != 'e') ++lines;
  CHECK(lines == rows);

  for (const char* m : {"susy", "fock"}) {
    CHECK(run(std::string("spectrum --variant D --kappa 0.5 --b -1 --gamma 1 --nmax 4 --method ") + m +
              " --out " + (w / "m.json")) == 0);
  }
}

TEST_CASE("kernel record") {
  Workdir w;
  const std::string out = w / "k.json";
  REQUIRE(run("green --variant D --kappa 0.5 --b 0 --z \" -2+0.5i\" --r0 0,0 --r 1,0 --out " + out) == 0);
  const auto j = io::json::parse(slurp(out));
  REQUIRE(j.at("records").size() == 1);
  const auto& rec = j.at("records")[0];
  // default --form operator
  const auto k = green_free_operator_form({{Variant::Dresselhaus, 0.5, 0, 0}, {1, 0}, {0, 0}, {-2, 0.5}});
  CHECK(rec.at("g12")[0].get<double>() == k.g12.real());
  CHECK(rec.at("g12")[1].get<double>() == k.g12.imag());
  CHECK(rec.at("g22")[0].get<double>() == k.g22.real());
}

TEST_CASE("grid output is reproducible and independent of the thread count") {
  Workdir w;
  const std::string args =
      "green --variant R --kappa 1 --b 1 --gamma 0 --z \" -1+i\" --r0 0,0 --rx -1:1:9 --ry 0.3:0.9:4 --out ";
  REQUIRE(run(args + (w / "a.csv"), "SOG_THREADS=1") == 0);
  REQUIRE(run(args + (w / "b.csv"), "SOG_THREADS=4") == 0);
  const std::string a = slurp(w / "a.csv");
  CHECK(a == slurp(w / "b.csv"));
  CHECK(std::count(a.begin(), a.end(), '\n') == 4 + 1 + 36);
}

TEST_CASE("renormalized trace") {
  Workdir w;
  const std::string out = w / "ren.json";
  REQUIRE(run("green-ren --variant R --kappa 1 --b 1 --gamma 0 --zline \" -3+0.5i: 3+0.5i:7\" --out " + out) == 0);
  const auto j = io::json::parse(slurp(out));
  REQUIRE(j.at("records").size() == 7);
}

TEST_CASE("parameter file") {
  Workdir w;
  {
    std::ofstream f(w / "p.json");
    f << R"({"variant": "R", "kappa": 1, "b": 1, "gamma": 0})";
  }
  CHECK(run("spectrum --params " + (w / "p.json") + " --nmax 3 --out " + (w / "l.csv")) == 0);
  {
    std::ofstream f(w / "bad.json");
    f << "{not json";
  }
  CHECK(run("spectrum --params " + (w / "bad.json") + " --out " + (w / "l.csv")) == 1);
}

TEST_CASE("verification report") {
  Workdir w;
  const std::string out = w / "report.json";
  REQUIRE(run("verify --suite susy --trials 100 --out " + out) == 0);
  const auto j = io::json::parse(slurp(out));
  size_t passed = 0, total = 0;
  for (const auto& r : j) {
    ++total;
    passed += r.at("passed").get<bool>();
  }
  CHECK(total > 0);
  CHECK(passed == total);
}

TEST_CASE("exit statuses") {
  Workdir w;
  const std::string out = " --out " + (w / "x.json");
  // z on a level
  CHECK(run("green --variant R --kappa 1 --b 1 --gamma 0 --z 1 --r0 0,0 --r 1,0" + out) == 2);
  // z in the continuum
  CHECK(run("green --variant R --kappa 1 --b 0 --z 0.5 --r0 0,0 --r 1,0" + out) == 2);
  // coincident points
  CHECK(run("green --variant R --kappa 1 --b 0 --z \" -3\" --r0 0,0 --r 0,0" + out) == 2);
  // usage
  CHECK(run("green --bogus 1" + out) == 1);
  CHECK(run("green --variant Q --z \" -3\" --r0 0,0 --r 1,0" + out) == 1);
  CHECK(run("green --variant R --z \"1+\" --r0 0,0 --r 1,0" + out) == 1);
  // a tolerance no check can meet
  CHECK(run("verify --suite resolvent --trials 5 --tol 1e-300" + out) == 3);
}

} // TEST_SUITE
