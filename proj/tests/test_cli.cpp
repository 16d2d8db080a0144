#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pxca/configuration.hpp"
#include "pxca/engine.hpp"
#include "pxca/presets.hpp"
#include "support.hpp"

using namespace pxca;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(PXCA_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::map<std::string, std::string> summary(const std::string& out) {
  std::map<std::string, std::string> kv;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq != std::string::npos && line.find(' ') > eq) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::filesystem::path scratch(const std::string& name) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / ("pxca_cli_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("exit codes") {
  Run ok = run("verify --only psi-landmarks");
  CHECK(ok.status == 0);
  CHECK(summary(ok.out)["status"] == "pass");
  CHECK(run("verify --only nope").status == 2);
  CHECK(run("simulate --rule bogus --init spot:1").status == 2);
  CHECK(run("simulate --init spot:1").status == 2);
  CHECK(run("no-such-command").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("zero steps echo the initial configuration") {
  Run r = run("simulate --rule f3 --init spot:2@5 --steps 0");
  CHECK(r.status == 0);
  std::istringstream in(r.out);
  Configuration c = read_configuration(in);
  CHECK(c == Configuration::spot(Lattice::integers(), 3, Site::z(5), 2));
}

TEST_CASE("simulation from a file matches plain iteration") {
  testing::Gen gen(81);
  std::filesystem::path dir = scratch("sim");
  Rule rule = make_rule("mult:3,2");
  for (int i = 0; i < 5; ++i) {
    Configuration c = gen.config(Lattice::integers(), 6, 10, 8);
    std::filesystem::path in = dir / ("in" + std::to_string(i) + ".cfg");
    {
      std::ofstream f(in);
      write_configuration(f, c);
    }
    Run r = run("simulate --rule mult:3,2 --init file:" + in.string() + " --steps 25");
    REQUIRE(r.status == 0);
    std::istringstream out(r.out);
    CHECK(read_configuration(out) == iterate(rule, c, 25));
  }
}

TEST_CASE("simulation writes its artifacts") {
  std::filesystem::path dir = scratch("out");
  Run r = run("simulate --rule f3 --init spot:1 --steps 20 --window 30 --render --out " + dir.string());
  CHECK(r.status == 0);
  CHECK(std::filesystem::exists(dir / "initial.cfg"));
  CHECK(std::filesystem::exists(dir / "final.cfg"));
  CHECK(std::filesystem::exists(dir / "spacetime.pgm"));
  std::ifstream f(dir / "final.cfg");
  CHECK(read_configuration(f) == iterate(make_rule("f3"), Configuration::spot(Lattice::integers(), 3, Site::z(0), 1), 20));
}

TEST_CASE("bench is deterministic and scales with area") {
  auto a = summary(run("bench --size 128 --steps 8").out);
  auto b = summary(run("bench --size 128 --steps 8").out);
  auto c = summary(run("bench --size 256 --steps 8").out);
  CHECK(a["cell_updates"] == "131072");
  CHECK(c["cell_updates"] == "524288");
  CHECK(a["backend"] == b["backend"]);
  CHECK(a["search.candidates"] == b["search.candidates"]);
  CHECK(a["search.found"] == "yes");
}

TEST_CASE("expansivity and z2 subcommands") {
  Run none = run("check-kexp --rule vn2 --k 1 --support-radius 6 --window 1 --tmax 128");
  CHECK(none.status == 0);
  CHECK(summary(none.out)["verdict"] == "no_witness_within_bounds");
  Run uv = run("z2 --uv z=1,0 k=3");
  CHECK(uv.status == 0);
  CHECK(uv.out.find("01000101") != std::string::npos);
  CHECK(uv.out.find("01000100") != std::string::npos);
  Run bad = run("freegroup --n 2 --oddk 2");
  CHECK(bad.status == 2);
}
