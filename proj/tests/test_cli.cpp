#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "stripcalc/experiments.hpp"

namespace fs = std::filesystem;
using namespace stripcalc;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run calc(const std::string& args) {
  const char* bin = std::getenv("CALC_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CALC_BIN must point at the calc executable");
  Run r;
  FILE* p = popen((std::string(bin) + " " + args + " 2>&1").c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("calc_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_json(const fs::path& dir, const json& j) {
  fs::path f = dir / "config.json";
  std::ofstream(f) << j.dump(2);
  return f;
}

json read_json(const fs::path& f) {
  std::ifstream in(f);
  return json::parse(in);
}

}  // namespace

TEST_CASE("library registry and configs") {
  CHECK(experiment_list().size() == 7);
  for (const auto& e : experiment_list()) {
    json c = default_config(e.id);
    CHECK_NOTHROW(validate_experiment(e.id, c));
    CHECK(c.contains("seed"));
  }
  CHECK_FALSE(is_experiment("pade-rates"));
  CHECK_THROWS_AS(merged_config("pade", {{"bogus", 1}}), DomainError);
  CHECK_THROWS_AS(merged_config("pade", {{"experiment", "geometry"}}), DomainError);
  json c = merged_config("pade", {{"a", 0.7}});
  CHECK_THROWS_WITH_AS(validate_experiment("pade", c), doctest::Contains("a must lie in (0, alpha - 1/p + 1/q)"),
                       DomainError);
  CHECK(config_digest(default_config("pade")) == config_digest(default_config("pade")));
  CHECK(config_digest(default_config("pade")) != config_digest(merged_config("pade", {{"seed", 2}})));
}

TEST_CASE("list") {
  Run all = calc("list");
  CHECK(all.status == 0);
  for (const auto& e : experiment_list()) CHECK(all.out.find(e.id) != std::string::npos);
  Run p = calc("list pade");
  CHECK(p.status == 0);
  CHECK(std::count(p.out.begin(), p.out.end(), '\n') == 1);
  Run bad = calc("list --frobnicate");
  CHECK(bad.status == 2);
  CHECK(bad.out.find("Usage") != std::string::npos);
}

TEST_CASE("validation failures exit with status 2") {
  CHECK(calc("run no-such-experiment").status == 2);
  Run r = calc("run pade --set a=0.6 --out " + scratch("bad_a").string());
  CHECK(r.status == 2);
  CHECK(r.out.find("a must lie in (0, alpha - 1/p + 1/q)") != std::string::npos);
  fs::path d = scratch("validate");
  CHECK(calc("validate --config " + write_json(d, {{"experiment", "pade"}, {"a", 0.3}}).string()).status == 0);
  CHECK(calc("validate --config " + write_json(d, {{"experiment", "pade"}, {"zzz", 1}}).string()).status == 2);
  CHECK(calc("validate --config " + write_json(d, {{"a", 0.3}}).string()).status == 2);
  CHECK(calc("validate --config " + write_json(d, {{"experiment", "nope"}}).string()).status == 2);
  std::ofstream(d / "broken.json") << "{not json";
  CHECK(calc("validate --config " + (d / "broken.json").string()).status == 2);
}

TEST_CASE("calculus-consistency on an 8-dimensional model") {
  fs::path d = scratch("calculus");
  json cfg = {{"experiment", "calculus-consistency"},
              {"model", {{"kind", "random-diagonalizable"}, {"n", 8}, {"p", 2}, {"omega0", 0.5}, {"seed", 3}}}};
  fs::path cf = write_json(d, cfg);
  Run r = calc("run calculus-consistency --config " + cf.string() + " --out " + (d / "a").string());
  CHECK(r.status == 0);
  json rep = read_json(d / "a" / "report.json");
  CHECK(rep["status"] == "pass");
  CHECK(rep["results"]["contour_max_rel_err"].get<double>() <= 1e-6);
  CHECK(rep["results"]["hille_phillips_rel_err"].get<double>() <= 1e-6);
  CHECK(rep["config_digest"].is_string());
  CHECK(rep["metadata"].contains("timestamp"));
  CHECK(fs::exists(d / "a" / "tables" / "contour.csv"));

  // determinism: identical apart from metadata
  calc("run calculus-consistency --config " + cf.string() + " --out " + (d / "b").string());
  json rep2 = read_json(d / "b" / "report.json");
  rep.erase("metadata");
  rep2.erase("metadata");
  CHECK(rep.dump() == rep2.dump());

  // flags override top-level scalars
  calc("run calculus-consistency --config " + cf.string() + " --seed 9 --set lambda=2.5 --out " + (d / "c").string());
  json rep3 = read_json(d / "c" / "report.json");
  CHECK(rep3["config"]["seed"] == 9);
  CHECK(rep3["config"]["lambda"] == 2.5);
  CHECK(rep3["config_digest"] != rep["config_digest"]);
  CHECK(calc("run calculus-consistency --set model=3").status == 2);
}

TEST_CASE("numerical failures exit with status 3 and a diagnostic report") {
  fs::path d = scratch("numerical");
  // contour height essentially on the spectrum
  json cfg = {{"model", {{"kind", "spectral"}, {"eigenvalues", {{0.0, 0.5}, 1.0}}, {"omega0", 0.5}}},
              {"heights", {0.5000001, 0.8}}};
  Run r = calc("run calculus-consistency --config " + write_json(d, cfg).string() + " --out " + d.string());
  CHECK(r.status == 3);
  json rep = read_json(d / "report.json");
  CHECK(rep["status"] == "numerical-failure");
  CHECK(rep["diagnostics"].contains("condition_estimate"));
}
