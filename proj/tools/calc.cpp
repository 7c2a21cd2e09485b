#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stripcalc/experiments.hpp"
#include "stripcalc/parallel.hpp"

namespace fs = std::filesystem;
using namespace stripcalc;

namespace {

json read_config(const std::string& path) {
  if (path.empty()) return nullptr;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// --set key=value overrides a top-level scalar; the value is read as JSON when possible
void apply_override(json& cfg, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("override must look like key=value: " + kv);
  std::string key = kv.substr(0, eq), raw = kv.substr(eq + 1);
  if (!cfg.contains(key)) throw DomainError("unknown config field '" + key + "'");
  if (cfg[key].is_structured()) throw DomainError("only scalar fields can be overridden: " + key);
  json v = json::parse(raw, nullptr, false);
  cfg[key] = v.is_discarded() ? json(raw) : v;
}

void write_outputs(const fs::path& out, const json& report, const std::vector<Table>& tables) {
  fs::create_directories(out / "tables");
  std::ofstream(out / "report.json") << report.dump(2) << "\n";
  for (const Table& t : tables) write_csv(t, (out / "tables" / (t.name + ".csv")).string());
}

int cmd_list(const std::string& prefix) {
  for (const auto& e : experiment_list())
    if (e.id.rfind(prefix, 0) == 0) std::cout << std::left << std::setw(22) << e.id << e.summary << "\n";
  return 0;
}

int cmd_validate(const std::string& path, std::string id) {
  json user = read_config(path);
  if (id.empty()) {
    if (!user.is_object() || !user.contains("experiment") || !user["experiment"].is_string())
      throw DomainError("config must name its experiment (field \"experiment\")");
    id = user["experiment"].get<std::string>();
  }
  if (!is_experiment(id)) throw DomainError("unknown experiment '" + id + "'");
  json cfg = merged_config(id, user);
  validate_experiment(id, cfg);
  std::cout << "config valid for " << id << " (digest " << config_digest(cfg) << ")\n";
  return 0;
}

int cmd_run(const std::string& id, const std::string& path, const std::optional<std::uint64_t>& seed,
            const std::vector<std::string>& sets, const std::string& outdir) {
  if (!is_experiment(id)) throw DomainError("unknown experiment '" + id + "'; see `calc list`");
  json cfg = merged_config(id, read_config(path));
  for (const auto& kv : sets) apply_override(cfg, kv);
  if (seed) cfg["seed"] = *seed;
  validate_experiment(id, cfg);

  const fs::path out = outdir.empty() ? fs::path("out") / id : fs::path(outdir);
  const std::string started = utc_now();
  auto t0 = std::chrono::steady_clock::now();
  auto meta = [&] {
    return json{{"timestamp", started},
                {"elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                {"threads", omp_get_max_threads()}};
  };
  try {
    ExperimentOutput res = run_experiment(id, cfg);
    json report = make_report(id, cfg, res);
    report["metadata"] = meta();
    write_outputs(out, report, res.tables);
    for (const Check& c : res.checks)
      std::cout << (c.pass ? "ok   " : "FAIL ") << std::left << std::setw(44) << c.name << " " << c.value << " "
                << c.relation << " " << c.threshold << "\n";
    std::cout << id << ": " << (res.pass() ? "pass" : "fail") << " -> " << (out / "report.json").string() << "\n";
    return res.pass() ? 0 : 1;
  } catch (const NumericalError& e) {
    json diag = {{"error", e.what()}};
    if (auto* c = dynamic_cast<const ConditioningError*>(&e)) diag["condition_estimate"] = c->estimate;
    if (auto* c = dynamic_cast<const ConvergenceError*>(&e)) {
      diag["residual"] = c->residual;
      diag["iterations"] = c->iterations;
    }
    json report = {{"experiment", id},        {"config", cfg},     {"config_digest", config_digest(cfg)},
                   {"status", "numerical-failure"}, {"diagnostics", diag}, {"metadata", meta()}};
    write_outputs(out, report, {});
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strip calculus experiment runner"};
  app.require_subcommand(1);

  std::string prefix;
  auto* list = app.add_subcommand("list", "list experiments");
  list->add_option("prefix", prefix, "id prefix filter");

  std::string vpath, vid;
  auto* val = app.add_subcommand("validate", "check a config without running it");
  val->add_option("--config", vpath, "JSON config")->required()->check(CLI::ExistingFile);
  val->add_option("--experiment", vid, "experiment id (defaults to the config's \"experiment\" field)");

  std::string id, rpath, outdir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
  auto* run = app.add_subcommand("run", "run an experiment");
  run->add_option("experiment", id, "experiment id")->required();
  run->add_option("--config", rpath, "JSON config (defaults are used for missing fields)");
  run->add_option("--seed", seed, "override the seed");
  run->add_option("--set", sets, "override a top-level scalar, key=value");
  run->add_option("--out", outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    if (rc == 0) return 0;
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*list) return cmd_list(prefix);
    if (*val) return cmd_validate(vpath, vid);
    return cmd_run(id, rpath, seed, sets, outdir);
  } catch (const DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
