#include "stripcalc/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "stripcalc/rng.hpp"

namespace stripcalc {

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("expected a number or [re, im], got " + j.dump());
}

json to_json(cplx z) {
  if (z.imag() == 0) return z.real();
  return json::array({z.real(), z.imag()});
}

namespace {

double num(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) throw DomainError(std::string("model field '") + key + "' must be a number");
  return j[key].get<double>();
}

double exponent_of(const json& j) {
  if (j.contains("p") && j["p"].is_string()) {
    if (j["p"] == "inf") return inf;
    throw DomainError("exponent p must be a number >= 1 or \"inf\"");
  }
  double p = num(j, "p", 2);
  require(p >= 1, "exponent p must be >= 1");
  return p;
}

Mat matrix_from_json(const json& j, int n) {
  require(j.is_array() && static_cast<int>(j.size()) == n, "matrix must have one row per dimension");
  Mat M(n, n);
  for (int r = 0; r < n; ++r) {
    require(j[r].is_array() && static_cast<int>(j[r].size()) == n, "matrix rows must have the model dimension");
    for (int c = 0; c < n; ++c) M(r, c) = complex_from_json(j[r][c]);
  }
  return M;
}

}  // namespace

GroupGenerator model_from_json(const json& j) {
  require(j.is_object(), "model must be a JSON object");
  std::string kind = j.value("kind", std::string("spectral"));
  double p = exponent_of(j);
  std::optional<double> period;
  if (j.contains("period")) period = num(j, "period", 0);
  GroupGenerator A;
  if (kind == "translation") {
    A = make_translation_group(static_cast<int>(num(j, "n", 64)), p, period);
  } else if (kind == "shifted-translation") {
    A = make_shifted_translation(static_cast<int>(num(j, "n", 64)), p, num(j, "delta", 1), period);
  } else if (kind == "random-diagonalizable") {
    int n = static_cast<int>(num(j, "n", 8));
    require(n >= 1 && n <= 512, "model dimension must lie in [1, 512]");
    double w0 = num(j, "omega0", 0.5), spread = num(j, "spread", 3), pert = num(j, "perturbation", 0.3);
    require(w0 >= 0 && spread >= 0 && pert >= 0, "model parameters must be nonnegative");
    auto g = stream_rng(static_cast<std::uint64_t>(num(j, "seed", 1)), 0);
    Vec e(n);
    for (int i = 0; i < n; ++i) e[i] = cplx(uniform(g, -spread, spread), uniform(g, -w0, w0));
    Mat V = Mat::Identity(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) V(r, c) += pert * cplx(gaussian(g), gaussian(g)) / std::sqrt(static_cast<double>(n));
    A = GroupGenerator::from_spectral(e, V, p, Mat(), w0);
  } else if (kind == "jordan") {
    require(j.contains("eigenvalue"), "jordan model needs an eigenvalue");
    A = make_jordan_block(complex_from_json(j["eigenvalue"]), static_cast<int>(num(j, "size", 2)), p);
  } else if (kind == "spectral") {
    require(j.contains("eigenvalues") && j["eigenvalues"].is_array(), "spectral model needs an eigenvalue list");
    int n = static_cast<int>(j["eigenvalues"].size());
    require(n >= 1, "spectral model needs at least one eigenvalue");
    if (j.contains("dim")) require(num(j, "dim", n) == n, "dim must match the eigenvalue count");
    Vec e(n);
    for (int i = 0; i < n; ++i) e[i] = complex_from_json(j["eigenvalues"][i]);
    Mat V = j.contains("basis") ? matrix_from_json(j["basis"], n) : Mat(Mat::Identity(n, n));
    Mat N = j.contains("nilpotent") ? matrix_from_json(j["nilpotent"], n) : Mat();
    std::optional<double> w0;
    if (j.contains("omega0")) w0 = num(j, "omega0", 0);
    A = GroupGenerator::from_spectral(e, V, p, N, w0);
  } else {
    throw DomainError("unknown model kind '" + kind + "'");
  }
  if (j.contains("M") || j.contains("thetaU")) {
    double M = num(j, "M", A.group_bound()), th = num(j, "thetaU", A.theta_u());
    require(M >= 1 && th >= A.omega0(), "declared group data must satisfy M >= 1 and thetaU >= omega0");
    A.set_group_data(M, th);
  }
  return A;
}

json model_to_json(const GroupGenerator& A) {
  json j;
  j["dim"] = A.dim();
  j["p"] = std::isinf(A.exponent()) ? json("inf") : json(A.exponent());
  json e = json::array();
  for (Eigen::Index i = 0; i < A.eigenvalues().size(); ++i) e.push_back(to_json(A.eigenvalues()[i]));
  j["eigenvalues"] = e;
  if (A.dim() <= 16) {
    json b = json::array();
    for (int r = 0; r < A.dim(); ++r) {
      json row = json::array();
      for (int c = 0; c < A.dim(); ++c) row.push_back(to_json(A.basis()(r, c)));
      b.push_back(row);
    }
    j["basis"] = b;
  }
  j["omega0"] = A.omega0();
  j["M"] = A.group_bound();
  j["thetaU"] = A.theta_u();
  j["basis_condition"] = A.basis_condition();
  if (A.period() > 0) j["period"] = A.period();
  return j;
}

WeightedMeasure measure_from_json(const json& j) {
  require(j.is_object(), "measure must be a JSON object");
  WeightedMeasure mu;
  if (j.contains("atoms")) {
    std::vector<Atom> atoms;
    for (const json& a : j["atoms"]) {
      require(a.is_array() && a.size() == 2 && a[0].is_number(), "atoms are [location, weight] pairs");
      atoms.push_back({a[0].get<double>(), complex_from_json(a[1])});
    }
    mu = atomic_measure(atoms);
  }
  if (j.contains("gammas")) {
    for (const json& g : j["gammas"]) {
      double th = g.value("theta", 1.0), la = g.value("lambda", 1.0), sh = g.value("shift", 0.0);
      require(th > 0 && la > 0, "gamma terms need theta > 0 and lambda > 0");
      WeightedMeasure d = gamma_density_measure(th, la);
      d.gammas[0].shift = sh;
      cplx c = g.contains("coeff") ? complex_from_json(g["coeff"]) : cplx(1);
      mu = mu + c * d;
    }
  }
  return mu;
}

json measure_to_json(const WeightedMeasure& mu) {
  json j;
  json a = json::array();
  for (const Atom& t : mu.atoms) a.push_back(json::array({t.s, to_json(t.w)}));
  j["atoms"] = a;
  json g = json::array();
  for (const GammaTerm& t : mu.gammas)
    g.push_back({{"coeff", to_json(t.coeff)}, {"theta", t.theta}, {"lambda", t.lambda}, {"shift", t.shift}});
  j["gammas"] = g;
  j["omega"] = std::isinf(mu.omega) ? json("inf") : json(mu.omega);
  return j;
}

json to_json(const GeometryEstimate& e) {
  return {{"estimator", to_string(e.kind)},
          {"space", {{"p", e.space.p}, {"dim", e.space.dim}}},
          {"exponent", e.exponent},
          {"trials", e.trials},
          {"mc_samples", e.mc_samples},
          {"estimate", e.estimate},
          {"label", "lower-bound estimate"},
          {"witness_trial", e.witness_trial},
          {"witness_digest", e.witness_digest},
          {"seed", e.seed}};
}

json to_json(const BenchReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return {{"bench", r.bench},
          {"params", params},
          {"trials", r.trials},
          {"discarded", r.discarded},
          {"max_ratio", r.max_ratio},
          {"ratio_p95", r.ratio_p95},
          {"max_ratio_sup", r.max_ratio_sup},
          {"weighted_sup", r.weighted_sup},
          {"sup_norm", r.sup_norm},
          {"grid", {{"m", r.grid.m}, {"Lg", r.grid.Lg}}}};
}

json to_json(const RateReport& r) {
  return {{"slope", r.slope},
          {"fit_points", r.fit_points},
          {"floor", r.floor},
          {"target_slope", r.target_slope},
          {"lattice_target_slope", r.lattice_target_slope},
          {"gap", r.gap},
          {"normalized", r.normalized},
          {"pass", r.pass}};
}

json to_json(const CayleyReport& r) { return {{"slope", r.slope}, {"pass", r.pass}, {"rho_max", *std::max_element(r.rho.begin(), r.rho.end())}}; }

json to_json(const SchemeReport& r) {
  return {{"n", r.ns},
          {"errors", r.errors},
          {"ratio_to_interp", r.ratio_to_interp},
          {"slope", r.slope},
          {"uniform_bound", r.uniform_bound},
          {"decreasing", r.decreasing}};
}

json to_json(const StabilityReport& r) {
  return {{"a_stable", r.a_stable},
          {"poles_in_right_half_plane", r.poles_in_right_half_plane},
          {"boundary_max", r.boundary_max},
          {"limit_at_infinity", r.limit_at_infinity},
          {"max_root_residual", r.max_root_residual},
          {"samples", r.samples}};
}

json to_json(const BoundReport& r) {
  json rows = json::array();
  for (const BatteryRow& b : r.rows) {
    json o = {{"function", b.name}, {"sup_norm", b.sup_norm}, {"ratio", b.ratio}};
    if (b.contour_check >= 0) o["contour_check"] = b.contour_check;
    rows.push_back(o);
  }
  return {{"max_ratio", r.max_ratio}, {"worst", r.worst}, {"theta", r.theta}, {"J", r.J},
          {"max_contour_check", r.max_contour_check}, {"battery", rows}};
}

json to_json(const FactorizationReport& r) {
  return {{"discrepancy", r.discrepancy}, {"quadrature_only", r.quadrature_only}, {"omega", r.omega},
          {"S", r.S}, {"m", r.m}};
}

json to_json(const GroupRReport& r) {
  return {{"n", r.n},
          {"omega", r.omega},
          {"lambda", r.lambda},
          {"alpha", r.alpha},
          {"theta", r.theta},
          {"family_size", r.family_size},
          {"estimate_x", r.estimate_x},
          {"estimate_interp", r.estimate_interp}};
}

std::string config_digest(const json& cfg) {
  std::string s = cfg.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const Table& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      const json& v = row[i];
      if (v.is_number_float()) out << format_number(v.get<double>());
      else if (v.is_string()) out << v.get<std::string>();
      else out << v.dump();
    }
    out << "\n";
  }
}

}  // namespace stripcalc
