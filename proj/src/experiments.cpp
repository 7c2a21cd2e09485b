#include "stripcalc/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "stripcalc/fft.hpp"
#include "stripcalc/functions.hpp"
#include "stripcalc/kfunctional.hpp"
#include "stripcalc/rng.hpp"

namespace stripcalc {

namespace {

Check le(const std::string& name, double v, double thr) { return {name, v, thr, "<=", v <= thr}; }
Check ge(const std::string& name, double v, double thr) { return {name, v, thr, ">=", v >= thr}; }
Check holds(const std::string& name, bool ok) { return {name, ok ? 1.0 : 0.0, 1.0, "true", ok}; }

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

double getd(const json& c, const std::string& key) {
  if (!c.contains(key) || !c[key].is_number()) throw DomainError("config field '" + key + "' must be a number");
  return c[key].get<double>();
}

int geti(const json& c, const std::string& key) {
  double v = getd(c, key);
  if (v != std::floor(v)) throw DomainError("config field '" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::vector<double> getv(const json& c, const std::string& key) {
  if (!c.contains(key) || !c[key].is_array()) throw DomainError("config field '" + key + "' must be a list");
  std::vector<double> v;
  for (const json& e : c[key]) {
    if (!e.is_number()) throw DomainError("config list '" + key + "' must hold numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

std::vector<int> getvi(const json& c, const std::string& key) {
  std::vector<int> out;
  for (double d : getv(c, key)) {
    if (d != std::floor(d)) throw DomainError("config list '" + key + "' must hold integers");
    out.push_back(static_cast<int>(d));
  }
  return out;
}

std::vector<std::string> gets(const json& c, const std::string& key) {
  if (!c.contains(key) || !c[key].is_array()) throw DomainError("config field '" + key + "' must be a list");
  std::vector<std::string> v;
  for (const json& e : c[key]) {
    if (!e.is_string()) throw DomainError("config list '" + key + "' must hold strings");
    v.push_back(e.get<std::string>());
  }
  return v;
}

std::uint64_t seed_of(const json& c) {
  double s = getd(c, "seed");
  require(s >= 0 && s == std::floor(s), "seed must be a nonnegative integer");
  return static_cast<std::uint64_t>(s);
}

std::vector<Vec> test_set(const json& c, const GroupGenerator& A) {
  require(c.is_object(), "test_set must be an object");
  int count = geti(c, "count");
  require(count >= 1 && count <= 256, "test_set count must lie in [1, 256]");
  return random_sphere_set(A.dim(), A.exponent(), count, static_cast<std::uint64_t>(getd(c, "seed")));
}

double theta_of(const json& c, const GroupGenerator& A) {
  double th = c.contains("theta") && !c["theta"].is_null() ? getd(c, "theta") : type_cotype_gap(A.exponent());
  require(th > 0 && th < 1, "theta must lie in (0, 1); set it explicitly for Hilbert-space models");
  return th;
}

Table table(std::string name, std::vector<std::string> cols) { return {std::move(name), std::move(cols), {}}; }

// ---------------------------------------------------------------- calculus-consistency

json calculus_defaults() {
  return {{"seed", 1},
          {"model", {{"kind", "random-diagonalizable"}, {"n", 16}, {"p", 2}, {"omega0", 0.5}, {"seed", 1}}},
          {"omega", 1.0},
          {"heights", {0.65, 0.85}},
          {"decaying", {"decay_pow:1.5,2", "pole:1.5,2", "exp_decay:2,2.5,0.7"}},
          {"bounded", {"one", "exp_group:1.5", "blaschke:5,3", "resolvent:2"}},
          {"lambda", 2.0},
          {"approximant_k", {4, 8, 16, 32, 64}},
          {"hp_model", {{"kind", "random-diagonalizable"}, {"n", 8}, {"p", 2}, {"omega0", 0.3}, {"seed", 2}}},
          {"measure",
           {{"atoms", {{0.5, {1.0, 0.2}}, {-1.2, 0.7}, {2.0, {0.0, -0.4}}}},
            {"gammas",
             {{{"coeff", 0.8}, {"theta", 0.6}, {"lambda", 1.5}},
              {{"coeff", {0.0, 0.5}}, {"theta", 1.7}, {"lambda", 2.5}, {"shift", 0.5}}}}}},
          {"tol_spectral", 1e-8},
          {"tol_independence", 1e-7},
          {"tol_regularized", 1e-6},
          {"tol_hille_phillips", 1e-6}};
}

struct CalculusSetup {
  GroupGenerator A, B;
  double omega;
  std::vector<double> heights;
  std::vector<StripFunction> decaying, bounded;
  WeightedMeasure mu;
};

CalculusSetup calculus_setup(const json& c) {
  CalculusSetup s;
  s.A = model_from_json(c["model"]);
  s.omega = getd(c, "omega");
  require(s.omega > s.A.omega0(), "omega must exceed the spectral half-width omega0 of the model");
  s.heights = getv(c, "heights");
  require(s.heights.size() == 2, "heights must list two contour heights");
  for (double h : s.heights) require(h > s.A.omega0() && h < s.omega, "contour heights must lie in (omega0, omega)");
  for (const auto& id : gets(c, "decaying")) {
    s.decaying.push_back(make_strip_function(id, s.omega));
    require(s.decaying.back().alpha > 1, "decaying functions need decay order > 1: " + id);
  }
  for (const auto& id : gets(c, "bounded")) s.bounded.push_back(make_strip_function(id, s.omega));
  require(getd(c, "lambda") > s.omega, "lambda must exceed omega");
  for (int k : getvi(c, "approximant_k")) require(k > s.omega, "approximant indices must exceed omega");
  s.B = model_from_json(c["hp_model"]);
  s.mu = measure_from_json(c["measure"]);
  require(s.mu.omega > s.B.theta_u(), "measure weight must exceed the group type of hp_model");
  return s;
}

ExperimentOutput run_calculus(const json& c) {
  CalculusSetup s = calculus_setup(c);
  ExperimentOutput out;
  Table t1 = table("contour", {"function", "err_h1", "err_h2", "independence", "nodes", "tail_bound"});
  double worst = 0, worst_ind = 0;
  for (const StripFunction& f : s.decaying) {
    Mat S = s.A.spectral(f.eval);
    ContourConfig c1, c2;
    c1.inner_height = s.heights[0];
    c2.inner_height = s.heights[1];
    CalculusResult r1 = cauchy_integral(f, s.A, c1), r2 = cauchy_integral(f, s.A, c2);
    double e1 = (r1.value - S).norm() / S.norm(), e2 = (r2.value - S).norm() / S.norm();
    double ind = (r1.value - r2.value).norm() / S.norm();
    worst = std::max({worst, e1, e2});
    worst_ind = std::max(worst_ind, ind);
    t1.rows.push_back({f.name, e1, e2, ind, r1.nodes, r1.tail_bound});
  }
  out.checks.push_back(le("contour_vs_spectral", worst, getd(c, "tol_spectral")));
  out.checks.push_back(le("contour_independence", worst_ind, getd(c, "tol_independence")));

  Table t2 = table("regularized", {"function", "rel_err"});
  double worst_reg = 0;
  const double lambda = getd(c, "lambda");
  for (const StripFunction& f : s.bounded) {
    Mat S = s.A.spectral(f.eval);
    double e = (regularized_calculus(f, s.A, lambda) - S).norm() / S.norm();
    worst_reg = std::max(worst_reg, e);
    t2.rows.push_back({f.name, e});
  }
  out.checks.push_back(le("regularized_vs_spectral", worst_reg, getd(c, "tol_regularized")));

  // tau_k f(A) x -> f(A) x
  Table t3 = table("approximants", {"k", "error"});
  std::vector<double> ks;
  for (int k : getvi(c, "approximant_k")) ks.push_back(k);
  bool decreasing = true;
  if (!s.bounded.empty()) {
    const StripFunction& f = s.bounded.size() > 1 ? s.bounded[1] : s.bounded[0];
    Vec x = random_sphere_set(s.A.dim(), s.A.exponent(), 1, seed_of(c))[0];
    Vec fx = s.A.spectral(f.eval) * x;
    auto ap = tau_approximants(f, s.A, ks, x);
    double prev = inf;
    for (std::size_t i = 0; i < ap.size(); ++i) {
      double e = s.A.norm(ap[i] - fx);
      t3.rows.push_back({ks[i], e});
      if (e > prev * (1 + 1e-9) + 1e-13) decreasing = false;
      prev = e;
    }
  }
  out.checks.push_back(holds("approximants_converge", decreasing));

  Mat H = hille_phillips(s.B, s.mu);
  Mat Hs = hille_phillips(s.B, s.mu, Exec::serial);
  Mat S = s.B.spectral([&](cplx z) { return fourier_transform(s.mu, z); });
  double hp = (H - S).norm() / S.norm();
  out.checks.push_back(le("hille_phillips_vs_strip", hp, getd(c, "tol_hille_phillips")));
  out.checks.push_back(holds("hille_phillips_serial_parallel_identical", H == Hs));

  out.results = {{"contour_max_rel_err", worst},
                 {"contour_independence", worst_ind},
                 {"regularized_max_rel_err", worst_reg},
                 {"hille_phillips_rel_err", hp},
                 {"model", model_to_json(s.A)},
                 {"hp_model", model_to_json(s.B)}};
  out.tables = {t1, t2, t3};
  return out;
}

// ---------------------------------------------------------------- transference

json transference_defaults() {
  return {{"seed", 1},
          {"omegas", {0.5, 1.0, 2.0}},
          {"model", {{"kind", "translation"}, {"n", 64}, {"p", 1}}},
          {"omega", 1.0},
          {"measures", 5},
          {"max_atoms", 8},
          {"atom_range", 2.0},
          {"m", 12},
          {"test_set", {{"count", 4}, {"seed", 3}}},
          {"tol_convolution", 1e-8},
          {"tol_factorization", 1e-4}};
}

ExperimentOutput run_transference(const json& c) {
  for (double w : getv(c, "omegas")) require(w > 0, "omegas must be positive");
  GroupGenerator A = model_from_json(c["model"]);
  const double omega = getd(c, "omega");
  require(omega > A.theta_u(), "omega must exceed the group type of the model");
  const int measures = geti(c, "measures"), max_atoms = geti(c, "max_atoms"), m = geti(c, "m");
  require(measures >= 1 && max_atoms >= 1 && max_atoms <= 64, "need measures >= 1 and 1 <= max_atoms <= 64");
  require(m >= 6 && m <= 20, "grid exponent m must lie in [6, 20]");
  const double range = getd(c, "atom_range");
  require(range >= 0, "atom_range must be nonnegative");
  auto xs = test_set(c["test_set"], A);
  const std::uint64_t seed = seed_of(c);

  ExperimentOutput out;
  Table tw = table("weights", {"omega", "residual"});
  double worst_conv = 0;
  for (double w : getv(c, "omegas")) {
    double r = TransferenceWeights::make(w).convolution_residual();
    worst_conv = std::max(worst_conv, r);
    tw.rows.push_back({w, r});
  }
  out.checks.push_back(le("convolution_identity", worst_conv, getd(c, "tol_convolution")));

  Table tf = table("factorization", {"trial", "atoms", "discrepancy", "quadrature_only"});
  double worst = 0;
  for (int i = 0; i < measures; ++i) {
    auto g = stream_rng(seed, 100 + static_cast<std::uint64_t>(i));
    int count = i == 0 ? max_atoms : 1 + static_cast<int>(g() % static_cast<std::uint64_t>(max_atoms));
    std::vector<Atom> atoms;
    for (int k = 0; k < count; ++k) atoms.push_back({uniform(g, -range, range), cplx(gaussian(g), gaussian(g))});
    WeightedMeasure mu = atomic_measure(atoms);
    auto W = TransferenceWeights::make(omega, mu.max_abs_location(), m);
    FactorizationReport fr = factorization_check(A, mu, W, xs);
    worst = std::max(worst, fr.discrepancy);
    tf.rows.push_back({i, count, fr.discrepancy, fr.quadrature_only});
  }
  out.checks.push_back(le("factorization_random_atomic", worst, getd(c, "tol_factorization")));
  auto W0 = TransferenceWeights::make(omega, 0.7, m);
  double d0 = factorization_check(A, dirac(0), W0, xs).discrepancy;
  double d1 = factorization_check(A, dirac(0.7), W0, xs).discrepancy;
  out.checks.push_back(le("factorization_dirac_0", d0, 1e-6));
  out.checks.push_back(le("factorization_dirac_shift", d1, 1e-5));
  out.results = {{"convolution_residual", worst_conv},
                 {"factorization_max", worst},
                 {"dirac_0", d0},
                 {"dirac_shift", d1},
                 {"model", model_to_json(A)}};
  out.tables = {tw, tf};
  return out;
}

// ---------------------------------------------------------------- interp-bound

json interp_defaults() {
  return {{"seed", 1},
          {"model", {{"kind", "translation"}, {"n", 64}, {"p", 1}}},
          {"omega", 1.0},
          {"theta", nullptr},
          {"t_max", 3.0},
          {"t_count", 7},
          {"blaschke", {{5, 1}, {8, 2}, {12, 3}}},
          {"test_set", {{"count", 8}, {"seed", 5}}},
          {"J", 20},
          {"contour_checks", 2},
          {"tol_contour", 1e-6},
          {"baseline", "translation-l1-64"},
          {"baseline_tolerance", 0.1}};
}

std::vector<StripFunction> interp_battery(const json& c, double omega, int t_count) {
  std::vector<StripFunction> b;
  const double tmax = getd(c, "t_max");
  for (int i = 0; i < t_count; ++i)
    b.push_back(make_strip_function("exp_group:" + format_number(tmax * i / (t_count - 1)), omega));
  for (const json& e : c["blaschke"]) {
    require(e.is_array() && e.size() == 2, "blaschke entries are [count, seed]");
    b.push_back(make_strip_function("blaschke:" + e[0].dump() + "," + e[1].dump(), omega));
  }
  return b;
}

ExperimentOutput run_interp(const json& c) {
  GroupGenerator A = model_from_json(c["model"]);
  const double omega = getd(c, "omega");
  require(omega > A.theta_u(), "omega must exceed the group type of the model");
  const double theta = theta_of(c, A);
  const int t_count = geti(c, "t_count"), J = geti(c, "J");
  require(t_count >= 2 && J >= 1, "need t_count >= 2 and J >= 1");
  require(getd(c, "t_max") >= 0, "t_max must be nonnegative");
  auto xs = test_set(c["test_set"], A);
  auto battery = interp_battery(c, omega, t_count);

  ExperimentOutput out;
  BoundReport base = certify_interpolation_bound(A, battery, xs, theta, J, {}, false);
  BoundReport refined = certify_interpolation_bound(A, interp_battery(c, omega, 2 * t_count - 1), xs, theta, J + 5,
                                                    {}, false);
  out.checks.push_back(holds("battery_ratio_finite", std::isfinite(base.max_ratio) && base.max_ratio > 0));

  std::vector<Vec> xs_scaled;
  for (const Vec& x : xs) xs_scaled.push_back(3.7 * x);
  std::vector<StripFunction> b_scaled;
  for (const StripFunction& f : battery) b_scaled.push_back(scaled(cplx(0.37, 0.2), f));
  double rx = certify_interpolation_bound(A, battery, xs_scaled, theta, J, {}, false).max_ratio;
  double rf = certify_interpolation_bound(A, b_scaled, xs, theta, J, {}, false).max_ratio;
  out.checks.push_back(le("x_scale_invariance", rel_diff(rx, base.max_ratio), 1e-9));
  out.checks.push_back(le("f_scale_invariance", rel_diff(rf, base.max_ratio), 1e-9));

  double envelope = 0, single = base.rows[0].ratio, blaschke = 0;
  for (std::size_t i = 0; i < base.rows.size(); ++i) {
    if (static_cast<int>(i) < t_count) envelope = std::max(envelope, base.rows[i].ratio);
    else blaschke = std::max(blaschke, base.rows[i].ratio);
  }
  out.checks.push_back(le("battery_spread", envelope, 2 * single));
  out.checks.push_back(le("blaschke_below_envelope", blaschke, 1.5 * envelope));

  // cross-check of the spectral path against the contour calculus, then with halved tolerance
  Table tc = table("contour_check", {"function", "rel_diff", "rel_diff_refined"});
  double worst_c = 0;
  int nc = geti(c, "contour_checks");
  for (int i = 1; i <= nc && i < static_cast<int>(battery.size()); ++i) {
    const StripFunction& f = battery[i * (battery.size() - 1) / nc];
    Mat F = strip_function_of(f, A);
    ContourConfig cc;
    double d1 = (regularized_calculus(f, A, omega + 1, cc) - F).norm() / F.norm();
    cc.tol /= 2;
    double d2 = (regularized_calculus(f, A, omega + 1, cc) - F).norm() / F.norm();
    worst_c = std::max({worst_c, d1, d2});
    tc.rows.push_back({f.name, d1, d2});
  }
  out.checks.push_back(le("contour_cross_check", worst_c, getd(c, "tol_contour")));

  json baseline = nullptr;
  if (!c["baseline"].is_null()) {
    json all = load_baselines();
    std::string key = c["baseline"].get<std::string>();
    if (all.contains("interp-bound") && all["interp-bound"].contains(key)) {
      baseline = all["interp-bound"][key];
      double bv = baseline.get<double>(), tol = getd(c, "baseline_tolerance");
      out.checks.push_back(le("baseline_default", rel_diff(base.max_ratio, bv), tol));
      out.checks.push_back(le("baseline_refined", rel_diff(refined.max_ratio, bv), tol));
    } else {
      out.checks.push_back(holds("baseline_present", false));
    }
  }

  Table tb = table("battery", {"function", "sup_norm", "ratio"});
  for (const BatteryRow& r : base.rows) tb.rows.push_back({r.name, r.sup_norm, r.ratio});
  out.results = {{"max_ratio", base.max_ratio},
                 {"refined_max_ratio", refined.max_ratio},
                 {"baseline", baseline},
                 {"theta", theta},
                 {"battery", to_json(base)},
                 {"model", model_to_json(A)}};
  out.tables = {tb, tc};
  return out;
}

// ---------------------------------------------------------------- fractional-bound

json fractional_defaults() {
  return {{"seed", 1},
          {"model", {{"kind", "random-diagonalizable"}, {"n", 8}, {"p", 1}, {"omega0", 0.3}, {"seed", 4}}},
          {"omega", 1.0},
          {"lambda", 2.5},
          {"theta", nullptr},
          {"battery", {"one", "exp_group:1", "blaschke:6,2"}},
          {"alphas", {0.75, 1.5}},
          {"measure",
           {{"atoms", {{0.4, 1.0}, {-0.9, {0.3, 0.3}}}},
            {"gammas", {{{"coeff", 0.7}, {"theta", 0.8}, {"lambda", 2.5}}}}}},
          {"test_set", {{"count", 6}, {"seed", 7}}},
          {"tol_path", 1e-5}};
}

ExperimentOutput run_fractional(const json& c) {
  GroupGenerator A = model_from_json(c["model"]);
  const double omega = getd(c, "omega"), lambda = getd(c, "lambda");
  require(omega > A.theta_u(), "omega must exceed the group type of the model");
  require(lambda > omega, "lambda must exceed omega");
  const double theta = theta_of(c, A);
  std::vector<StripFunction> battery;
  for (const auto& id : gets(c, "battery")) battery.push_back(make_strip_function(id, omega));
  auto alphas = getv(c, "alphas");
  for (double a : alphas) require(a > theta, "decay orders must exceed 1/p - 1/q");
  WeightedMeasure mu = measure_from_json(c["measure"]);
  require(mu.omega > A.theta_u(), "measure weight must exceed the group type");
  auto xs = test_set(c["test_set"], A);

  ExperimentOutput out;
  BoundReport fb = certify_fractional_bound(A, battery, lambda, theta, xs);
  out.checks.push_back(holds("fractional_ratio_finite", std::isfinite(fb.max_ratio)));
  BoundReport f0 = certify_fractional_bound(A, battery, lambda, 0.0, xs);
  double worst0 = 0;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    Mat F = strip_function_of(battery[i], A);
    double plain = 0;
    for (const Vec& x : xs) plain = std::max(plain, A.norm(F * x) / (f0.rows[i].sup_norm * A.norm(x)));
    worst0 = std::max(worst0, rel_diff(plain, f0.rows[i].ratio));
  }
  out.checks.push_back(le("zero_power_matches_plain_ratio", worst0, 1e-12));
  double path = fractional_path_check(A, mu, lambda, theta, xs);
  out.checks.push_back(le("measure_path_cross_check", path, getd(c, "tol_path")));

  Table td = table("decay", {"function", "alpha", "weighted_sup", "ratio"});
  bool monotone = true;
  double worst_ws = 0;
  for (double a : alphas) {
    auto f1 = make_strip_function("decay_pow:" + format_number(a) + "," + format_number(lambda), omega);
    auto f2 = make_strip_function("decay_pow:" + format_number(2 * a) + "," + format_number(lambda), omega);
    auto f3 = make_strip_function("exp_decay:" + format_number(a) + "," + format_number(lambda) + ",1", omega);
    BoundReport d = certify_decay_bound(A, {f1, f2, f3}, lambda);
    for (std::size_t i = 0; i < d.rows.size(); ++i)
      td.rows.push_back({d.rows[i].name, i == 1 ? 2 * a : a, d.rows[i].sup_norm, d.rows[i].ratio});
    worst_ws = std::max({worst_ws, std::abs(d.rows[0].sup_norm - 1), std::abs(d.rows[1].sup_norm - 1)});
    if (d.rows[1].ratio > d.rows[0].ratio * (1 + 1e-9)) monotone = false;
    out.checks.push_back(holds("decay_ratio_finite_alpha_" + format_number(a),
                               std::isfinite(d.rows[2].ratio) && std::isfinite(d.rows[0].ratio)));
  }
  out.checks.push_back(le("pure_decay_weighted_sup_is_one", worst_ws, 1e-9));
  out.checks.push_back(holds("stronger_decay_not_larger", monotone));

  Table tb = table("fractional", {"function", "sup_norm", "ratio"});
  for (const BatteryRow& r : fb.rows) tb.rows.push_back({r.name, r.sup_norm, r.ratio});
  out.results = {{"max_ratio", fb.max_ratio}, {"path_discrepancy", path}, {"theta", theta},
                 {"battery", to_json(fb)}, {"model", model_to_json(A)}};
  out.tables = {tb, td};
  return out;
}

// ---------------------------------------------------------------- besov-multiplier

json besov_defaults() {
  return {{"seed", 1},
          {"m", 12},
          {"Lg", 64.0},
          {"trials", 32},
          {"refinements", 2},
          {"lp", 4.0 / 3.0},
          {"lq", 2.0},
          {"besov_p", 1.0},
          {"besov_q", 2.0},
          {"besov_s", 1.0},
          {"besov_r", 0.0},
          {"drift_tolerance", 0.1}};
}

ExperimentOutput run_besov(const json& c) {
  const int m0 = geti(c, "m"), trials = geti(c, "trials"), refinements = geti(c, "refinements");
  require(m0 >= 8 && m0 + refinements <= 16, "grid exponents must stay within [8, 16]");
  require(refinements >= 1, "need at least one refinement");
  require(trials >= 1, "trials must be positive");
  const double Lg = getd(c, "Lg"), p = getd(c, "lp"), q = getd(c, "lq");
  require(Lg > 0, "Lg must be positive");
  require(p >= 1 && p <= 2 && q >= 2, "Lp-Lq bench needs 1 <= p <= 2 <= q");
  const double bp = getd(c, "besov_p"), bq = getd(c, "besov_q"), bs = getd(c, "besov_s"), br = getd(c, "besov_r");
  require(bp >= 1 && bq >= 1 && bs >= 1, "Besov exponents must be >= 1");
  require(1 / bp - 1 / bq >= 0, "Besov bench needs 1/p - 1/q >= 0");
  const std::uint64_t seed = seed_of(c);
  const double gamma = 1 / p - 1 / q;
  ScalarSymbol bessel = [gamma](double x) { return cplx(std::pow(1 + x * x, -gamma / 2)); };
  ScalarSymbol probe = [gamma](double x) { return cplx(std::pow(1 + x * x, -gamma / 4)); };
  ScalarSymbol bounded = [](double x) { return std::exp(I1 * x) / (1.0 + 0.5 * std::sin(x) * std::sin(x)); };

  ExperimentOutput out;
  Table t = table("bench", {"m", "bench", "max_ratio", "ratio_p95", "max_ratio_sup", "discarded"});
  std::vector<BenchReport> conf, prb, bes, unsh;
  for (int l = 0; l <= refinements; ++l) {
    BenchGrid g{m0 + l, Lg};
    conf.push_back(multiplier_bench_lp_lq(bessel, p, q, trials, seed, g));
    prb.push_back(multiplier_bench_lp_lq(probe, p, q, trials, seed, g));
    bes.push_back(multiplier_bench_besov(bounded, bp, bq, bs, br, trials, seed, g, true));
    unsh.push_back(multiplier_bench_besov(bounded, bp, bq, bs, br, trials, seed, g, false));
    for (const BenchReport* r : {&conf.back(), &prb.back(), &bes.back(), &unsh.back()})
      t.rows.push_back({g.m, r->bench + (r == &prb.back() ? "-probe" : ""), r->max_ratio, r->ratio_p95,
                        r->max_ratio_sup, r->discarded});
  }
  const double tol = getd(c, "drift_tolerance");
  double drift_lp = 0, drift_b = 0;
  bool grows = true, shift_matters = true;
  for (int l = 1; l <= refinements; ++l) {
    drift_lp = std::max(drift_lp, std::abs(conf[l].max_ratio / conf[l - 1].max_ratio - 1));
    drift_b = std::max(drift_b, std::abs(bes[l].max_ratio / bes[l - 1].max_ratio - 1));
    if (!(prb[l].max_ratio_sup > prb[l - 1].max_ratio_sup)) grows = false;
  }
  for (int l = 0; l <= refinements; ++l)
    if (!(unsh[l].max_ratio >= bes[l].max_ratio)) shift_matters = false;
  out.checks.push_back(le("lp_lq_conforming_drift", drift_lp, tol));
  out.checks.push_back(le("besov_conforming_drift", drift_b, tol));
  out.checks.push_back(holds("probe_ratio_grows", grows));
  out.checks.push_back(holds("unshifted_smoothness_larger", shift_matters));

  BenchGrid fine{m0 + refinements, Lg};
  SampledSignal probe_sig = SampledSignal::zeros(Lg, fine.m);
  double pd = std::max(LittlewoodPaley(pi / probe_sig.h(), 0).partition_defect(probe_sig.frequencies()),
                       LittlewoodPaley(pi / probe_sig.h(), 1).partition_defect(probe_sig.frequencies()));
  out.checks.push_back(le("partition_of_unity", pd, 1e-10));
  BenchReport id = multiplier_bench_lp_lq([](double) { return cplx(1); }, 2, 2, 8, seed, BenchGrid{m0, Lg});
  out.checks.push_back(le("plancherel_identity", id.max_ratio, 1 + 1e-9));
  double lo = inf, hi = 0;
  for (int i = 0; i < 8; ++i) {
    SampledSignal f = random_test_signal(BenchGrid{m0, Lg}, 1, 2, seed + 1000, 2 * static_cast<std::uint64_t>(i));
    double r = besov_norm(f, 0.5, 2, 2, 0) / besov_norm(f, 0.5, 2, 2, 1);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  out.checks.push_back(ge("generator_equivalence_low", lo, 1.0 / 3));
  out.checks.push_back(le("generator_equivalence_high", hi, 3.0));

  json levels = json::array();
  for (int l = 0; l <= refinements; ++l)
    levels.push_back({{"lp_lq", to_json(conf[l])}, {"probe", to_json(prb[l])}, {"besov", to_json(bes[l])},
                      {"besov_unshifted", to_json(unsh[l])}});
  out.results = {{"levels", levels}, {"partition_defect", pd}};
  out.tables = {t};
  return out;
}

// ---------------------------------------------------------------- geometry

json geometry_defaults() {
  return {{"seed", 1},
          {"trials", 32},
          {"mc_samples", 2048},
          {"hilbert_dim", 8},
          {"l1_dims", {2, 4, 8, 16}},
          {"cotype_dims", {4, 32}},
          {"scalar_families", 20},
          {"group_n", {64, 512}},
          {"period", 16.0},
          {"omega", 1.0},
          {"lambda", 2.0},
          {"alpha", 0.0},
          {"S", 4.0},
          {"group_trials", 6},
          {"theta", 0.5},
          {"k_range", 8}};
}

ExperimentOutput run_geometry(const json& c) {
  const int trials = geti(c, "trials"), mc = geti(c, "mc_samples"), hd = geti(c, "hilbert_dim");
  require(trials >= 2 && mc >= 1 && hd >= 1, "need trials >= 2, mc_samples >= 1, hilbert_dim >= 1");
  auto l1 = getvi(c, "l1_dims"), cd = getvi(c, "cotype_dims"), gn = getvi(c, "group_n");
  for (int n : l1) require(n >= 1, "l1_dims must be positive");
  require(cd.size() == 2 && cd[0] >= 1 && cd[1] >= 1, "cotype_dims must list two positive dimensions");
  require(gn.size() >= 2, "group_n must list at least two sizes");
  const double period = getd(c, "period"), omega = getd(c, "omega"), lambda = getd(c, "lambda"),
               alpha = getd(c, "alpha"), S = getd(c, "S"), theta = getd(c, "theta");
  require(period > 0 && omega > 0 && S > 0, "period, omega and S must be positive");
  require(alpha >= 0, "alpha must be nonnegative");
  if (alpha > 0) require(lambda > omega, "lambda must exceed omega");
  require(theta > 0 && theta < 1, "theta must lie in (0, 1)");
  const std::uint64_t seed = seed_of(c);

  ExperimentOutput out;
  Table tg = table("estimators", {"estimator", "space_p", "dim", "exponent", "estimate", "witness_digest"});
  auto add = [&](const GeometryEstimate& e) {
    tg.rows.push_back({to_string(e.kind), e.space.p, e.space.dim, e.exponent, e.estimate, e.witness_digest});
  };
  GeometryEstimate ht = estimate_type_constant({2, hd}, 2, hd, trials, mc, seed);
  GeometryEstimate hc = estimate_cotype_constant({2, hd}, 2, hd, trials, mc, seed);
  add(ht);
  add(hc);
  out.checks.push_back(le("hilbert_type2", std::abs(ht.estimate - 1), 0.05));
  out.checks.push_back(le("hilbert_cotype2", std::abs(hc.estimate - 1), 0.05));

  std::vector<double> l1t;
  bool increasing = true, reproducible = true, monotone = true;
  for (int n : l1) {
    GeometryEstimate e = estimate_type_constant({1, n}, 2, n, trials, mc, seed);
    add(e);
    if (!l1t.empty() && !(e.estimate > l1t.back())) increasing = false;
    l1t.push_back(e.estimate);
    if (witness_value(e) != e.estimate) reproducible = false;
    GeometryEstimate half = estimate_type_constant({1, n}, 2, n, trials / 2, mc, seed);
    if (half.estimate > e.estimate) monotone = false;
  }
  out.checks.push_back(holds("l1_type2_strictly_increasing", increasing));
  GeometryEstimate c1 = estimate_cotype_constant({1, cd[0]}, 2, cd[0], trials, mc, seed);
  GeometryEstimate c2 = estimate_cotype_constant({1, cd[1]}, 2, cd[1], trials, mc, seed);
  add(c1);
  add(c2);
  out.checks.push_back(le("l1_cotype2_drift", std::abs(c2.estimate / c1.estimate - 1), 0.2));
  if (witness_value(c1) != c1.estimate) reproducible = false;

  // scalar families: complex scalars on ell^2, real scalars on ell^1
  double worst_scalar = 0;
  for (int i = 0; i < geti(c, "scalar_families"); ++i) {
    auto g = stream_rng(seed, 500 + static_cast<std::uint64_t>(i));
    int k = 2 + static_cast<int>(g() % 4);
    bool complex = i % 2 == 0;
    SpaceSpec sp{complex ? 2.0 : 1.0, 4};
    std::vector<Mat> ops;
    double sup = 0;
    for (int j = 0; j < k; ++j) {
      cplx s = complex ? cplx(gaussian(g), gaussian(g)) : cplx(uniform(g, -2, 2));
      sup = std::max(sup, std::abs(s));
      ops.push_back(s * Mat::Identity(4, 4));
    }
    GeometryEstimate e = estimate_r_bound(ops, sp, 4, std::max(trials, 4 * k + 8), 256, seed + i);
    worst_scalar = std::max(worst_scalar, std::abs(e.estimate / sup - 1));
    if (witness_value(e, ops) != e.estimate) reproducible = false;
  }
  out.checks.push_back(le("scalar_family_rbound_equals_sup", worst_scalar, 0.05));
  GeometryEstimate idr = estimate_r_bound({Mat::Identity(4, 4)}, {1, 4}, 3, 8, 256, seed);
  out.checks.push_back(le("identity_rbound", std::abs(idr.estimate - 1), 1e-12));
  out.checks.push_back(holds("witness_reproducible", reproducible));
  out.checks.push_back(holds("estimate_monotone_in_trials", monotone));

  Table tr = table("group", {"n", "family_size", "estimate_x", "estimate_interp"});
  std::vector<GroupRReport> gr;
  for (int n : gn) {
    GroupGenerator A = make_translation_group(n, 1, period);
    gr.push_back(rbounded_group_experiment(A, omega, lambda, alpha, S, geti(c, "group_trials"), seed, theta));
    tr.rows.push_back({n, gr.back().family_size, gr.back().estimate_x, gr.back().estimate_interp});
  }
  double gx = gr.back().estimate_x / gr.front().estimate_x;
  double gy = gr.back().estimate_interp / gr.front().estimate_interp;
  out.checks.push_back(ge("rbound_from_x_growth", gx, 1.5));
  out.checks.push_back(le("rbound_from_interp_spread", std::max(gy, 1 / gy), 1.3));

  // square functions for z/(1+z)^2 on a positive diagonal model
  const int kr = geti(c, "k_range");
  require(kr >= 1, "k_range must be positive");
  Vec ev(8);
  for (int i = 0; i < 8; ++i) ev[i] = 0.2 * std::pow(40.0, i / 7.0);
  GroupGenerator D = GroupGenerator::from_spectral(ev, Mat::Identity(8, 8), 1.0);
  SectorFunction f{[](cplx z) { return z / ((1.0 + z) * (1.0 + z)); }, pi, "z/(1+z)^2"};
  std::vector<double> tg_grid;
  for (int i = 0; i < 8; ++i) tg_grid.push_back(std::pow(2.0, i / 8.0));
  Vec x = random_sphere_set(8, 1, 1, seed)[0];
  auto s1 = square_function_experiment(D, f, tg_grid, -kr, kr, x, theta, 1024, seed);
  auto s2 = square_function_experiment(D, f, tg_grid, -2 * kr, 2 * kr, x, theta, 1024, seed);
  out.checks.push_back(le("square_function_truncation", std::abs(s2.value / s1.value - 1), 0.1));
  GroupGenerator one = GroupGenerator::from_spectral(Vec::Constant(1, 1.0), Mat::Identity(1, 1), 1.0);
  auto s3 = square_function_experiment(one, f, {1.0}, 0, 0, Vec::Constant(1, 1.0), theta, 16, seed);
  out.checks.push_back(le("square_function_scalar", std::abs(s3.raw_sup - 0.25), 1e-12));

  json gj = json::array();
  for (const auto& r : gr) gj.push_back(to_json(r));
  out.results = {{"hilbert_type", to_json(ht)},
                 {"hilbert_cotype", to_json(hc)},
                 {"l1_type", l1t},
                 {"l1_cotype", {c1.estimate, c2.estimate}},
                 {"scalar_family_worst", worst_scalar},
                 {"group", gj},
                 {"square_function", {s1.value, s2.value}}};
  out.tables = {tg, tr};
  return out;
}

// ---------------------------------------------------------------- pade

json pade_defaults() {
  json ns = json::array();
  for (int n = 2; n <= 20; ++n) ns.push_back(n);
  return {{"seed", 1},
          {"n_max", 20},
          {"order_n_max", 8},
          {"a_list", {0.25, 0.5, 0.75}},
          {"scalar_samples", 4000},
          {"y_max", 1000.0},
          {"stability_samples", 10000},
          {"p", 1.0},
          {"delta", 1.0},
          {"alpha", 1.0},
          {"a", 0.45},
          {"t", {0.5, 1.0, 2.0}},
          {"rate_dim", 256},
          {"rate_n", ns},
          {"cayley_dim", 128},
          {"cayley_delta", 0.05},
          {"N", 200},
          {"theta", nullptr},
          {"scheme_dim", 64},
          {"scheme_pade_n", 1},
          {"scheme_steps", {1, 2, 4, 8, 16, 32}},
          {"test_count", 3}};
}

struct PadeSetup {
  double p, gap, theta, alpha, a, delta, cayley_delta;
  int n_max, order_max, rate_dim, cayley_dim, scheme_dim, N, count;
  std::vector<int> rate_n, steps;
  std::vector<double> ts, as;
};

PadeSetup pade_setup(const json& c) {
  PadeSetup s;
  s.p = getd(c, "p");
  require(s.p >= 1, "exponent p must be >= 1");
  s.gap = type_cotype_gap(s.p);
  s.n_max = geti(c, "n_max");
  s.order_max = geti(c, "order_n_max");
  require(s.n_max >= 0 && s.n_max <= 32 && s.order_max >= 0 && s.order_max <= 32, "Pade indices must lie in [0, 32]");
  s.alpha = getd(c, "alpha");
  s.a = getd(c, "a");
  s.delta = getd(c, "delta");
  s.cayley_delta = getd(c, "cayley_delta");
  require(s.delta > 0 && s.cayley_delta > 0, "delta must be positive (spectrum in Re z >= delta > 0)");
  require(s.alpha > s.gap, "alpha must exceed 1/p - 1/q");
  require(s.a > 0 && s.a < s.alpha - s.gap, "a must lie in (0, alpha - 1/p + 1/q)");
  s.rate_n = getvi(c, "rate_n");
  require(!s.rate_n.empty(), "rate_n must not be empty");
  for (int n : s.rate_n) require(n > s.alpha / 2 - 1 && n >= 0 && n <= 32, "rate_n entries must satisfy n > alpha/2 - 1");
  s.ts = getv(c, "t");
  for (double t : s.ts) require(t > 0, "t values must be positive");
  s.as = getv(c, "a_list");
  for (double a : s.as) require(a > 0, "a_list entries must be positive");
  s.rate_dim = geti(c, "rate_dim");
  s.cayley_dim = geti(c, "cayley_dim");
  s.scheme_dim = geti(c, "scheme_dim");
  for (int d : {s.rate_dim, s.cayley_dim, s.scheme_dim})
    if (!is_pow2(d)) throw SizingError("model dimensions must be powers of two");
  s.N = geti(c, "N");
  require(s.N >= 2, "N must be >= 2");
  s.theta = c["theta"].is_null() ? s.gap : getd(c, "theta");
  require(s.theta > 0 && s.theta < 1, "theta must lie in (0, 1)");
  s.steps = getvi(c, "scheme_steps");
  for (int k : s.steps) require(k >= 1, "scheme_steps must be positive");
  require(geti(c, "scheme_pade_n") >= 0 && geti(c, "scheme_pade_n") <= 32, "scheme_pade_n must lie in [0, 32]");
  s.count = geti(c, "test_count");
  require(s.count >= 1, "test_count must be positive");
  require(geti(c, "scalar_samples") >= 2 && geti(c, "stability_samples") >= 2, "sample counts must be >= 2");
  require(getd(c, "y_max") > 0, "y_max must be positive");
  return s;
}

ExperimentOutput run_pade(const json& c) {
  PadeSetup s = pade_setup(c);
  const std::uint64_t seed = seed_of(c);
  ExperimentOutput out;

  std::vector<int> ns;
  for (int n = 1; n <= s.n_max; ++n) ns.push_back(n);
  Table ts = table("scalar_rate", {"n", "a", "sup", "bound", "worst_y"});
  double worst = 0;
  for (const auto& r : scalar_rate_check(ns, s.as, 1e-3, 1e4, geti(c, "scalar_samples"))) {
    ts.rows.push_back({r.n, r.a, r.sup, r.bound, r.worst_y});
    worst = std::max(worst, r.sup / r.bound);
  }
  out.checks.push_back(le("scalar_rate_normalized", worst, 1.0));

  bool exact = true;
  for (int n = 0; n <= s.order_max; ++n) {
    auto res = taylor_residual(pade_subdiagonal(n), 2 * n + 2);
    for (int k = 0; k <= 2 * n + 1; ++k)
      if (res[k] != 0) exact = false;
    if (res[2 * n + 2] == 0) exact = false;
  }
  out.checks.push_back(holds("order_conditions_exact", exact));

  Table tst = table("stability", {"n", "boundary_max", "limit_at_infinity", "poles_right"});
  bool stable = true;
  double bmax = 0;
  for (int n = 0; n <= s.n_max; ++n) {
    auto st = check_a_stability(pade_subdiagonal(n), getd(c, "y_max"), geti(c, "stability_samples"));
    stable = stable && st.a_stable;
    bmax = std::max(bmax, st.boundary_max);
    tst.rows.push_back({n, st.boundary_max, st.limit_at_infinity, st.poles_in_right_half_plane});
  }
  out.checks.push_back(holds("a_stable", stable));
  out.checks.push_back(le("boundary_max", bmax, 1 + 1e-12));
  auto poly = RationalFunction::from_exact({1, 1, Rational(1, 2)}, {1}, "taylor2");
  out.checks.push_back(holds("polynomial_probe_flagged", !check_a_stability(poly).a_stable));

  GroupGenerator R = make_shifted_translation(s.rate_dim, s.p, s.delta);
  auto rr = rate_harness(R, s.alpha, s.a, s.ts, s.rate_n, random_sphere_set(R.dim(), s.p, s.count, seed));
  out.checks.push_back(le("rate_slope", rr.slope, rr.target_slope));
  Table trt = table("rate", {"n", "t", "error", "bound", "ratio"});
  for (const auto& r : rr.rows) trt.rows.push_back({r.n, r.t, r.error, r.bound, r.ratio});

  GroupGenerator C = make_shifted_translation(s.cayley_dim, s.p, s.cayley_delta);
  auto cr = cayley_power_sweep(C, s.theta, s.N, random_sphere_set(C.dim(), s.p, s.count, seed + 1));
  out.checks.push_back(le("cayley_slope", cr.slope, 0.05));
  Table tc = table("cayley", {"n", "rho"});
  for (int k = 0; k < s.N; ++k) tc.rows.push_back({k + 1, cr.rho[k]});

  GroupGenerator Sg = make_shifted_translation(s.scheme_dim, s.p, s.delta);
  auto sr = iterated_scheme_convergence(pade_subdiagonal(geti(c, "scheme_pade_n")), Sg, s.ts, s.steps,
                                        random_sphere_set(Sg.dim(), s.p, s.count, seed + 2), s.theta);
  out.checks.push_back(holds("iterated_scheme_decreasing", sr.decreasing));
  Table tsc = table("scheme", {"steps", "error", "ratio_to_interp"});
  for (std::size_t i = 0; i < sr.ns.size(); ++i) tsc.rows.push_back({sr.ns[i], sr.errors[i], sr.ratio_to_interp[i]});

  out.results = {{"scalar_worst_normalized", worst},
                 {"boundary_max", bmax},
                 {"rate", to_json(rr)},
                 {"lattice_slope_pass", rr.slope <= rr.lattice_target_slope},
                 {"cayley", to_json(cr)},
                 {"scheme", to_json(sr)}};
  out.tables = {ts, tst, trt, tc, tsc};
  return out;
}

struct Entry {
  ExperimentInfo info;
  std::function<json()> defaults;
  std::function<void(const json&)> validate;
  std::function<ExperimentOutput(const json&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"calculus-consistency", "contour calculus vs spectral mapping, contour independence, Hille-Phillips agreement"},
       calculus_defaults, [](const json& c) { calculus_setup(c); }, run_calculus},
      {{"transference", "weight convolution identity and factorization through a Fourier multiplier"},
       transference_defaults,
       [](const json& c) {
         GroupGenerator A = model_from_json(c["model"]);
         require(getd(c, "omega") > A.theta_u(), "omega must exceed the group type of the model");
         for (double w : getv(c, "omegas")) require(w > 0, "omegas must be positive");
         require(geti(c, "measures") >= 1 && geti(c, "max_atoms") >= 1 && geti(c, "max_atoms") <= 64,
                 "need measures >= 1 and 1 <= max_atoms <= 64");
         require(geti(c, "m") >= 6 && geti(c, "m") <= 20, "grid exponent m must lie in [6, 20]");
         test_set(c["test_set"], A);
       },
       run_transference},
      {{"interp-bound", "bounded calculus from the interpolation space D_A(theta,1) against a stored baseline"},
       interp_defaults,
       [](const json& c) {
         GroupGenerator A = model_from_json(c["model"]);
         double omega = getd(c, "omega");
         require(omega > A.theta_u(), "omega must exceed the group type of the model");
         theta_of(c, A);
         require(geti(c, "t_count") >= 2 && geti(c, "J") >= 1, "need t_count >= 2 and J >= 1");
         interp_battery(c, omega, geti(c, "t_count"));
         test_set(c["test_set"], A);
       },
       run_interp},
      {{"fractional-bound", "bounded calculus from fractional domains, measure-path cross-check, decay bounds"},
       fractional_defaults,
       [](const json& c) {
         GroupGenerator A = model_from_json(c["model"]);
         double omega = getd(c, "omega"), lambda = getd(c, "lambda");
         require(omega > A.theta_u(), "omega must exceed the group type of the model");
         require(lambda > omega, "lambda must exceed omega");
         double theta = theta_of(c, A);
         for (const auto& id : gets(c, "battery")) make_strip_function(id, omega);
         for (double a : getv(c, "alphas")) require(a > theta, "decay orders must exceed 1/p - 1/q");
         require(measure_from_json(c["measure"]).omega > A.theta_u(), "measure weight must exceed the group type");
         test_set(c["test_set"], A);
       },
       run_fractional},
      {{"besov-multiplier", "Besov and Lp-Lq Fourier multiplier benches under grid refinement"}, besov_defaults,
       [](const json& c) {
         int m0 = geti(c, "m"), refinements = geti(c, "refinements");
         require(m0 >= 8 && m0 + refinements <= 16 && refinements >= 1, "grid exponents must stay within [8, 16]");
         require(geti(c, "trials") >= 1 && getd(c, "Lg") > 0, "need trials >= 1 and Lg > 0");
         double p = getd(c, "lp"), q = getd(c, "lq");
         require(p >= 1 && p <= 2 && q >= 2, "Lp-Lq bench needs 1 <= p <= 2 <= q");
         double bp = getd(c, "besov_p"), bq = getd(c, "besov_q");
         require(bp >= 1 && bq >= 1 && getd(c, "besov_s") >= 1, "Besov exponents must be >= 1");
         require(1 / bp - 1 / bq >= 0, "Besov bench needs 1/p - 1/q >= 0");
       },
       run_besov},
      {{"geometry", "type, cotype and R-bound estimators, R-bounded group families, square functions"},
       geometry_defaults,
       [](const json& c) {
         require(geti(c, "trials") >= 2 && geti(c, "mc_samples") >= 1, "need trials >= 2 and mc_samples >= 1");
         require(getd(c, "omega") > 0 && getd(c, "period") > 0 && getd(c, "S") > 0,
                 "period, omega and S must be positive");
         require(getd(c, "theta") > 0 && getd(c, "theta") < 1, "theta must lie in (0, 1)");
         require(getvi(c, "group_n").size() >= 2, "group_n must list at least two sizes");
         for (int n : getvi(c, "group_n"))
           if (!is_pow2(n)) throw SizingError("group_n entries must be powers of two");
         if (getd(c, "alpha") > 0) require(getd(c, "lambda") > getd(c, "omega"), "lambda must exceed omega");
       },
       run_geometry},
      {{"pade", "subdiagonal Pade approximants: order, A-stability, rates, Cayley powers, iterated schemes"},
       pade_defaults, [](const json& c) { pade_setup(c); }, run_pade},
  };
  return r;
}

const Entry& entry(const std::string& id) {
  for (const Entry& e : registry())
    if (e.info.id == id) return e;
  throw DomainError("unknown experiment '" + id + "'");
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_list() {
  static const std::vector<ExperimentInfo> l = [] {
    std::vector<ExperimentInfo> v;
    for (const Entry& e : registry()) v.push_back(e.info);
    return v;
  }();
  return l;
}

bool is_experiment(const std::string& id) {
  for (const Entry& e : registry())
    if (e.info.id == id) return true;
  return false;
}

bool ExperimentOutput::pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

json default_config(const std::string& id) { return entry(id).defaults(); }

json merged_config(const std::string& id, const json& user) {
  json cfg = default_config(id);
  if (user.is_null()) return cfg;
  require(user.is_object(), "config must be a JSON object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    if (it.key() == "experiment") {
      require(it.value() == id, "config names experiment " + it.value().dump() + " but '" + id + "' was requested");
      continue;
    }
    if (it.key() == "description") continue;
    require(cfg.contains(it.key()), "unknown config field '" + it.key() + "' for experiment " + id);
    cfg[it.key()] = it.value();
  }
  return cfg;
}

void validate_experiment(const std::string& id, const json& cfg) {
  const Entry& e = entry(id);
  seed_of(cfg);
  try {
    e.validate(cfg);
  } catch (const json::exception& ex) {
    throw DomainError(std::string("malformed config: ") + ex.what());
  }
}

ExperimentOutput run_experiment(const std::string& id, const json& cfg) {
  validate_experiment(id, cfg);
  try {
    return entry(id).run(cfg);
  } catch (const json::exception& ex) {
    throw DomainError(std::string("malformed config: ") + ex.what());
  }
}

json make_report(const std::string& id, const json& cfg, const ExperimentOutput& out) {
  json checks = json::array();
  for (const Check& c : out.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"relation", c.relation},
                      {"pass", c.pass}});
  return {{"experiment", id},
          {"config", cfg},
          {"config_digest", config_digest(cfg)},
          {"status", out.pass() ? "pass" : "fail"},
          {"checks", checks},
          {"results", out.results},
          {"metadata", json::object()}};
}

json load_baselines() {
  std::string dir = STRIPCALC_DATA_DIR;
  if (const char* env = std::getenv("STRIPCALC_DATA")) dir = env;
  std::ifstream in(dir + "/baselines.json");
  if (!in) return json::object();
  try {
    return json::parse(in);
  } catch (const json::exception&) {
    throw DomainError("baselines.json is malformed");
  }
}

}  // namespace stripcalc
