#include "stripcalc/transference.hpp"

#include <algorithm>
#include <cmath>

#include "stripcalc/kfunctional.hpp"
#include "stripcalc/quadrature.hpp"
#include "stripcalc/rng.hpp"

namespace stripcalc {

TransferenceWeights TransferenceWeights::make(double omega, double max_abs_s, int m) {
  require(omega > 0, "transference weight omega must be positive");
  require(m >= 6 && m <= 20, "transference grid exponent must lie in [6, 20]");
  TransferenceWeights w;
  w.omega = omega;
  w.S = std::max(12 / omega, 4 + max_abs_s);
  w.m = m;
  return w;
}

double TransferenceWeights::psi(double s) const { return 1 / std::cosh(2 * omega * s); }

double TransferenceWeights::phi(double s) const {
  double a = omega * std::abs(s);
  // cosh(a)/cosh(2a) without overflow
  double r = (std::exp(-a) + std::exp(-3 * a)) / (1 + std::exp(-4 * a));
  return std::sqrt(8.0) * omega / pi * r;
}

double TransferenceWeights::convolution(double s) const {
  // integrand decays like e^{-omega|u|} e^{-2 omega|s-u|}
  double U = std::abs(s) + 45 / omega;
  int panels = static_cast<int>(std::ceil(2 * U * omega / 0.25));
  Rule r = composite_gl(-U, U, panels);
  double acc = 0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += r.w[i] * phi(r.s[i]) * psi(s - r.s[i]);
  return acc;
}

double TransferenceWeights::convolution_residual(int points) const {
  double worst = 0;
  for (int i = 0; i < points; ++i) {
    double s = -5 / omega + 10 / omega * i / std::max(1, points - 1);
    worst = std::max(worst, std::abs(convolution(s) - 1 / std::cosh(omega * s)));
  }
  return worst;
}

namespace {

void check_weights(const GroupGenerator& A, const TransferenceWeights& w) {
  require(w.omega > A.theta_u(), "transference weight omega must exceed the group type");
}

}  // namespace

SampledSignal iota_embed(const GroupGenerator& A, const Vec& x, const TransferenceWeights& w) {
  check_weights(A, w);
  SampledSignal f = SampledSignal::zeros(w.S, w.m, A.dim(), A.exponent());
  const int n = f.size();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    double s = f.node(j);
    f.values.row(j) = (w.psi(-s) * A.orbit_apply(-s, x)).transpose();
  }
  double peak = 0;
  for (int j = 0; j < n; ++j) peak = std::max(peak, vec_norm(f.values.row(j).transpose(), A.exponent()));
  double edge = vec_norm(f.values.row(0).transpose(), A.exponent());
  if (peak > 0 && edge > 1e-8 * peak)
    throw DomainError("transference grid too small for the decay of the embedded signal");
  return f;
}

Vec p_project(const GroupGenerator& A, const SampledSignal& f, const TransferenceWeights& w) {
  check_weights(A, w);
  require(f.dim() == A.dim(), "signal dimension must match the model");
  const double h = f.h();
  Vec zero = Vec::Zero(A.dim());
  return block_reduce(
      f.size(), 64, zero,
      [&](std::size_t j) -> Vec {
        double s = f.node(static_cast<int>(j));
        return (h * w.phi(s)) * A.orbit_apply(s, f.values.row(static_cast<int>(j)).transpose());
      },
      Exec::parallel);
}

FactorizationReport factorization_check(const GroupGenerator& A, const WeightedMeasure& mu,
                                        const TransferenceWeights& w, const std::vector<Vec>& xs) {
  check_weights(A, w);
  require(mu.admits(w.omega) && mu.omega > w.omega, "measure weight must exceed the transference omega");
  FactorizationReport rep;
  rep.omega = w.omega;
  rep.S = w.S;
  rep.m = w.m;
  WeightedMeasure mw = cosh_weight(mu, w.omega);
  SampledSignal probe = SampledSignal::zeros(w.S, w.m);
  RVec xi = probe.frequencies();
  std::vector<cplx> z(xi.data(), xi.data() + xi.size());
  std::vector<cplx> sym = fourier_transform(mw, z);
  Vec symbol = Eigen::Map<Vec>(sym.data(), static_cast<Eigen::Index>(sym.size()));
  for (const Vec& x : xs) {
    double nx = A.norm(x);
    if (nx == 0) continue;
    SampledSignal f = iota_embed(A, x, w);
    Vec direct = hille_phillips_apply(A, mu, x);
    Vec via = p_project(A, fourier_multiplier_values(symbol, f), w);
    rep.discrepancy = std::max(rep.discrepancy, A.norm(direct - via) / nx);
    rep.quadrature_only = std::max(rep.quadrature_only, A.norm(x - p_project(A, f, w)) / nx);
  }
  return rep;
}

Mat strip_function_of(const StripFunction& f, const GroupGenerator& A, const ContourConfig& cfg) {
  require(f.omega > A.omega0(), "function strip must contain the spectrum");
  if (!A.has_nilpotent()) return A.spectral(f.eval);
  return regularized_calculus(f, A, f.omega + 1, cfg);
}

double certified_sup_norm(const StripFunction& f) { return f.sup_norm ? *f.sup_norm : sampled_sup_norm(f); }

BoundReport certify_interpolation_bound(const GroupGenerator& A, const std::vector<StripFunction>& battery,
                                       const std::vector<Vec>& xs, double theta, int J, const ContourConfig& cfg,
                                       bool contour_check) {
  require(!battery.empty(), "empty function battery");
  require(theta > 0 && theta < 1, "interpolation parameter must lie in (0, 1)");
  BoundReport rep;
  rep.theta = theta;
  rep.J = J;
  KFunctional K(A);
  std::vector<double> yn;
  for (const Vec& x : xs) yn.push_back(K.interpolation_norm(x, theta, J));
  for (const StripFunction& f : battery) {
    require(f.omega > A.theta_u(), "function strip must exceed the group type");
    BatteryRow row;
    row.name = f.name;
    row.sup_norm = certified_sup_norm(f);
    require(row.sup_norm > 0, "function vanishes on the strip");
    Mat F = strip_function_of(f, A, cfg);
    if (contour_check && !A.has_nilpotent()) {
      Mat G = regularized_calculus(f, A, f.omega + 1, cfg);
      row.contour_check = (F - G).norm() / std::max(F.norm(), 1e-300);
      rep.max_contour_check = std::max(rep.max_contour_check, row.contour_check);
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (yn[i] > 0) row.ratio = std::max(row.ratio, A.norm(F * xs[i]) / (row.sup_norm * yn[i]));
    if (row.ratio > rep.max_ratio) {
      rep.max_ratio = row.ratio;
      rep.worst = row.name;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

BoundReport certify_fractional_bound(const GroupGenerator& A, const std::vector<StripFunction>& battery,
                                     double lambda, double theta, const std::vector<Vec>& xs) {
  require(!battery.empty(), "empty function battery");
  require(theta >= 0 && theta < 1, "fractional exponent must lie in [0, 1)");
  BoundReport rep;
  rep.theta = theta;
  std::vector<double> den;
  for (const Vec& x : xs) den.push_back(A.norm(theta > 0 ? fractional_power_apply(A, lambda, theta, x) : x));
  for (const StripFunction& f : battery) {
    require(lambda > f.omega && f.omega > A.theta_u(), "need lambda > omega > group type");
    BatteryRow row;
    row.name = f.name;
    row.sup_norm = certified_sup_norm(f);
    require(row.sup_norm > 0, "function vanishes on the strip");
    Mat F = strip_function_of(f, A);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (den[i] > 0) row.ratio = std::max(row.ratio, A.norm(F * xs[i]) / (row.sup_norm * den[i]));
    if (row.ratio > rep.max_ratio) {
      rep.max_ratio = row.ratio;
      rep.worst = row.name;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

double fractional_path_check(const GroupGenerator& A, const WeightedMeasure& mu, double lambda, double theta,
                             const std::vector<Vec>& xs) {
  require(theta > 0 && theta < 1, "fractional exponent must lie in (0, 1)");
  require(lambda > A.theta_u(), "lambda must exceed the group type");
  WeightedMeasure nu = gamma_density_measure(theta, lambda);
  WeightedMeasure mn = convolve(mu, nu);
  double worst = 0;
  for (const Vec& x : xs) {
    double nx = A.norm(x);
    if (nx == 0) continue;
    Vec direct = hille_phillips_apply(A, mu, x);
    Vec via = hille_phillips_apply(A, mn, fractional_power_apply(A, lambda, theta, x));
    worst = std::max(worst, A.norm(direct - via) / std::max(A.norm(direct), nx));
  }
  return worst;
}

BoundReport certify_decay_bound(const GroupGenerator& A, const std::vector<StripFunction>& battery, double lambda) {
  require(!battery.empty(), "empty function battery");
  BoundReport rep;
  for (const StripFunction& f : battery) {
    require(lambda > f.omega && f.omega > A.theta_u(), "need lambda > omega > group type");
    require(f.alpha > 0, "decay bound needs a decaying function");
    StripFunction weighted = f;
    double al = f.alpha;
    auto fe = f.eval;
    weighted.eval = [fe, lambda, al](cplx z) { return std::pow(lambda + I1 * z, al) * fe(z); };
    double ws = sampled_sup_norm(weighted);
    require(std::isfinite(ws) && ws > 0, "weighted sup is not finite");
    BatteryRow row;
    row.name = f.name;
    row.sup_norm = ws;
    row.ratio = op_norm_value(strip_function_of(f, A), A.exponent()) / ws;
    if (row.ratio > rep.max_ratio) {
      rep.max_ratio = row.ratio;
      rep.worst = row.name;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<Vec> random_sphere_set(int dim, double p, int count, std::uint64_t seed) {
  std::vector<Vec> xs;
  for (int i = 0; i < count; ++i) {
    auto g = stream_rng(seed, static_cast<std::uint64_t>(i));
    Vec v = gaussian_vec(g, dim);
    xs.push_back(v / vec_norm(v, p));
  }
  return xs;
}

}  // namespace stripcalc
