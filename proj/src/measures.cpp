#include "stripcalc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stripcalc/fft.hpp"
#include "stripcalc/quadrature.hpp"

namespace stripcalc {

bool WeightedMeasure::is_zero() const {
  for (const auto& a : atoms)
    if (a.w != 0.0) return false;
  for (const auto& g : gammas)
    if (g.coeff != 0.0) return false;
  return true;
}

cplx WeightedMeasure::density(double s) const {
  cplx v = 0;
  for (const auto& g : gammas) {
    double r = s - g.shift;
    if (r <= 0) continue;
    v += g.coeff * std::exp((g.theta - 1) * std::log(r) - g.lambda * r - std::lgamma(g.theta));
  }
  return v;
}

double WeightedMeasure::max_abs_location() const {
  double m = 0;
  for (const auto& a : atoms) m = std::max(m, std::abs(a.s));
  for (const auto& g : gammas) m = std::max(m, std::abs(g.shift));
  return m;
}

void WeightedMeasure::cap_omega(double w) {
  if (w < omega) {
    omega = w;
    omega_open = false;
  }
}

WeightedMeasure dirac(double s, cplx w) {
  WeightedMeasure m;
  m.atoms.push_back({s, w});
  return m;
}

WeightedMeasure atomic_measure(std::vector<Atom> atoms) {
  WeightedMeasure m;
  m.atoms = std::move(atoms);
  return m;
}

WeightedMeasure gamma_density_measure(double theta, double lambda) {
  require(theta > 0, "gamma density needs theta > 0");
  require(lambda > 0, "gamma density needs lambda > 0");
  WeightedMeasure m;
  m.gammas.push_back({1.0, theta, lambda, 0.0});
  m.omega = lambda;
  m.omega_open = true;
  return m;
}

namespace {

void merge_omega(WeightedMeasure& r, const WeightedMeasure& a, const WeightedMeasure& b) {
  if (a.omega < b.omega) {
    r.omega = a.omega;
    r.omega_open = a.omega_open;
  } else if (b.omega < a.omega) {
    r.omega = b.omega;
    r.omega_open = b.omega_open;
  } else {
    r.omega = a.omega;
    r.omega_open = a.omega_open || b.omega_open;
  }
}

}  // namespace

WeightedMeasure operator+(const WeightedMeasure& a, const WeightedMeasure& b) {
  WeightedMeasure r;
  r.atoms = a.atoms;
  r.atoms.insert(r.atoms.end(), b.atoms.begin(), b.atoms.end());
  r.gammas = a.gammas;
  r.gammas.insert(r.gammas.end(), b.gammas.begin(), b.gammas.end());
  merge_omega(r, a, b);
  r.grid_h = std::max(a.grid_h, b.grid_h);
  return r;
}

WeightedMeasure operator*(cplx c, const WeightedMeasure& a) {
  WeightedMeasure r = a;
  for (auto& at : r.atoms) at.w *= c;
  for (auto& g : r.gammas) g.coeff *= c;
  return r;
}

namespace {

DensityNodes term_nodes(const GammaTerm& g, double growth, double max_freq, int level) {
  double kappa = g.lambda - growth;
  if (!(kappa > 0)) throw DomainError("divergent weighted tail: density decays slower than the requested weight");
  double S = gamma_cutoff(g.theta, kappa);
  double width = std::min(1.0, 8.0 / (1.0 + max_freq));
  Rule r = gamma_rule(g.theta, g.lambda, S, width, level);
  DensityNodes d;
  d.level = level;
  d.s.resize(r.size());
  d.w.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    d.s[i] = g.shift + r.s[i];
    d.w[i] = g.coeff * r.w[i];
  }
  return d;
}

}  // namespace

DensityNodes density_nodes(const WeightedMeasure& mu, double growth, double max_freq, double tol) {
  DensityNodes out;
  std::vector<cplx> probes;
  double gp = std::max(0.0, growth);
  for (double xf : {0.0, 0.5 * max_freq, max_freq})
    for (double eta : {0.0, gp}) {
      probes.push_back(cplx(xf, eta));
      probes.push_back(cplx(-xf, eta));
    }
  for (const auto& g : mu.gammas) {
    DensityNodes prev = term_nodes(g, growth, max_freq, 0);
    auto eval = [&](const DensityNodes& d, cplx z) {
      cplx v = 0;
      for (std::size_t i = 0; i < d.s.size(); ++i) v += d.w[i] * std::exp(-I1 * z * d.s[i]);
      return v;
    };
    DensityNodes cur = prev;
    double change = inf;
    for (int level = 1; level <= 6; ++level) {
      cur = term_nodes(g, growth, max_freq, level);
      change = 0;
      for (cplx z : probes) {
        cplx a = eval(prev, z), b = eval(cur, z);
        change = std::max(change, std::abs(a - b) / std::max(std::abs(b), 1e-300 + std::abs(g.coeff) * 1e-6));
      }
      if (change <= tol) break;
      prev = cur;
    }
    // keep the coarser rule when it already meets the tolerance
    const DensityNodes& use = change <= tol ? prev : cur;
    out.s.insert(out.s.end(), use.s.begin(), use.s.end());
    out.w.insert(out.w.end(), use.w.begin(), use.w.end());
    out.level = std::max(out.level, use.level);
    out.change = std::max(out.change, change);
  }
  return out;
}

double total_variation_norm(const WeightedMeasure& mu, double omega) {
  require(omega >= 0, "total variation weight must be >= 0");
  if (!mu.admits(omega)) throw DomainError("divergent weighted tail: weight exceeds the measure's admissible weight");
  double tv = 0;
  for (const auto& a : mu.atoms) tv += std::abs(a.w) * std::exp(omega * std::abs(a.s));
  // density terms sharing (shift, theta) are integrated jointly; distinct groups add up
  std::map<std::pair<double, double>, std::vector<GammaTerm>> groups;
  for (const auto& g : mu.gammas) groups[{g.shift, g.theta}].push_back(g);
  for (auto& [key, terms] : groups) {
    double lmin = inf;
    for (const auto& g : terms) lmin = std::min(lmin, g.lambda);
    if (!(lmin > omega)) throw DomainError("divergent weighted tail: density decays slower than e^{-omega|s|}");
    const double s0 = key.first, theta = key.second;
    double S = gamma_cutoff(theta, lmin - omega);
    auto integrate = [&](int level) {
      Rule r = gamma_rule(theta, lmin, S, 1.0, level);
      if (s0 < 0 && -s0 < S) {
        // kink of e^{omega|s|} at s = 0: split there
        Rule a = gamma_rule(theta, lmin, -s0, 1.0, level);
        Rule b = composite_gl(-s0, S, std::max(1, static_cast<int>(std::ceil(S + s0))) << level);
        for (std::size_t i = 0; i < b.size(); ++i)
          b.w[i] *= std::exp((theta - 1) * std::log(b.s[i]) - lmin * b.s[i] - std::lgamma(theta));
        r = a;
        r.append(b);
      }
      double v = 0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        cplx c = 0;
        for (const auto& g : terms) c += g.coeff * std::exp(-(g.lambda - lmin) * r.s[i]);
        v += r.w[i] * std::abs(c) * std::exp(omega * std::abs(s0 + r.s[i]));
      }
      return v;
    };
    double prev = integrate(0), cur = prev;
    for (int level = 1; level <= 6; ++level) {
      cur = integrate(level);
      if (std::abs(cur - prev) <= 1e-10 * std::abs(cur)) break;
      prev = cur;
    }
    tv += cur;
  }
  return tv;
}

namespace {

void check_strip(const WeightedMeasure& mu, cplx z) {
  if (!mu.admits(std::abs(z.imag())))
    throw DomainError("Fourier transform evaluated outside the admissible strip");
}

}  // namespace

std::vector<cplx> fourier_transform(const WeightedMeasure& mu, const std::vector<cplx>& zs) {
  double growth = 0, freq = 0;
  for (cplx z : zs) {
    check_strip(mu, z);
    growth = std::max(growth, z.imag());
    freq = std::max(freq, std::abs(z.real()));
  }
  std::vector<cplx> out(zs.size(), 0.0);
  for (std::size_t k = 0; k < zs.size(); ++k)
    for (const auto& a : mu.atoms) out[k] += a.w * std::exp(-I1 * zs[k] * a.s);
  if (mu.has_density()) {
    DensityNodes d = density_nodes(mu, growth, freq);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      cplx v = 0;
      for (std::size_t i = 0; i < d.s.size(); ++i) v += d.w[i] * std::exp(-I1 * zs[k] * d.s[i]);
      out[k] += v;
    }
  }
  return out;
}

cplx fourier_transform(const WeightedMeasure& mu, cplx z) { return fourier_transform(mu, std::vector<cplx>{z})[0]; }

WeightedMeasure cosh_weight(const WeightedMeasure& mu, double omega) {
  require(omega >= 0, "cosh weight needs omega >= 0");
  if (!(omega < mu.omega)) throw DomainError("cosh weight needs omega strictly below the measure's weight");
  WeightedMeasure r;
  for (const auto& a : mu.atoms) r.atoms.push_back({a.s, a.w * std::cosh(omega * a.s)});
  for (const auto& g : mu.gammas) {
    if (omega == 0) {
      r.gammas.push_back(g);
      continue;
    }
    // cosh(omega s) = (e^{omega s} + e^{-omega s}) / 2 with s = shift + r
    r.gammas.push_back({g.coeff * 0.5 * std::exp(omega * g.shift), g.theta, g.lambda - omega, g.shift});
    r.gammas.push_back({g.coeff * 0.5 * std::exp(-omega * g.shift), g.theta, g.lambda + omega, g.shift});
  }
  r.omega = mu.omega - omega;
  r.omega_open = mu.omega_open;
  r.grid_h = mu.grid_h;
  return r;
}

WeightedMeasure convolve(const WeightedMeasure& mu, const WeightedMeasure& nu, double grid_h) {
  WeightedMeasure r;
  merge_omega(r, mu, nu);
  r.grid_h = std::max(mu.grid_h, nu.grid_h);
  std::map<double, cplx> merged;
  for (const auto& a : mu.atoms)
    for (const auto& b : nu.atoms) merged[a.s + b.s] += a.w * b.w;
  for (auto& [s, w] : merged) r.atoms.push_back({s, w});
  for (const auto& a : mu.atoms)
    for (const auto& g : nu.gammas) r.gammas.push_back({a.w * g.coeff, g.theta, g.lambda, g.shift + a.s});
  for (const auto& g : mu.gammas)
    for (const auto& a : nu.atoms) r.gammas.push_back({a.w * g.coeff, g.theta, g.lambda, g.shift + a.s});
  std::vector<std::pair<GammaTerm, GammaTerm>> fallback;
  for (const auto& g : mu.gammas)
    for (const auto& k : nu.gammas) {
      if (std::abs(g.lambda - k.lambda) <= 1e-14 * g.lambda)
        r.gammas.push_back({g.coeff * k.coeff, g.theta + k.theta, g.lambda, g.shift + k.shift});
      else
        fallback.push_back({g, k});
    }
  if (!fallback.empty()) {
    // grid convolution: node masses binned to a uniform grid, convolved by FFT
    for (const auto& [g, k] : fallback) {
      double Sg = gamma_cutoff(g.theta, g.lambda), Sk = gamma_cutoff(k.theta, k.lambda);
      long cells = static_cast<long>(std::ceil((Sg + Sk) / grid_h)) + 2;
      if (cells > (1L << 22)) throw DomainError("incompatible cutoffs for grid convolution");
      int n = 1;
      while (n < 2 * cells) n <<= 1;
      auto bin = [&](const GammaTerm& t, double S) {
        Rule rr = gamma_rule(t.theta, t.lambda, S, 1.0, 1);
        Vec m = Vec::Zero(n);
        for (std::size_t i = 0; i < rr.size(); ++i) {
          long j = std::lround(rr.s[i] / grid_h);
          if (j < n) m[j] += t.coeff * rr.w[i];
        }
        return m;
      };
      Vec a = bin(g, Sg), b = bin(k, Sk);
      Vec c = ifft(fft(a).cwiseProduct(fft(b))) * std::sqrt(static_cast<double>(n));
      double s0 = g.shift + k.shift;
      for (long j = 0; j < cells; ++j)
        if (std::abs(c[j]) > 0) r.atoms.push_back({s0 + j * grid_h, c[j]});
    }
    r.grid_h = std::max(r.grid_h, grid_h);
  }
  return r;
}

namespace {

double max_real_freq(const GroupGenerator& A) {
  return A.eigenvalues().size() ? A.eigenvalues().real().cwiseAbs().maxCoeff() : 0.0;
}

void check_hp(const GroupGenerator& A, const WeightedMeasure& mu) {
  if (!(mu.omega > A.theta_u()))
    throw DomainError("Hille-Phillips calculus needs the measure weight to exceed the group type");
}

}  // namespace

Mat hille_phillips(const GroupGenerator& A, const WeightedMeasure& mu, Exec ex) {
  check_hp(A, mu);
  const int n = A.dim();
  Mat zero = Mat::Zero(n, n);
  Mat r = block_reduce(mu.atoms.size(), 16, zero,
                       [&](std::size_t i) -> Mat { return mu.atoms[i].w * A.orbit(mu.atoms[i].s); }, ex);
  if (mu.has_density()) {
    DensityNodes d = density_nodes(mu, A.theta_u(), max_real_freq(A));
    r += block_reduce(d.s.size(), 64, zero, [&](std::size_t i) -> Mat { return d.w[i] * A.orbit(d.s[i]); }, ex);
  }
  return r;
}

Vec hille_phillips_apply(const GroupGenerator& A, const WeightedMeasure& mu, const Vec& x, Exec ex) {
  check_hp(A, mu);
  Vec zero = Vec::Zero(A.dim());
  Vec r = block_reduce(mu.atoms.size(), 16, zero,
                       [&](std::size_t i) -> Vec { return mu.atoms[i].w * A.orbit_apply(mu.atoms[i].s, x); }, ex);
  if (mu.has_density()) {
    DensityNodes d = density_nodes(mu, A.theta_u(), max_real_freq(A));
    r += block_reduce(d.s.size(), 64, zero, [&](std::size_t i) -> Vec { return d.w[i] * A.orbit_apply(d.s[i], x); },
                      ex);
  }
  return r;
}

}  // namespace stripcalc
