#include "stripcalc/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "stripcalc/fft.hpp"
#include "stripcalc/rng.hpp"

namespace stripcalc {

SampledSignal SampledSignal::zeros(double Lg, int m, int d, double p) {
  require(Lg > 0, "grid half-width must be positive");
  require(m >= 1 && m <= 24, "grid exponent must lie in [1, 24]");
  require(d >= 1, "signal dimension must be positive");
  SampledSignal f;
  f.Lg = Lg;
  f.m = m;
  f.p = p;
  f.values = Mat::Zero(1 << m, d);
  return f;
}

RVec SampledSignal::frequencies() const { return fft_frequencies(size(), h()); }

double lp_norm(const SampledSignal& f, double r) {
  double acc = 0;
  for (int j = 0; j < f.size(); ++j) {
    double v = vec_norm(f.values.row(j).transpose(), f.p);
    if (std::isinf(r)) acc = std::max(acc, v);
    else acc += std::pow(v, r);
  }
  return std::isinf(r) ? acc : std::pow(f.h() * acc, 1 / r);
}

double parseval_defect(const SampledSignal& f) {
  double worst = 0;
  for (int c = 0; c < f.dim(); ++c) {
    Vec x = f.values.col(c);
    double a = x.squaredNorm(), b = fft(x).squaredNorm();
    worst = std::max(worst, std::abs(a - b) / std::max(a, 1e-300));
  }
  return worst;
}

SampledSignal fourier_multiplier_values(const Vec& symbol, const SampledSignal& f) {
  require(symbol.size() == f.size(), "symbol length must match the grid");
  SampledSignal g = f;
  for (int c = 0; c < f.dim(); ++c) {
    Vec F = fft(f.values.col(c));
    g.values.col(c) = ifft(F.cwiseProduct(symbol));
  }
  return g;
}

SampledSignal fourier_multiplier(const ScalarSymbol& m, const SampledSignal& f) {
  RVec xi = f.frequencies();
  Vec sym(xi.size());
  for (Eigen::Index k = 0; k < xi.size(); ++k) sym[k] = m(xi[k]);
  return fourier_multiplier_values(sym, f);
}

SampledSignal fourier_multiplier(const MatrixSymbol& m, const SampledSignal& f) {
  RVec xi = f.frequencies();
  const int n = f.size(), d = f.dim();
  Mat F(n, d);
  for (int c = 0; c < d; ++c) F.col(c) = fft(f.values.col(c));
  for (int k = 0; k < n; ++k) {
    Mat mk = m(xi[k]);
    require(mk.rows() == d && mk.cols() == d, "matrix symbol has the wrong size");
    F.row(k) = (mk * F.row(k).transpose()).transpose();
  }
  SampledSignal g = f;
  for (int c = 0; c < d; ++c) g.values.col(c) = ifft(F.col(c));
  return g;
}

SampledSignal convolve_atomic(const std::vector<Atom>& atoms, const SampledSignal& f) {
  SampledSignal g = f;
  g.values.setZero();
  const int n = f.size();
  const double h = f.h();
  for (const Atom& a : atoms) {
    double q = a.s / h;
    long k = std::lround(q);
    require(std::abs(q - k) < 1e-9 * std::max(1.0, std::abs(q)), "atom locations must be grid multiples");
    long sh = ((k % n) + n) % n;
    for (int j = 0; j < n; ++j) g.values.row(j) += a.w * f.values.row(static_cast<int>((j - sh + n) % n));
  }
  return g;
}

LittlewoodPaley::LittlewoodPaley(double max_freq, int generator) {
  require(max_freq > 0, "Littlewood-Paley partition needs a positive frequency range");
  require(generator == 0 || generator == 1, "unknown Littlewood-Paley generator");
  c_ = generator == 0 ? 1.0 : 0.25;
  K_ = 1;
  while (std::ldexp(1.0, K_) < max_freq) ++K_;
}

double LittlewoodPaley::chi(double s) const {
  double x = 2 - std::abs(s);
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double a = std::exp(-c_ / x), b = std::exp(-c_ / (1 - x));
  return a / (a + b);
}

double LittlewoodPaley::block(int k, double xi) const {
  if (k == 0) return chi(xi);
  return psi(std::ldexp(std::abs(xi), -k));
}

double LittlewoodPaley::partition_defect(const RVec& freqs) const {
  double worst = 0;
  for (Eigen::Index i = 0; i < freqs.size(); ++i) {
    double s = 0;
    for (int k = 0; k <= K_; ++k) s += block(k, freqs[i]);
    worst = std::max(worst, std::abs(s - 1));
  }
  return worst;
}

double besov_norm(const SampledSignal& f, double r, double p, double q, int generator) {
  require(p >= 1 && q >= 1, "Besov exponents must be >= 1");
  RVec xi = f.frequencies();
  LittlewoodPaley lp(pi / f.h(), generator);
  std::vector<double> terms;
  for (int k = 0; k < lp.blocks(); ++k) {
    Vec sym(xi.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i) sym[i] = lp.block(k, xi[i]);
    terms.push_back(std::pow(2.0, k * r) * lp_norm(fourier_multiplier_values(sym, f), p));
  }
  if (std::isinf(q)) return *std::max_element(terms.begin(), terms.end());
  double acc = 0;
  for (double t : terms) acc += std::pow(t, q);
  return std::pow(acc, 1 / q);
}

SampledSignal random_test_signal(const BenchGrid& grid, int d, double xp, std::uint64_t seed, std::uint64_t trial) {
  auto g = stream_rng(seed + trial, 0);
  SampledSignal f = SampledSignal::zeros(grid.Lg, grid.m, d, xp);
  const int n = f.size();
  const double h = f.h();
  if (trial % 2 == 0) {
    // band-limited Gaussian field, band B = 8, smooth envelope inside the guard band
    RVec xi = f.frequencies();
    const double B = 8, env = 0.25 * grid.Lg;
    for (int c = 0; c < d; ++c) {
      Vec w = gaussian_vec(g, n);
      Vec F = fft(w);
      for (int k = 0; k < n; ++k) F[k] *= std::exp(-0.5 * (xi[k] / B) * (xi[k] / B));
      Vec x = ifft(F);
      for (int j = 0; j < n; ++j) {
        double s = f.node(j);
        x[j] *= std::exp(-0.5 * (s / env) * (s / env));
      }
      f.values.col(c) = x;
    }
  } else {
    double width = uniform(g, 1.5, 6.0) * h;
    double center = uniform(g, -0.3, 0.3) * grid.Lg;
    double freq = uniform(g, 0.0, 0.25) * pi / h;
    Vec amp = gaussian_vec(g, d);
    for (int j = 0; j < n; ++j) {
      double u = (f.node(j) - center) / width;
      cplx v = std::exp(-0.5 * u * u) * std::exp(I1 * freq * (f.node(j) - center));
      f.values.row(j) = (v * amp).transpose();
    }
  }
  return f;
}

namespace {

void finish(BenchReport& rep, const std::vector<double>& raw, const std::vector<double>& raw_sup) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (std::isnan(raw[i])) {
      ++rep.discarded;
      continue;
    }
    rep.ratios.push_back(raw[i]);
    rep.max_ratio = std::max(rep.max_ratio, raw[i]);
    rep.max_ratio_sup = std::max(rep.max_ratio_sup, raw_sup[i]);
  }
  if (!rep.ratios.empty()) {
    std::vector<double> s = rep.ratios;
    std::sort(s.begin(), s.end());
    std::size_t idx = static_cast<std::size_t>(std::ceil(0.95 * s.size())) - 1;
    rep.ratio_p95 = s[std::min(idx, s.size() - 1)];
  }
}

Vec symbol_values(const ScalarSymbol& m, const RVec& xi) {
  Vec v(xi.size());
  for (Eigen::Index k = 0; k < xi.size(); ++k) v[k] = m(xi[k]);
  return v;
}

}  // namespace

BenchReport multiplier_bench_besov(const ScalarSymbol& m, double p, double q, double s, double r, int trials,
                                   std::uint64_t seed, BenchGrid grid, bool shift, Exec ex) {
  require(p >= 1 && q >= 1 && s >= 1, "Besov bench exponents must be >= 1");
  require(1 / p - 1 / q >= 0, "Besov bench needs 1/p - 1/q >= 0");
  require(trials >= 1, "bench needs at least one trial");
  BenchReport rep;
  rep.bench = shift ? "besov" : "besov-unshifted";
  rep.params = {{"p", p}, {"q", q}, {"s", s}, {"r", r}};
  rep.trials = trials;
  rep.grid = grid;
  SampledSignal probe = SampledSignal::zeros(grid.Lg, grid.m);
  Vec sym = symbol_values(m, probe.frequencies());
  rep.sup_norm = sym.cwiseAbs().maxCoeff();
  rep.weighted_sup = rep.sup_norm;
  require(rep.sup_norm > 0, "symbol vanishes on the grid");
  const double src = shift ? r + 1 / p - 1 / q : r;
  std::vector<double> raw = parallel_map<double>(
      trials,
      [&](std::size_t t) {
        SampledSignal f = random_test_signal(grid, 1, 2, seed, t);
        double den = besov_norm(f, src, p, s);
        if (!(den > 1e-12)) return std::nan("");
        return besov_norm(fourier_multiplier_values(sym, f), r, q, s) / (rep.sup_norm * den);
      },
      ex);
  finish(rep, raw, raw);
  return rep;
}

BenchReport multiplier_bench_lp_lq(const ScalarSymbol& m, double p, double q, int trials, std::uint64_t seed,
                                   BenchGrid grid, Exec ex) {
  require(p >= 1 && p <= 2 && q >= 2, "Lp-Lq bench needs p <= 2 <= q");
  require(trials >= 1, "bench needs at least one trial");
  BenchReport rep;
  rep.bench = "lp-lq";
  rep.params = {{"p", p}, {"q", q}};
  rep.trials = trials;
  rep.grid = grid;
  const double gamma = 1 / p - (std::isinf(q) ? 0.0 : 1 / q);
  SampledSignal probe = SampledSignal::zeros(grid.Lg, grid.m);
  RVec xi = probe.frequencies();
  Vec sym = symbol_values(m, xi);
  for (Eigen::Index k = 0; k < xi.size(); ++k) {
    rep.sup_norm = std::max(rep.sup_norm, std::abs(sym[k]));
    rep.weighted_sup = std::max(rep.weighted_sup, std::pow(1 + xi[k] * xi[k], gamma / 2) * std::abs(sym[k]));
  }
  require(std::isfinite(rep.weighted_sup), "weighted symbol sup is not finite");
  require(rep.weighted_sup > 0, "symbol vanishes on the grid");
  std::vector<double> plain = parallel_map<double>(
      trials,
      [&](std::size_t t) {
        SampledSignal f = random_test_signal(grid, 1, 2, seed, t);
        double den = lp_norm(f, p);
        if (!(den > 1e-12)) return std::nan("");
        return lp_norm(fourier_multiplier_values(sym, f), q) / den;
      },
      ex);
  std::vector<double> raw(plain.size()), raw_sup(plain.size());
  for (std::size_t i = 0; i < plain.size(); ++i) {
    raw[i] = plain[i] / rep.weighted_sup;
    raw_sup[i] = plain[i] / rep.sup_norm;
  }
  finish(rep, raw, raw_sup);
  return rep;
}

}  // namespace stripcalc
