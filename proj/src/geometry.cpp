#include "stripcalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "stripcalc/kfunctional.hpp"
#include "stripcalc/rng.hpp"

namespace stripcalc {

std::string to_string(GeometryKind k) {
  switch (k) {
    case GeometryKind::type: return "type";
    case GeometryKind::cotype: return "cotype";
    case GeometryKind::rbound: return "rbound";
  }
  return "?";
}

namespace {

bool hilbert(double p) { return p == 2; }

double sum_pow_norms(const std::vector<Vec>& xs, double space_p, double r) {
  double acc = 0;
  for (const Vec& x : xs) {
    double v = vec_norm(x, space_p);
    acc = std::isinf(r) ? std::max(acc, v) : acc + std::pow(v, r);
  }
  return std::isinf(r) ? acc : std::pow(acc, 1 / r);
}

std::string digest(const std::vector<Vec>& xs, const std::vector<int>& idx) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const void* data, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  for (const Vec& x : xs) feed(x.data(), sizeof(cplx) * x.size());
  for (int i : idx) feed(&i, sizeof i);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Vec sphere_vector(std::mt19937_64& g, int dim, double p) {
  Vec v = gaussian_vec(g, dim);
  return v / vec_norm(v, p);
}

// families for type/cotype: vertex, random sphere, signed vertex with repetition
std::vector<Vec> scalar_geometry_family(const SpaceSpec& sp, int K, std::uint64_t seed, int trial) {
  auto g = stream_rng(seed, 2 * static_cast<std::uint64_t>(trial) + 1);
  std::vector<Vec> xs;
  if (trial == 0) {
    for (int k = 0; k < std::min(K, sp.dim); ++k) xs.push_back(Vec::Unit(sp.dim, k));
  } else if (trial % 2 == 1) {
    for (int k = 0; k < K; ++k) xs.push_back(uniform(g, 0.25, 1.0) * sphere_vector(g, sp.dim, sp.p));
  } else {
    std::uniform_int_distribution<int> pick(0, sp.dim - 1);
    for (int k = 0; k < K; ++k) xs.push_back((uniform(g, 0, 1) < 0.5 ? -1.0 : 1.0) * Vec::Unit(sp.dim, pick(g)));
  }
  return xs;
}

double type_ratio(const std::vector<Vec>& xs, const SpaceSpec& sp, double p, int mc, std::uint64_t seed, int trial) {
  double den = sum_pow_norms(xs, sp.p, p);
  if (den == 0) return 0;
  return gaussian_average(xs, sp.p, mc, seed, 2 * static_cast<std::uint64_t>(trial)) / den;
}

double cotype_ratio(const std::vector<Vec>& xs, const SpaceSpec& sp, double q, int mc, std::uint64_t seed,
                    int trial) {
  double den = gaussian_average(xs, sp.p, mc, seed, 2 * static_cast<std::uint64_t>(trial));
  if (den == 0) return 0;
  return sum_pow_norms(xs, sp.p, q) / den;
}

double rbound_ratio(const std::vector<Mat>& ops, const std::vector<int>& idx, const std::vector<Vec>& xs,
                    const SpaceSpec& sp, int mc, std::uint64_t seed, int trial) {
  std::vector<Vec> ys;
  for (std::size_t k = 0; k < xs.size(); ++k) ys.push_back(ops[idx[k]] * xs[k]);
  auto stream = 2 * static_cast<std::uint64_t>(trial);
  double den = rademacher_average(xs, sp.p, mc, seed, stream);
  if (den == 0) return 0;
  return rademacher_average(ys, sp.p, mc, seed, stream) / den;
}

template <class Family, class Ratio>
GeometryEstimate run_estimator(GeometryEstimate e, int trials, Family&& family, Ratio&& ratio, Exec ex) {
  require(trials >= 1, "estimator needs at least one trial");
  struct Trial {
    double r = 0;
    std::vector<Vec> xs;
    std::vector<int> idx;
  };
  auto results = parallel_map<Trial>(
      trials,
      [&](std::size_t t) {
        Trial tr;
        family(static_cast<int>(t), tr.xs, tr.idx);
        tr.r = ratio(static_cast<int>(t), tr.xs, tr.idx);
        return tr;
      },
      ex);
  e.trials = trials;
  for (int t = 0; t < trials; ++t) {
    if (results[t].r > e.estimate || e.witness_trial < 0) {
      e.estimate = std::max(e.estimate, results[t].r);
      e.witness_trial = t;
      e.witness = results[t].xs;
      e.witness_ops = results[t].idx;
    }
    e.running_max.push_back(e.estimate);
  }
  e.witness_digest = digest(e.witness, e.witness_ops);
  return e;
}

}  // namespace

double gaussian_average(const std::vector<Vec>& xs, double p, int mc, std::uint64_t seed, std::uint64_t stream) {
  if (xs.empty()) return 0;
  if (xs.size() == 1) return vec_norm(xs[0], p);
  if (hilbert(p)) {
    double acc = 0;
    for (const Vec& x : xs) acc += x.squaredNorm();
    return std::sqrt(acc);
  }
  require(mc >= 1, "need at least one Monte-Carlo sample");
  auto g = stream_rng(seed, stream);
  std::normal_distribution<double> nd;
  const Eigen::Index d = xs[0].size();
  double acc = 0;
  Vec s(d);
  for (int i = 0; i < mc; ++i) {
    s.setZero();
    for (const Vec& x : xs) s += nd(g) * x;
    double v = vec_norm(s, p);
    acc += v * v;
  }
  return std::sqrt(acc / mc);
}

double rademacher_average(const std::vector<Vec>& xs, double p, int mc, std::uint64_t seed, std::uint64_t stream) {
  if (xs.empty()) return 0;
  if (xs.size() == 1) return vec_norm(xs[0], p);
  if (hilbert(p)) {
    double acc = 0;
    for (const Vec& x : xs) acc += x.squaredNorm();
    return std::sqrt(acc);
  }
  const std::size_t K = xs.size();
  const Eigen::Index d = xs[0].size();
  Vec s(d);
  double acc = 0;
  if (K <= 12) {
    // first sign fixed by symmetry
    const unsigned long patterns = 1UL << (K - 1);
    for (unsigned long b = 0; b < patterns; ++b) {
      s = xs[0];
      for (std::size_t k = 1; k < K; ++k) s += ((b >> (k - 1)) & 1UL ? -1.0 : 1.0) * xs[k];
      double v = vec_norm(s, p);
      acc += v * v;
    }
    return std::sqrt(acc / patterns);
  }
  require(mc >= 1, "need at least one Monte-Carlo sample");
  auto g = stream_rng(seed, stream);
  for (int i = 0; i < mc; ++i) {
    s.setZero();
    for (std::size_t k = 0; k < K; ++k) s += (g() & 1ULL ? -1.0 : 1.0) * xs[k];
    double v = vec_norm(s, p);
    acc += v * v;
  }
  return std::sqrt(acc / mc);
}

GeometryEstimate estimate_type_constant(const SpaceSpec& space, double p, int family_size, int trials,
                                        int mc_samples, std::uint64_t seed, Exec ex) {
  space.validate();
  require(p >= 1 && p <= 2, "type exponent must lie in [1, 2]");
  require(family_size >= 1, "family size must be positive");
  GeometryEstimate e;
  e.kind = GeometryKind::type;
  e.space = space;
  e.exponent = p;
  e.mc_samples = mc_samples;
  e.seed = seed;
  return run_estimator(
      e, trials,
      [&](int t, std::vector<Vec>& xs, std::vector<int>&) { xs = scalar_geometry_family(space, family_size, seed, t); },
      [&](int t, const std::vector<Vec>& xs, const std::vector<int>&) {
        return type_ratio(xs, space, p, mc_samples, seed, t);
      },
      ex);
}

GeometryEstimate estimate_cotype_constant(const SpaceSpec& space, double q, int family_size, int trials,
                                          int mc_samples, std::uint64_t seed, Exec ex) {
  space.validate();
  require(q >= 2, "cotype exponent must lie in [2, inf)");
  require(family_size >= 1, "family size must be positive");
  GeometryEstimate e;
  e.kind = GeometryKind::cotype;
  e.space = space;
  e.exponent = q;
  e.mc_samples = mc_samples;
  e.seed = seed;
  return run_estimator(
      e, trials,
      [&](int t, std::vector<Vec>& xs, std::vector<int>&) { xs = scalar_geometry_family(space, family_size, seed, t); },
      [&](int t, const std::vector<Vec>& xs, const std::vector<int>&) {
        return cotype_ratio(xs, space, q, mc_samples, seed, t);
      },
      ex);
}

GeometryEstimate estimate_r_bound(const std::vector<Mat>& ops, const SpaceSpec& space, int family_size, int trials,
                                  int mc_samples, std::uint64_t seed, Exec ex) {
  space.validate();
  require(!ops.empty(), "R-bound of an empty family");
  require(family_size >= 1, "family size must be positive");
  for (const Mat& T : ops)
    require(T.rows() == space.dim && T.cols() == space.dim, "all operators must act on the given space");
  GeometryEstimate e;
  e.kind = GeometryKind::rbound;
  e.space = space;
  e.exponent = 2;
  e.mc_samples = mc_samples;
  e.seed = seed;
  const int nops = static_cast<int>(ops.size());
  return run_estimator(
      e, trials,
      [&](int t, std::vector<Vec>& xs, std::vector<int>& idx) {
        auto g = stream_rng(seed, 2 * static_cast<std::uint64_t>(t) + 1);
        int K = 1 + t % family_size;
        std::uniform_int_distribution<int> pick(0, nops - 1);
        for (int k = 0; k < K; ++k) {
          idx.push_back(K == 1 ? (t / family_size) % nops : pick(g));
          xs.push_back(sphere_vector(g, space.dim, space.p));
        }
      },
      [&](int t, const std::vector<Vec>& xs, const std::vector<int>& idx) {
        return rbound_ratio(ops, idx, xs, space, mc_samples, seed, t);
      },
      ex);
}

double witness_value(const GeometryEstimate& e, const std::vector<Mat>& ops) {
  require(e.witness_trial >= 0, "estimate has no witness");
  switch (e.kind) {
    case GeometryKind::type: return type_ratio(e.witness, e.space, e.exponent, e.mc_samples, e.seed, e.witness_trial);
    case GeometryKind::cotype:
      return cotype_ratio(e.witness, e.space, e.exponent, e.mc_samples, e.seed, e.witness_trial);
    case GeometryKind::rbound:
      require(!ops.empty(), "R-bound witness needs the operator family");
      return rbound_ratio(ops, e.witness_ops, e.witness, e.space, e.mc_samples, e.seed, e.witness_trial);
  }
  return 0;
}

GroupRReport rbounded_group_experiment(const GroupGenerator& A, double omega, double lambda, double alpha, double S,
                                       int trials, std::uint64_t seed, double theta, int mc_samples, Exec ex) {
  require(omega > A.theta_u(), "omega must exceed the group type");
  require(alpha >= 0, "alpha must be nonnegative");
  if (alpha > 0) require(lambda > omega, "lambda must exceed omega");
  require(S > 0 && trials >= 1, "need a positive s-range and at least one trial");
  GroupRReport rep;
  rep.n = A.dim();
  rep.omega = omega;
  rep.lambda = lambda;
  rep.alpha = alpha;
  rep.theta = theta;
  // grid multiples for translation models, otherwise 64 samples per unit
  double h = A.period() > 0 ? A.period() / A.dim() : 1.0 / 64;
  int kmax = static_cast<int>(std::floor(S / h + 1e-9));
  for (int k = -kmax; k <= kmax; ++k) rep.s.push_back(k * h);
  rep.family_size = static_cast<int>(rep.s.size());
  KFunctional K(A);
  const int n = A.dim();

  struct Out {
    double x = 0, y = 0;
  };
  auto res = parallel_map<Out>(
      trials,
      [&](std::size_t t) {
        auto g = stream_rng(seed, 2 * t + 1);
        Vec y;
        if (t % 3 == 0) {
          y = Vec::Unit(n, 0);
        } else if (t % 3 == 1) {
          double w = uniform(g, 1.0, 8.0);
          y = Vec(n);
          for (int j = 0; j < n; ++j) {
            double d = std::min(j, n - j) / w;
            y[j] = std::exp(-0.5 * d * d);
          }
        } else {
          y = gaussian_vec(g, n);
        }
        double beta = t == 0 ? omega : uniform(g, 0.5 * omega, 2 * omega);
        Vec z = alpha > 0 ? fractional_power_apply(A, lambda, -alpha, y) : y;
        std::vector<Vec> terms;
        double c2 = 0;
        for (double s : rep.s) {
          cplx c = std::exp(-beta * std::abs(s)) * (t == 0 ? cplx(1) : std::polar(1.0, uniform(g, 0, 2 * pi)));
          c2 += std::norm(c);
          terms.push_back(c * std::exp(-omega * std::abs(s)) * A.orbit_apply(s, z));
        }
        double num = rademacher_average(terms, A.exponent(), mc_samples, seed, 2 * t);
        double cn = std::sqrt(c2);
        return Out{num / (cn * A.norm(y)), num / (cn * K.interpolation_norm(y, theta))};
      },
      ex);
  for (const Out& o : res) {
    rep.estimate_x = std::max(rep.estimate_x, o.x);
    rep.estimate_interp = std::max(rep.estimate_interp, o.y);
  }
  return rep;
}

SquareFunctionReport square_function_experiment(const GroupGenerator& A, const SectorFunction& f,
                                                const std::vector<double>& t_grid, int k_lo, int k_hi,
                                                const Vec& x, double theta, int mc_samples, std::uint64_t seed) {
  require(!A.has_nilpotent(), "square function experiment needs a diagonalizable model");
  require(k_hi >= k_lo, "empty k-range");
  for (Eigen::Index i = 0; i < A.eigenvalues().size(); ++i)
    require(A.eigenvalues()[i].real() > 0 && std::abs(A.eigenvalues()[i].imag()) < 1e-12,
            "square function experiment needs positive spectrum");
  double peak = 0;
  for (int i = -40; i <= 40; ++i) peak = std::max(peak, std::abs(f.eval(std::pow(10.0, i / 10.0))));
  require(peak > 0, "sector function vanishes identically");
  require(std::abs(f.eval(1e-8)) <= 1e-2 * peak && std::abs(f.eval(1e8)) <= 1e-2 * peak,
          "sector function must decay at 0 and infinity");
  SquareFunctionReport rep;
  rep.k_lo = k_lo;
  rep.k_hi = k_hi;
  if (A.norm(x) == 0) return rep;
  for (double t : t_grid) {
    require(t > 0, "t must be positive");
    std::vector<Vec> terms;
    for (int k = k_lo; k <= k_hi; ++k) {
      double sc = std::ldexp(t, k);
      terms.push_back(A.spectral([&](cplx a) { return f.eval(sc * a); }) * x);
    }
    rep.raw_sup = std::max(rep.raw_sup, rademacher_average(terms, A.exponent(), mc_samples, seed, 0));
  }
  rep.interp = interpolation_norm(log_generator(A), x, theta);
  rep.value = rep.raw_sup / rep.interp;
  return rep;
}

}  // namespace stripcalc
