#include "stripcalc/rational.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "stripcalc/kfunctional.hpp"

namespace stripcalc {

RationalFunction RationalFunction::from_exact(std::vector<Rational> num, std::vector<Rational> den, std::string name) {
  require(!num.empty() && !den.empty(), "rational function needs coefficients");
  require(den[0] != 0, "denominator must not vanish at 0");
  RationalFunction r;
  r.num = std::move(num);
  r.den = std::move(den);
  for (const auto& c : r.num) r.num_d.push_back(static_cast<double>(c));
  for (const auto& c : r.den) r.den_d.push_back(static_cast<double>(c));
  r.name = std::move(name);
  return r;
}

cplx RationalFunction::operator()(cplx z) const {
  cplx p = 0, q = 0;
  for (auto it = num_d.rbegin(); it != num_d.rend(); ++it) p = p * z + *it;
  for (auto it = den_d.rbegin(); it != den_d.rend(); ++it) q = q * z + *it;
  return p / q;
}

namespace {

Rational factorial_inv(int k) {
  Rational f = 1;
  for (int j = 2; j <= k; ++j) f *= j;
  return Rational(1) / f;
}

}  // namespace

RationalFunction pade_subdiagonal(int n) {
  require(n >= 0 && n <= 32, "Pade index must lie in [0, 32]");
  // unknowns p_0..p_n, q_1..q_{n+1}; conditions: [z^k](q e^z - p) = 0 for k = 0..2n+1
  const int m = 2 * n + 2;
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m + 1, Rational(0)));
  for (int k = 0; k < m; ++k) {
    if (k <= n) M[k][k] = -1;
    for (int j = 1; j <= std::min(k, n + 1); ++j) M[k][n + j] = factorial_inv(k - j);
    M[k][m] = -factorial_inv(k);
  }
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (M[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw NumericalError("singular order-condition system");
    std::swap(M[c], M[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == c || M[r][c] == 0) continue;
      Rational f = M[r][c] / M[c][c];
      for (int k = c; k <= m; ++k) M[r][k] -= f * M[c][k];
    }
  }
  std::vector<Rational> p(n + 1), q(n + 2);
  q[0] = 1;
  for (int j = 0; j <= n; ++j) p[j] = M[j][m] / M[j][j];
  for (int j = 1; j <= n + 1; ++j) q[j] = M[n + j][m] / M[n + j][n + j];
  if (p[n] == 0 || q[n + 1] == 0) throw NumericalError("order conditions produced a degenerate degree");
  RationalFunction r = RationalFunction::from_exact(p, q, "pade(" + std::to_string(n) + "," + std::to_string(n + 1) + ")");
  r.pade_index = n;
  r.order = 2 * n + 1;
  return r;
}

std::vector<Rational> taylor_residual(const RationalFunction& r, int max_power) {
  std::vector<Rational> s(max_power + 1, Rational(0));
  for (int k = 0; k <= max_power; ++k) {
    Rational v = k < static_cast<int>(r.num.size()) ? r.num[k] : Rational(0);
    for (int j = 1; j <= std::min<int>(k, r.deg_den()); ++j) v -= r.den[j] * s[k - j];
    s[k] = v / r.den[0];
  }
  for (int k = 0; k <= max_power; ++k) s[k] -= factorial_inv(k);
  return s;
}

int approximation_order(const RationalFunction& r, int max_power) {
  auto res = taylor_residual(r, max_power);
  for (int k = 0; k <= max_power; ++k)
    if (res[k] != 0) return k - 1;
  return max_power;
}

StabilityReport check_a_stability(const RationalFunction& r, double y_max, long samples) {
  StabilityReport rep;
  const int d = r.deg_den();
  if (d >= 1) {
    Mat C = Mat::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -r.den_d[i] / r.den_d[d];
    Eigen::ComplexEigenSolver<Mat> es(C);
    if (es.info() != Eigen::Success) throw NumericalError("root finding failed for the denominator");
    rep.poles_in_right_half_plane = true;
    for (int i = 0; i < d; ++i) {
      cplx z = es.eigenvalues()[i];
      cplx q = 0;
      double mag = 0;
      for (int j = d; j >= 0; --j) {
        q = q * z + r.den_d[j];
        mag = mag * std::abs(z) + std::abs(r.den_d[j]);
      }
      rep.max_root_residual = std::max(rep.max_root_residual, std::abs(q) / mag);
      rep.poles.push_back(z);
      if (!(z.real() > 0)) rep.poles_in_right_half_plane = false;
    }
    if (rep.max_root_residual > 1e-8)
      throw NumericalError("root finding residual too large: " + std::to_string(rep.max_root_residual));
  } else {
    rep.poles_in_right_half_plane = true;
  }
  // half uniform, half geometric in |y|
  long nu = samples / 2, ng = samples - nu;
  for (long i = 0; i < nu; ++i) {
    double y = -y_max + 2 * y_max * i / std::max(1L, nu - 1);
    rep.boundary_max = std::max(rep.boundary_max, std::abs(r(cplx(0, y))));
  }
  for (long i = 0; i < ng; ++i) {
    long h = i / 2;
    double y = 1e-4 * std::pow(y_max / 1e-4, static_cast<double>(h) / std::max(1L, ng / 2 - 1));
    if (i % 2) y = -y;
    rep.boundary_max = std::max(rep.boundary_max, std::abs(r(cplx(0, y))));
  }
  rep.samples = samples;
  if (r.deg_num() < r.deg_den()) rep.limit_at_infinity = 0;
  else if (r.deg_num() == r.deg_den()) rep.limit_at_infinity = std::abs(r.num_d.back() / r.den_d.back());
  else rep.limit_at_infinity = inf;
  rep.a_stable = rep.poles_in_right_half_plane && rep.boundary_max <= 1 + 1e-12 && rep.limit_at_infinity <= 1;
  return rep;
}

namespace {

Mat horner(const std::vector<double>& c, const Mat& M) {
  const Eigen::Index n = M.rows();
  Mat R = c.back() * Mat::Identity(n, n);
  for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) {
    R = R * M;
    R.diagonal().array() += c[j];
  }
  return R;
}

void check_lu(const Eigen::PartialPivLU<Mat>& lu) {
  double rc = lu.rcond();
  if (!(rc > 1e-12)) throw ConditioningError("denominator q(-tA) is ill-conditioned", rc);
}

// powers (-A)^j, reused across t
struct PowerCache {
  std::vector<Mat> P;
  PowerCache(const Mat& A, int deg) {
    const Eigen::Index n = A.rows();
    P.push_back(Mat::Identity(n, n));
    for (int j = 1; j <= deg; ++j) P.push_back(-(P.back() * A));
  }
  Mat poly(const std::vector<double>& c, double t) const {
    Mat R = Mat::Zero(P[0].rows(), P[0].cols());
    double tj = 1;
    for (std::size_t j = 0; j < c.size(); ++j) {
      R += (c[j] * tj) * P[j];
      tj *= t;
    }
    return R;
  }
};

}  // namespace

Mat apply_rational(const RationalFunction& r, const Mat& A, double t) {
  Mat M = -t * A;
  Mat P = horner(r.num_d, M);
  Mat Q = horner(r.den_d, M);
  Eigen::PartialPivLU<Mat> lu(Q);
  check_lu(lu);
  return lu.solve(P);
}

std::vector<ScalarRateRow> scalar_rate_check(const std::vector<int>& ns, const std::vector<double>& as, double y_min,
                                             double y_max, int samples) {
  std::vector<ScalarRateRow> out;
  for (int n : ns) {
    RationalFunction r = pade_subdiagonal(n);
    for (double a : as) {
      ScalarRateRow row{n, a, 0, 2 * std::pow(n + 1.0, -a), 0};
      for (int i = 0; i < samples; ++i) {
        double y = y_min * std::pow(y_max / y_min, static_cast<double>(i) / (samples - 1));
        for (double sy : {y, -y}) {
          cplx z(0, sy);
          double v = std::abs(r(-z) - std::exp(-z)) / std::pow(std::abs(sy), a);
          if (v > row.sup) {
            row.sup = v;
            row.worst_y = sy;
          }
        }
      }
      out.push_back(row);
    }
  }
  return out;
}

double type_cotype_gap(double p) {
  double lo = std::min(p, 2.0), hi = std::max(p, 2.0);
  return 1 / lo - (std::isinf(hi) ? 0.0 : 1 / hi);
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  if (x.size() < 2) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

double min_real_eig(const GroupGenerator& A) { return A.eigenvalues().real().minCoeff(); }

}  // namespace

RateReport rate_harness(const GroupGenerator& A, double alpha, double a, const std::vector<double>& t_grid,
                        const std::vector<int>& n_grid, const std::vector<Vec>& x_set) {
  RateReport rep;
  const double p = A.exponent();
  rep.gap = type_cotype_gap(p);
  require(min_real_eig(A) > 0, "rate harness needs spectrum in {Re z >= delta > 0}");
  require(alpha > rep.gap, "alpha must exceed 1/p - 1/q");
  require(a > 0 && a < alpha - rep.gap, "a must lie in (0, alpha - 1/p + 1/q)");
  for (int n : n_grid) require(n > alpha / 2 - 1 && n >= 0, "n must satisfy n > alpha/2 - 1");
  for (double t : t_grid) require(t > 0, "t must be positive");
  rep.target_slope = -a + 0.1;
  rep.lattice_target_slope = -(alpha - rep.gap) + 0.1;

  int nmax = *std::max_element(n_grid.begin(), n_grid.end());
  PowerCache pc(A.matrix(), nmax + 1);
  std::vector<Mat> T;
  for (double t : t_grid) T.push_back(expm(-t * A.matrix()));
  std::vector<Vec> Tx;
  std::vector<double> ax;
  for (const Vec& x : x_set) ax.push_back(A.norm(power_apply(A, alpha, x)));

  std::vector<double> fx, fy;
  for (int n : n_grid) {
    RationalFunction r = pade_subdiagonal(n);
    double worst_norm = 0;
    for (std::size_t it = 0; it < t_grid.size(); ++it) {
      double t = t_grid[it];
      Mat P = pc.poly(r.num_d, t);
      Eigen::PartialPivLU<Mat> lu(pc.poly(r.den_d, t));
      check_lu(lu);
      RateRow row{n, t, 0, 0, -1};
      for (std::size_t ix = 0; ix < x_set.size(); ++ix) {
        if (ax[ix] == 0) continue;
        Vec e = lu.solve(P * x_set[ix]) - T[it] * x_set[ix];
        double err = A.norm(e);
        double bound = 2 * std::pow(t, a) * std::pow(n + 1.0, -a) * ax[ix];
        if (err / bound > row.ratio) row = {n, t, err, bound, err / bound};
        worst_norm = std::max(worst_norm, err / (std::pow(t, a) * ax[ix]));
      }
      if (row.ratio < 0) row.ratio = 0;
      rep.rows.push_back(row);
    }
    rep.normalized.push_back(worst_norm);
    if (worst_norm > rep.floor) {
      fx.push_back(n + 1.0);
      fy.push_back(worst_norm);
    }
  }
  rep.fit_points = static_cast<int>(fx.size());
  if (fx.size() >= 3) {
    rep.slope = fit_loglog_slope(fx, fy);
    rep.pass = rep.slope <= rep.target_slope;
  } else {
    // everything already at the roundoff floor
    rep.slope = -inf;
    rep.pass = true;
  }
  return rep;
}

CayleyReport cayley_power_sweep(const GroupGenerator& A, double theta, int N, const std::vector<Vec>& x_set) {
  require(min_real_eig(A) > 0, "Cayley sweep needs spectrum in {Re z >= delta > 0}");
  require(N >= 2, "Cayley sweep needs N >= 2");
  CayleyReport rep;
  rep.rho.assign(N, 0.0);
  KFunctional K(A);
  const Mat& M = A.matrix();
  const Eigen::Index n = M.rows();
  Eigen::PartialPivLU<Mat> lu(Mat::Identity(n, n) + M);
  check_lu(lu);
  Mat ImA = Mat::Identity(n, n) - M;
  for (const Vec& x : x_set) {
    double y = K.interpolation_norm(x, theta);
    if (y == 0) continue;
    Vec v = x;
    for (int k = 1; k <= N; ++k) {
      v = lu.solve(ImA * v);
      rep.rho[k - 1] = std::max(rep.rho[k - 1], A.norm(v) / y);
    }
  }
  std::vector<double> fx, fy;
  for (int k = 1; k <= N; ++k)
    if (rep.rho[k - 1] > 0) {
      fx.push_back(k);
      fy.push_back(rep.rho[k - 1]);
    }
  rep.slope = fx.size() >= 2 ? fit_loglog_slope(fx, fy) : -inf;
  rep.pass = rep.slope <= 0.05;
  return rep;
}

SchemeReport iterated_scheme_convergence(const RationalFunction& r, const GroupGenerator& A,
                                         const std::vector<double>& t_grid, const std::vector<int>& n_grid,
                                         const std::vector<Vec>& x_set, double theta) {
  require(min_real_eig(A) > 0, "iterated scheme needs spectrum in {Re z >= delta > 0}");
  SchemeReport rep;
  KFunctional K(A);
  std::vector<double> ys;
  for (const Vec& x : x_set) ys.push_back(K.interpolation_norm(x, theta));
  PowerCache pc(A.matrix(), std::max(r.deg_num(), r.deg_den()));
  std::vector<Mat> T;
  for (double t : t_grid) T.push_back(expm(-t * A.matrix()));
  for (int n : n_grid) {
    require(n >= 1, "step count must be >= 1");
    double worst = 0, worst_ratio = 0;
    for (std::size_t it = 0; it < t_grid.size(); ++it) {
      double s = t_grid[it] / n;
      Mat P = pc.poly(r.num_d, s);
      Eigen::PartialPivLU<Mat> lu(pc.poly(r.den_d, s));
      check_lu(lu);
      for (std::size_t ix = 0; ix < x_set.size(); ++ix) {
        Vec v = x_set[ix];
        for (int k = 0; k < n; ++k) v = lu.solve(P * v);
        double e = A.norm(v - T[it] * x_set[ix]);
        worst = std::max(worst, e);
        if (ys[ix] > 0) worst_ratio = std::max(worst_ratio, e / ys[ix]);
      }
    }
    rep.ns.push_back(n);
    rep.errors.push_back(worst);
    rep.ratio_to_interp.push_back(worst_ratio);
    rep.uniform_bound = std::max(rep.uniform_bound, worst_ratio);
  }
  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.errors.size(); ++i)
    if (rep.errors[i] > rep.errors[i - 1] * (1 + 1e-9) + 1e-14) rep.decreasing = false;
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < rep.ns.size(); ++i)
    if (rep.errors[i] > 1e-12) {
      fx.push_back(rep.ns[i]);
      fy.push_back(rep.errors[i]);
    }
  rep.slope = fx.size() >= 2 ? fit_loglog_slope(fx, fy) : -inf;
  return rep;
}

}  // namespace stripcalc
