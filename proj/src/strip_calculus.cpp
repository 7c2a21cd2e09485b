#include "stripcalc/strip_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "stripcalc/quadrature.hpp"

namespace stripcalc {

StripFunction product(const StripFunction& f, const StripFunction& g) {
  StripFunction h;
  auto fe = f.eval, ge = g.eval;
  h.eval = [fe, ge](cplx z) { return fe(z) * ge(z); };
  h.omega = std::min(f.omega, g.omega);
  h.alpha = f.alpha + g.alpha;
  if (f.sup_norm && g.sup_norm && f.omega == g.omega) h.sup_norm = *f.sup_norm * *g.sup_norm;
  h.name = f.name + "*" + g.name;
  return h;
}

StripFunction scaled(cplx c, const StripFunction& f) {
  StripFunction h = f;
  auto fe = f.eval;
  h.eval = [fe, c](cplx z) { return c * fe(z); };
  if (f.sup_norm) h.sup_norm = std::abs(c) * *f.sup_norm;
  return h;
}

namespace {

struct Schur {
  Mat Q, T;
  double normT = 0;
};

Schur schur_of(const Mat& A) {
  Eigen::ComplexSchur<Mat> cs(A);
  Schur s{cs.matrixU(), cs.matrixT(), 0};
  s.normT = A.size() ? Eigen::JacobiSVD<Mat>(A).singularValues()(0) : 0.0;
  return s;
}

Mat resolvent_tri(const Mat& T, cplx z) {
  const Eigen::Index n = T.rows();
  Mat M = -T;
  M.diagonal().array() += z;
  return M.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
}

// sum over both lines of w f(z) (z - T)^{-1}; lower line oriented left to right, upper right to left
Mat near_sum(const StripFunction& f, const Mat& T, double wp, double L, int panels, Exec ex) {
  Rule r = composite_gl(-L, L, panels);
  const Eigen::Index n = T.rows();
  Mat zero = Mat::Zero(n, n);
  return block_reduce(
      2 * r.size(), 32, zero,
      [&](std::size_t i) -> Mat {
        std::size_t j = i / 2;
        bool upper = (i % 2) == 1;
        cplx z(r.s[j], upper ? wp : -wp);
        cplx c = (upper ? -r.w[j] : r.w[j]) * f(z);
        return c * resolvent_tri(T, z);
      },
      ex);
}

using Moments = std::vector<cplx>;

Moments far_interval(const StripFunction& f, double wp, double a, double b, int panels, int K) {
  Moments m(K, 0.0);
  Rule r = composite_gl(a, b, panels);
  for (int side = 0; side < 2; ++side) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      double x = side == 0 ? r.s[j] : -r.s[j];
      for (int line = 0; line < 2; ++line) {
        cplx z(x, line == 0 ? -wp : wp);
        cplx c = (line == 0 ? r.w[j] : -r.w[j]) * f(z);
        cplx zi = 1.0 / z, p = zi;
        for (int k = 0; k < K; ++k) {
          m[k] += c * p;
          p *= zi;
        }
      }
    }
  }
  return m;
}

double moment_size(const Moments& m, double normT) {
  double s = 0, pw = 1;
  for (const cplx& v : m) {
    s += std::abs(v) * pw;
    pw *= normT;
  }
  return s;
}

}  // namespace

CalculusResult cauchy_integral(const StripFunction& f, const GroupGenerator& A, const ContourConfig& cfg) {
  if (!(f.alpha > 1)) throw DomainError("Cauchy integral calculus needs decay exponent alpha > 1 (class E)");
  const double om0 = A.omega0();
  const double wp = cfg.inner_height.value_or(0.5 * (om0 + f.omega));
  if (!(wp > om0 && wp < f.omega)) throw DomainError("contour height must satisfy omega0 < omega' < f.omega");
  double dist = inf;
  for (Eigen::Index i = 0; i < A.eigenvalues().size(); ++i)
    dist = std::min(dist, wp - std::abs(A.eigenvalues()[i].imag()));
  if (dist < 1e-3) throw ConditioningError("contour passes within 1e-3 of the spectrum", dist);
  const double d = std::min(dist, f.omega - wp);

  Schur sc = schur_of(A.matrix());
  const Eigen::Index n = A.dim();
  CalculusResult res;
  res.inner_height = wp;
  const double w0 = cfg.panel_width > 0 ? cfg.panel_width : 1.5 * d;
  const double L = std::max({4 * sc.normT, 4 * wp, 2.0});
  res.L_near = L;
  int panels = std::max(2, static_cast<int>(std::ceil(2 * L / w0)));

  Mat prev = near_sum(f, sc.T, wp, L, panels, cfg.exec);
  Mat cur = prev;
  res.quad_change = inf;
  for (int r = 1; r <= cfg.max_refinements; ++r) {
    panels *= 2;
    cur = near_sum(f, sc.T, wp, L, panels, cfg.exec);
    double scale = std::max(cur.norm(), 1e-300);
    res.quad_change = (cur - prev).norm() / scale;
    res.refinements = r;
    if (res.quad_change <= cfg.tol) break;
    prev = cur;
  }
  res.nodes = 2L * 20 * panels;
  if (res.quad_change > 1e3 * cfg.tol)
    throw ConvergenceError("contour quadrature did not settle under panel halving", res.quad_change, res.refinements);

  // far field: R(z, T) = sum_k T^k z^{-k-1} for |z| >= 4||T||
  int K = 1;
  if (sc.normT > 0) K = std::max(1, static_cast<int>(std::ceil(std::log(1e-17) / std::log(sc.normT / L))));
  Moments M(K, 0.0);
  const double scale = std::max(cur.norm(), 1e-300);
  double a = L, last = inf;
  int quiet = 0, P_last = 2;
  for (int iv = 0; iv < 80; ++iv) {
    double b = 2 * a;
    int P = P_last;
    Moments m1 = far_interval(f, wp, a, b, P, K);
    Moments m2;
    for (;;) {
      m2 = far_interval(f, wp, a, b, 2 * P, K);
      for (const cplx& v : m2)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          throw NumericalError("integrand is not finite on the far contour near |Re z| = " + std::to_string(a));
      Moments diff(K);
      for (int k = 0; k < K; ++k) diff[k] = m2[k] - m1[k];
      res.nodes += 2L * 2 * 20 * 3 * P;
      if (moment_size(diff, sc.normT) <= 0.1 * cfg.tol * scale || P > (1 << 22)) break;
      P *= 2;
      m1 = m2;
    }
    P_last = std::max(2, P);
    for (int k = 0; k < K; ++k) M[k] += m2[k];
    last = moment_size(m2, sc.normT) / scale;
    a = b;
    quiet = last <= cfg.tail_tol ? quiet + 1 : 0;
    if (quiet >= 2) break;
  }
  res.L_far = a;
  res.tail_bound = last;
  Mat far = M[K - 1] * Mat::Identity(n, n);
  for (int k = K - 2; k >= 0; --k) {
    far = far * sc.T;
    far.diagonal().array() += M[k];
  }
  Mat S = (cur + far) / (2 * pi * I1);
  res.value = sc.Q * S * sc.Q.adjoint();
  return res;
}

Mat cauchy_integral_calculus(const StripFunction& f, const GroupGenerator& A, const ContourConfig& cfg) {
  return cauchy_integral(f, A, cfg).value;
}

Mat regularized_calculus(const StripFunction& f, const GroupGenerator& A, double lambda, const ContourConfig& cfg) {
  if (!(lambda > f.omega)) throw DomainError("regularizer needs lambda > f.omega");
  StripFunction e;
  e.eval = [lambda](cplx z) {
    cplx d = I1 * lambda - z;
    return 1.0 / (d * d);
  };
  e.omega = f.omega;
  e.alpha = 2;
  e.name = "regularizer";
  StripFunction g = product(e, f);
  g.alpha = 2 + f.alpha;
  Mat G = cauchy_integral_calculus(g, A, cfg);
  Mat B = I1 * lambda * Mat::Identity(A.dim(), A.dim()) - A.matrix();
  return B * B * G;
}

StripFunction tau_function(double k, double omega) {
  StripFunction t;
  t.eval = [k](cplx z) {
    cplx d = I1 * k - z;
    return -k * k / (d * d);
  };
  t.omega = omega;
  t.alpha = 2;
  t.sup_norm = k * k / ((k - omega) * (k - omega));
  t.name = "tau:" + std::to_string(k);
  return t;
}

std::vector<Vec> tau_approximants(const StripFunction& f, const GroupGenerator& A,
                                                const std::vector<double>& ks, const Vec& x,
                                                const ContourConfig& cfg) {
  std::vector<Vec> out;
  for (double k : ks) {
    require(k > f.omega, "approximant index needs k > f.omega");
    StripFunction g = product(f, tau_function(k, f.omega));
    g.alpha = f.alpha + 2;
    out.push_back(cauchy_integral_calculus(g, A, cfg) * x);
  }
  return out;
}

double sampled_sup_norm(const StripFunction& f, double X, int nx, int ny) {
  double best = 0;
  for (int j = 0; j < ny; ++j) {
    double y = f.omega * (-1 + 2.0 * (j + 0.5) / ny) * (1 - 1e-9);
    for (int i = 0; i < nx; ++i) {
      double x = -X + 2 * X * i / (nx - 1);
      best = std::max(best, std::abs(f(cplx(x, y))));
    }
  }
  // boundary rows
  for (double y : {f.omega * (1 - 1e-9), -f.omega * (1 - 1e-9)})
    for (int i = 0; i < nx; ++i) best = std::max(best, std::abs(f(cplx(-X + 2 * X * i / (nx - 1), y))));
  return best;
}

double holomorphy_defect(const StripFunction& f, int centers, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> ux(-5, 5), uy(-0.5, 0.5);
  double worst = 0;
  for (int c = 0; c < centers; ++c) {
    cplx z0(ux(g), uy(g) * f.omega);
    double r = 0.4 * (f.omega - std::abs(z0.imag()));
    const int m = 64;
    cplx mean = 0;
    for (int k = 0; k < m; ++k) mean += f(z0 + std::polar(r, 2 * pi * k / m));
    mean /= static_cast<double>(m);
    cplx v = f(z0);
    worst = std::max(worst, std::abs(mean - v) / std::max(std::abs(v), 1e-12));
  }
  return worst;
}

GroupGenerator log_generator(const GroupGenerator& A) {
  Vec l(A.dim());
  for (int i = 0; i < A.dim(); ++i) {
    cplx a = A.eigenvalues()[i];
    if (a.real() <= 0 && std::abs(a.imag()) < 1e-14)
      throw DomainError("branch error: eigenvalue on (-inf, 0]");
    l[i] = std::log(a);
  }
  Mat N;
  if (A.has_nilpotent()) {
    // log(D + N) - log(D) = sum_{k>=1} (-1)^{k+1} D^{-k} N^k / k
    const int n = A.dim();
    N = Mat::Zero(n, n);
    Mat Nk = Mat::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
      Nk = Nk * A.nilpotent();
      if (Nk.cwiseAbs().maxCoeff() == 0) break;
      Vec c(n);
      for (int i = 0; i < n; ++i) c[i] = (k % 2 ? 1.0 : -1.0) / (static_cast<double>(k) * std::pow(A.eigenvalues()[i], k));
      N += c.asDiagonal() * Nk;
    }
  }
  return GroupGenerator::from_spectral(l, A.basis(), A.exponent(), N, {}, A.dft_basis());
}

Mat sectorial_via_log(const SectorFunction& f, const GroupGenerator& A, const ContourConfig& cfg) {
  for (int i = 0; i < A.dim(); ++i)
    require(A.eigenvalues()[i].real() > 0 || std::abs(A.eigenvalues()[i].imag()) > 1e-14,
            "branch error: eigenvalue on (-inf, 0]");
  GroupGenerator L = log_generator(A);
  require(f.angle > L.omega0(), "sector angle must exceed the spectral angle");
  require(f.angle <= pi, "sector angle must not exceed pi");
  // regularize with sech(w/2), which decays exponentially and has its poles at +-i pi;
  // cosh(L/2) = (A^{1/2} + A^{-1/2})/2 undoes it
  const double w = std::min(f.angle, 0.999 * pi);
  require(w > L.omega0(), "sector angle must exceed the spectral angle");
  StripFunction g;
  auto fe = f.eval;
  g.eval = [fe](cplx z) {
    if (std::abs(z.real()) > 700) return cplx(0);
    return fe(std::exp(z)) / std::cosh(0.5 * z);
  };
  g.omega = w;
  g.alpha = 64;
  g.name = "log-substituted " + f.name;
  Mat c = 0.5 * (expm(0.5 * L.matrix()) + expm(-0.5 * L.matrix()));
  return c * cauchy_integral(g, L, cfg).value;
}

Mat half_plane_calculus(const HalfPlaneFunction& f, const GroupGenerator& A, std::optional<double> omega,
                        const ContourConfig& cfg) {
  const RVec re = A.eigenvalues().real();
  double dmin = re.size() ? re.minCoeff() : 1.0, dmax = re.size() ? re.maxCoeff() : 1.0;
  if (!(dmin > 1e-12)) throw DomainError("spectrum touches the imaginary axis");
  const double w = omega.value_or(dmax + dmin);
  require(dmax < 2 * w, "half-plane shift omega too small for the spectrum");
  // B = -i(A - w) has |Im| <= max|w - Re a_j| < w
  GroupGenerator B = A.affine(-I1, I1 * w);
  StripFunction g;
  auto fe = f.eval;
  g.eval = [fe, w](cplx z) { return fe(I1 * z + w); };
  g.omega = w;
  g.name = "shifted " + f.name;
  return regularized_calculus(g, B, 2 * w, cfg);
}

}  // namespace stripcalc
