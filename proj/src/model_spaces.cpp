#include "stripcalc/model_spaces.hpp"

#include <cmath>

#include "stripcalc/fft.hpp"

namespace stripcalc {

void SpaceSpec::validate() const {
  require(p >= 1, "space exponent p must be >= 1");
  require(dim >= 1, "space dimension must be >= 1");
}

Mat dft_basis(int n) {
  Mat V(n, n);
  const double s = 1 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      long jk = (static_cast<long>(j) * k) % n;
      V(j, k) = std::polar(s, 2 * pi * static_cast<double>(jk) / n);
    }
  return V;
}

Mat circulant_from_column(const Vec& col) {
  const int n = static_cast<int>(col.size());
  Mat C(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) C(j, k) = col[(j - k + n) % n];
  return C;
}

namespace {

Vec diag_coef(const Vec& a, const TaylorCoef& c, int k) {
  Vec d(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) d[i] = c(a[i], k);
  return d;
}

// sum_k diag(c_k) N^k y, eigenbasis coordinates
Vec eigen_apply(const Vec& a, const Mat& N, const TaylorCoef& c, const Vec& y) {
  Vec z = diag_coef(a, c, 0).cwiseProduct(y);
  if (N.size() == 0) return z;
  Vec Nk = y;
  for (int k = 1; k <= a.size(); ++k) {
    Nk = N * Nk;
    if (Nk.cwiseAbs().maxCoeff() == 0) break;
    z += diag_coef(a, c, k).cwiseProduct(Nk);
  }
  return z;
}

}  // namespace

GroupGenerator GroupGenerator::from_spectral(const Vec& eigenvalues, const Mat& V, double p, const Mat& nilpotent,
                                             std::optional<double> omega0, bool dft) {
  const Eigen::Index n = eigenvalues.size();
  require(n >= 1, "generator needs at least one eigenvalue");
  require(V.rows() == n && V.cols() == n, "basis must be square and match the eigenvalue count");
  require(p >= 1, "space exponent p must be >= 1");
  GroupGenerator g;
  g.eig_ = eigenvalues;
  g.p_ = p;
  g.V_ = V;
  g.dft_ = dft;
  if (dft) {
    g.Vinv_ = V.adjoint();
    g.cond_ = 1;
  } else {
    g.cond_ = condition_number(V);
    if (!(g.cond_ < 1e12)) throw ConditioningError("eigenbasis numerically singular", g.cond_);
    g.Vinv_ = V.partialPivLu().inverse();
  }
  if (nilpotent.size() > 0) {
    require(nilpotent.rows() == n && nilpotent.cols() == n, "nilpotent part has wrong shape");
    Mat D = eigenvalues.asDiagonal();
    double comm = (D * nilpotent - nilpotent * D).cwiseAbs().maxCoeff();
    require(comm <= 1e-12 * (1 + nilpotent.cwiseAbs().maxCoeff()), "nilpotent part must commute with the eigenvalues");
    Mat P = nilpotent;
    for (Eigen::Index k = 0; k < n; ++k) P = P * nilpotent;
    require(P.cwiseAbs().maxCoeff() <= 1e-12, "nilpotent part is not nilpotent");
    if (nilpotent.cwiseAbs().maxCoeff() > 0) g.N_ = nilpotent;
  }
  double om = eigenvalues.size() ? eigenvalues.imag().cwiseAbs().maxCoeff() : 0.0;
  if (omega0) {
    require(*omega0 >= om - 1e-12, "declared strip height is below max |Im a_j|");
    om = *omega0;
  }
  g.omega0_ = om;
  if (dft && !g.has_nilpotent()) {
    Vec e0 = Vec::Unit(n, 0);
    g.A_ = circulant_from_column(ifft(eigenvalues.cwiseProduct(fft(e0))));
  } else {
    Mat J = Mat(eigenvalues.asDiagonal());
    if (g.has_nilpotent()) J += g.N_;
    g.A_ = V * J * g.Vinv_;
  }
  g.theta_ = om + (g.has_nilpotent() ? 0.1 : 0.0);
  g.M_ = std::max(1.0, empirical_group_bound(g, g.theta_));
  return g;
}

Mat GroupGenerator::spectral(const std::function<cplx(cplx)>& f) const {
  Vec d(eig_.size());
  for (Eigen::Index i = 0; i < eig_.size(); ++i) d[i] = f(eig_[i]);
  if (dft_) {
    Vec e0 = Vec::Unit(eig_.size(), 0);
    return circulant_from_column(ifft(d.cwiseProduct(fft(e0))));
  }
  return V_ * d.asDiagonal() * Vinv_;
}

Mat GroupGenerator::function(const TaylorCoef& c) const {
  if (!has_nilpotent()) return spectral([&](cplx a) { return c(a, 0); });
  const Eigen::Index n = eig_.size();
  Mat F = Mat(diag_coef(eig_, c, 0).asDiagonal());
  Mat Nk = Mat::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Nk = Nk * N_;
    if (Nk.cwiseAbs().maxCoeff() == 0) break;
    F += diag_coef(eig_, c, static_cast<int>(k)).asDiagonal() * Nk;
  }
  return V_ * F * Vinv_;
}

Vec GroupGenerator::apply_function(const TaylorCoef& c, const Vec& x) const {
  if (dft_ && !has_nilpotent()) return ifft(diag_coef(eig_, c, 0).cwiseProduct(fft(x)));
  return V_ * eigen_apply(eig_, N_, c, Vinv_ * x);
}

namespace {

TaylorCoef orbit_coef(double s) {
  return [s](cplx a, int k) {
    cplx v = std::exp(-I1 * s * a);
    for (int j = 1; j <= k; ++j) v *= -I1 * s / static_cast<double>(j);
    return v;
  };
}

}  // namespace

Mat GroupGenerator::orbit(double s) const { return function(orbit_coef(s)); }
Vec GroupGenerator::orbit_apply(double s, const Vec& x) const { return apply_function(orbit_coef(s), x); }

GroupGenerator GroupGenerator::affine(cplx alpha, cplx beta, std::optional<double> omega0) const {
  Vec e = (alpha * eig_.array() + beta).matrix();
  Mat N = has_nilpotent() ? Mat(alpha * N_) : Mat();
  GroupGenerator g = from_spectral(e, V_, p_, N, omega0, dft_);
  g.period_ = period_;
  return g;
}

double empirical_group_bound(const GroupGenerator& A, double theta, double S, int samples) {
  double best = 0;
  const int n = A.dim();
  for (int i = 0; i < samples; ++i) {
    double s = samples > 1 ? -S + 2 * S * i / (samples - 1) : 0.0;
    double nrm;
    if (A.dft_basis() && !A.has_nilpotent()) {
      Vec d(n);
      for (int k = 0; k < n; ++k) d[k] = std::exp(-I1 * s * A.eigenvalues()[k]);
      double p = A.exponent();
      if (p == 2) {
        nrm = d.cwiseAbs().maxCoeff();
      } else {
        Vec col = ifft(d.cwiseProduct(fft(Vec::Unit(n, 0))));
        if (p == 1 || std::isinf(p))
          nrm = col.cwiseAbs().sum();
        else
          nrm = op_norm(circulant_from_column(col), p).value;
      }
    } else {
      nrm = op_norm(A.orbit(s), A.exponent()).value;
    }
    best = std::max(best, nrm * std::exp(-theta * std::abs(s)));
  }
  return best;
}

GroupGenerator make_translation_group(int n, double p, std::optional<double> period) {
  if (!is_pow2(n)) throw SizingError("translation group size must be a power of two, got " + std::to_string(n));
  require(p >= 1, "space exponent p must be >= 1");
  const double P = period.value_or(static_cast<double>(n));
  require(P > 0, "period must be positive");
  const double h = P / n;
  Vec a(n);
  for (int k = 0; k < n; ++k) {
    double ang = 2 * pi * k / n;
    if (ang > pi + 1e-15) ang -= 2 * pi;
    a[k] = ang / h;
  }
  GroupGenerator g = GroupGenerator::from_spectral(a, dft_basis(n), p, Mat(), {}, true);
  g.set_period(P);
  // U(s + h) is an isometric shift, so sampling one cell gives the sup over R
  double M = 0;
  for (int j = 0; j <= 32; ++j) {
    double s = h * j / 32.0;
    Vec d(n);
    for (int k = 0; k < n; ++k) d[k] = std::exp(-I1 * s * a[k]);
    Vec col = ifft(d.cwiseProduct(fft(Vec::Unit(n, 0))));
    double nrm = (p == 1 || std::isinf(p)) ? col.cwiseAbs().sum()
                 : p == 2                  ? d.cwiseAbs().maxCoeff()
                                           : op_norm(circulant_from_column(col), p).value;
    M = std::max(M, nrm);
  }
  g.set_group_data(std::max(1.0, M), 0.0);
  return g;
}

GroupGenerator make_shifted_translation(int n, double p, double delta, std::optional<double> period) {
  GroupGenerator B = make_translation_group(n, p, period);
  return B.affine(I1, delta);
}

GroupGenerator make_multiplication_group(const Vec& eigenvalues, const Mat& V, double p, std::optional<double> omega0) {
  return GroupGenerator::from_spectral(eigenvalues, V, p, Mat(), omega0, false);
}

GroupGenerator make_jordan_block(cplx eigenvalue, int size, double p) {
  require(size >= 1, "Jordan block size must be >= 1");
  Mat N = Mat::Zero(size, size);
  for (int i = 0; i + 1 < size; ++i) N(i, i + 1) = 1;
  return GroupGenerator::from_spectral(Vec::Constant(size, eigenvalue), Mat::Identity(size, size), p, N);
}

Mat group_orbit(const GroupGenerator& A, double s) { return A.orbit(s); }

namespace {

TaylorCoef power_coef(cplx lambda, double theta, cplx scale) {
  // d^k/da^k (lambda + scale a)^theta / k!
  return [=](cplx a, int k) {
    cplx base = lambda + scale * a;
    cplx binom = 1;
    for (int j = 0; j < k; ++j) binom *= (theta - j) / static_cast<double>(j + 1);
    return binom * std::pow(scale, k) * std::pow(base, theta - k);
  };
}

void check_power(const GroupGenerator& A, cplx lambda) {
  require(lambda.real() > A.omega0(), "fractional power needs Re(lambda) > omega0");
  double dist = inf;
  for (Eigen::Index i = 0; i < A.eigenvalues().size(); ++i)
    dist = std::min(dist, std::abs(lambda + I1 * A.eigenvalues()[i]));
  require(dist >= 1e-8, "lambda too close to the shifted spectrum");
}

}  // namespace

Mat fractional_power(const GroupGenerator& A, cplx lambda, double theta) {
  check_power(A, lambda);
  if (theta == 0) return Mat::Identity(A.dim(), A.dim());
  if (theta == 1) return lambda * Mat::Identity(A.dim(), A.dim()) + I1 * A.matrix();
  return A.function(power_coef(lambda, theta, I1));
}

Vec fractional_power_apply(const GroupGenerator& A, cplx lambda, double theta, const Vec& x) {
  check_power(A, lambda);
  if (theta == 0) return x;
  return A.apply_function(power_coef(lambda, theta, I1), x);
}

Vec power_apply(const GroupGenerator& A, double alpha, const Vec& x) {
  for (Eigen::Index i = 0; i < A.eigenvalues().size(); ++i) {
    cplx a = A.eigenvalues()[i];
    require(!(a.real() <= 0 && std::abs(a.imag()) < 1e-14), "power: eigenvalue on the branch cut (-inf, 0]");
  }
  if (alpha == 0) return x;
  if (alpha == 1) return A.matrix() * x;
  return A.apply_function(power_coef(0.0, alpha, 1.0), x);
}

}  // namespace stripcalc
