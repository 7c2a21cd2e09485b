#include "stripcalc/linalg.hpp"

#include <cmath>

#include "stripcalc/rng.hpp"

namespace stripcalc {

double vec_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  if (p == 1) return x.cwiseAbs().sum();
  if (p == 2) return x.norm();
  double m = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  if (m == 0) return 0;
  double s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1 / p);
}

namespace {

double conj_exp(double p) {
  if (p == 1) return inf;
  if (std::isinf(p)) return 1;
  return p / (p - 1);
}

// norming functional of y in ell^p, as an element of ell^{p'} with unit norm
Vec dual_vector(const Vec& y, double p) {
  double ny = vec_norm(y, p);
  Vec d = Vec::Zero(y.size());
  if (ny == 0) return d;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    double a = std::abs(y[i]);
    if (a == 0) continue;
    d[i] = std::pow(a / ny, p - 1) * (y[i] / a);
  }
  return d;
}

OperatorNorm ascend(const Mat& M, double p, Vec x) {
  double q = conj_exp(p);
  x /= vec_norm(x, p);
  double best = vec_norm(M * x, p);
  Vec arg = x;
  for (int it = 0; it < 200; ++it) {
    Vec y = M * x;
    Vec z = M.adjoint() * dual_vector(y, p);
    double zq = vec_norm(z, q);
    double zx = std::real(z.dot(x));
    if (zq <= zx * (1 + 1e-12)) break;
    Vec nx = dual_vector(z, q);
    double nn = vec_norm(nx, p);
    if (nn == 0) break;
    x = nx / nn;
    double v = vec_norm(M * x, p);
    if (v > best) {
      best = v;
      arg = x;
    } else if (v <= best * (1 + 1e-14)) {
      break;
    }
  }
  return {best, false, arg};
}

}  // namespace

OperatorNorm op_norm(const Mat& M, double p, std::uint64_t seed, int starts) {
  require(p >= 1, "op_norm: p must be >= 1");
  const int n = static_cast<int>(M.cols());
  OperatorNorm r;
  if (n == 0) return r;
  if (p == 1) {
    Eigen::Index j;
    r.value = M.cwiseAbs().colwise().sum().maxCoeff(&j);
    r.certificate = Vec::Unit(n, j);
    r.exact = true;
    return r;
  }
  if (std::isinf(p)) {
    Eigen::Index i;
    r.value = M.cwiseAbs().rowwise().sum().maxCoeff(&i);
    Vec c(n);
    for (int j = 0; j < n; ++j) {
      double a = std::abs(M(i, j));
      c[j] = a > 0 ? std::conj(M(i, j)) / a : cplx(1);
    }
    r.certificate = c;
    r.exact = true;
    return r;
  }
  if (p == 2) {
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinV);
    r.value = svd.singularValues()(0);
    r.certificate = svd.matrixV().col(0);
    r.exact = true;
    return r;
  }
  // vertex heuristic: the best column, then random starts
  Eigen::Index j;
  M.cwiseAbs().colwise().sum().maxCoeff(&j);
  r = ascend(M, p, Vec::Unit(n, j));
  r = std::max(r, ascend(M, p, Vec::Ones(n)), [](auto& a, auto& b) { return a.value < b.value; });
  for (int s = 0; s < starts; ++s) {
    auto g = stream_rng(seed, static_cast<std::uint64_t>(s));
    auto c = ascend(M, p, gaussian_vec(g, n));
    if (c.value > r.value) r = c;
  }
  return r;
}

double op_norm_value(const Mat& M, double p) { return op_norm(M, p).value; }

Mat expm(const Mat& M, double tol) {
  const Eigen::Index n = M.rows();
  double nrm = M.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  Mat B = M / std::ldexp(1.0, s);
  Mat S = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k < 60; ++k) {
    term = term * B / static_cast<double>(k);
    S += term;
    if (term.cwiseAbs().colwise().sum().maxCoeff() <= tol * S.cwiseAbs().colwise().sum().maxCoeff()) break;
  }
  for (int i = 0; i < s; ++i) S = S * S;
  return S;
}

double condition_number(const Mat& V) {
  Eigen::JacobiSVD<Mat> svd(V);
  const auto& sv = svd.singularValues();
  double lo = sv(sv.size() - 1);
  return lo > 0 ? sv(0) / lo : inf;
}

double min_abs(const Vec& v) { return v.size() ? v.cwiseAbs().minCoeff() : inf; }

}  // namespace stripcalc
