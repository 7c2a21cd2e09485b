#include "stripcalc/kfunctional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "stripcalc/fft.hpp"

namespace stripcalc {

namespace {

double conj_exp(double p) {
  if (p == 1) return inf;
  if (std::isinf(p)) return 1;
  return p / (p - 1);
}

Vec soft_threshold(const Vec& v, double tau) {
  Vec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double m = std::abs(v[i]);
    r[i] = m > tau ? v[i] * (1 - tau / m) : cplx(0);
  }
  return r;
}

Vec project_l1_ball(const Vec& v, double r) {
  RVec m = v.cwiseAbs();
  if (m.sum() <= r) return v;
  std::vector<double> s(m.data(), m.data() + m.size());
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0, theta = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    cum += s[k];
    double th = (cum - r) / static_cast<double>(k + 1);
    if (k + 1 == s.size() || s[k + 1] <= th) {
      theta = th;
      break;
    }
  }
  Vec w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) w[i] = m[i] > theta ? v[i] * ((m[i] - theta) / m[i]) : cplx(0);
  return w;
}

// prox of tau*||.||_p for 1 < p < inf, p != 2: phases of v, magnitudes by nested bisection
Vec prox_general(const Vec& v, double tau, double p) {
  double q = conj_exp(p);
  if (vec_norm(v, q) <= tau) return Vec::Zero(v.size());
  RVec mv = v.cwiseAbs();
  auto mags = [&](double N) {
    RVec m(mv.size());
    for (Eigen::Index i = 0; i < mv.size(); ++i) {
      double lo = 0, hi = mv[i];
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid + tau * std::pow(mid / N, p - 1) > mv[i]) hi = mid;
        else lo = mid;
      }
      m[i] = 0.5 * (lo + hi);
    }
    return m;
  };
  auto pnorm = [&](const RVec& m) {
    double s = 0;
    for (Eigen::Index i = 0; i < m.size(); ++i) s += std::pow(m[i], p);
    return std::pow(s, 1 / p);
  };
  double lo = 0, hi = pnorm(mv);
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (pnorm(mags(mid)) > mid) lo = mid;
    else hi = mid;
  }
  RVec m = mags(0.5 * (lo + hi));
  Vec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = mv[i] > 0 ? v[i] * (m[i] / mv[i]) : cplx(0);
  return r;
}

Vec prox_norm(const Vec& v, double tau, double p) {
  if (p == 1) return soft_threshold(v, tau);
  if (p == 2) {
    double n = v.norm();
    return n > tau ? Vec(v * (1 - tau / n)) : Vec(Vec::Zero(v.size()));
  }
  if (std::isinf(p)) return v - project_l1_ball(v, tau);
  return prox_general(v, tau, p);
}

// project onto the radius-r ball of ell^q
Vec clip_dual(const Vec& y, double r, double q) {
  if (std::isinf(q)) {
    Vec c = y;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      double m = std::abs(y[i]);
      if (m > r) c[i] *= r / m;
    }
    return c;
  }
  double n = vec_norm(y, q);
  return n > r ? Vec(y * (r / n)) : y;
}

}  // namespace

struct KFunctional::Impl {
  const GroupGenerator* gen = nullptr;
  double p = 2, q = 2;
  int n = 0;
  bool fft_path = false;
  Vec a;  // scaled symbol a / beta
  Mat A, AH;  // scaled by 1 / beta
  double beta = 1;
  KOptions opt;

  struct State {
    Vec b, z1, z2, z3, u1, u2, u3;
    std::array<double, 3> rho{1, 1, 1};
    double t = 0;
    bool valid = false;
  };

  Vec apply(const Vec& v) const { return fft_path ? ifft(a.cwiseProduct(fft(v))) : Vec(A * v); }
  Vec adjoint(const Vec& v) const { return fft_path ? ifft(a.conjugate().cwiseProduct(fft(v))) : Vec(AH * v); }

  KResult admm(const Vec& x, double t, State& st) const {
    const double alpha = 1.6;
    if (!st.valid) {
      st.b = Vec::Zero(n);
      st.z1 = st.z2 = st.z3 = st.u1 = st.u2 = st.u3 = Vec::Zero(n);
      st.rho = {1, 1, 1};
      st.valid = true;
    }
    st.t = t;
    // third block carries A / beta with weight t * beta
    const double t3 = t * beta;
    auto objective = [&](const Vec& b, const Vec& Ab) {
      return vec_norm(x - b, p) + t * vec_norm(b, p) + t3 * vec_norm(Ab, p);
    };
    auto& rho = st.rho;
    Eigen::LLT<Mat> local;
    auto factor = [&] {
      if (!fft_path) local.compute((rho[0] + rho[1]) * Mat::Identity(n, n) + rho[2] * (AH * A));
    };
    factor();
    double best = vec_norm(x, p);
    double lb = 0;
    KResult res;
    Vec Ab;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
      Vec w = rho[0] * (st.z1 - st.u1) + rho[1] * (st.z2 - st.u2);
      Vec v3 = rho[2] * (st.z3 - st.u3);
      if (fft_path) {
        RVec den = ((rho[0] + rho[1]) + rho[2] * a.cwiseAbs2().array()).matrix();
        Vec bh = (fft(w) + a.conjugate().cwiseProduct(fft(v3))).cwiseQuotient(den.cast<cplx>());
        st.b = ifft(bh);
        Ab = ifft(a.cwiseProduct(bh));
      } else {
        st.b = local.solve(w + AH * v3);
        Ab = A * st.b;
      }
      Vec h1 = alpha * st.b + (1 - alpha) * st.z1;
      Vec h2 = alpha * st.b + (1 - alpha) * st.z2;
      Vec h3 = alpha * Ab + (1 - alpha) * st.z3;
      bool check = (it % 10 == 9);
      Vec z1o, z2o, z3o;
      if (check) {
        z1o = st.z1;
        z2o = st.z2;
        z3o = st.z3;
      }
      st.z1 = x - prox_norm(x - (h1 + st.u1), 1 / rho[0], p);
      st.z2 = prox_norm(h2 + st.u2, t / rho[1], p);
      st.z3 = prox_norm(h3 + st.u3, t3 / rho[2], p);
      st.u1 += h1 - st.z1;
      st.u2 += h2 - st.z2;
      st.u3 += h3 - st.z3;
      if (!check) continue;
      best = std::min(best, objective(st.b, Ab));
      Vec y2 = clip_dual(rho[1] * st.u2, t, q);
      Vec y3 = clip_dual(rho[2] * st.u3, t3, q);
      Vec y1 = y2 + adjoint(y3);
      double ny = vec_norm(y1, q);
      double s = ny > 1 ? 1 / ny : 1.0;
      lb = std::max(lb, s * std::real(y1.dot(x)));
      // second certificate: y from the first multiplier, y2 as the remainder
      Vec yb = clip_dual(-rho[0] * st.u1, 1, q);
      Vec r2 = yb - adjoint(y3);
      double n2 = vec_norm(r2, q);
      double s2 = n2 > t ? t / n2 : 1.0;
      lb = std::max(lb, s2 * std::real(yb.dot(x)));
      if (best - lb <= opt.gap_tol * best) break;
      // per-block residual balancing, frozen late so the iteration settles
      if (it > opt.max_iter / 2) continue;
      double r[3] = {(st.b - st.z1).norm(), (st.b - st.z2).norm(), (Ab - st.z3).norm()};
      double sd[3] = {rho[0] * (st.z1 - z1o).norm(), rho[1] * (st.z2 - z2o).norm(),
                      rho[2] * adjoint(st.z3 - z3o).norm()};
      Vec* us[3] = {&st.u1, &st.u2, &st.u3};
      bool changed = false;
      for (int k = 0; k < 3; ++k) {
        double c = r[k] > 10 * sd[k] ? 2.0 : (sd[k] > 10 * r[k] ? 0.5 : 1.0);
        if (c == 1.0) continue;
        rho[k] *= c;
        *us[k] /= c;
        changed = true;
      }
      if (changed) factor();
    }
    res.value = best;
    res.lower_bound = lb;
    res.rel_gap = best > 0 ? (best - lb) / best : 0;
    res.iterations = it;
    res.converged = res.rel_gap <= opt.gap_tol;
    if (res.rel_gap > opt.fail_gap)
      throw ConvergenceError("K-functional minimizer did not converge (relative duality gap " +
                                 std::to_string(res.rel_gap) + ")",
                             res.rel_gap, it);
    return res;
  }

  KResult eval(const Vec& x, double t, State& st) const {
    require(t > 0, "K-functional needs t > 0");
    KResult r;
    double nx = vec_norm(x, p);
    if (nx == 0) return r;
    if (t >= 1) {
      r.value = r.lower_bound = nx;
      r.closed_form = true;
      return r;
    }
    Vec xn = x / nx;
    if (t * (1 + norm_upper) <= 1) {
      r.value = r.lower_bound = t * (1 + beta * vec_norm(apply(xn), p)) * nx;
      r.closed_form = true;
      return r;
    }
    r = admm(xn, t, st);
    r.value *= nx;
    r.lower_bound *= nx;
    return r;
  }

  double norm_upper = 0;
};

KFunctional::KFunctional(const GroupGenerator& A, KOptions opt) : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.gen = &A;
  m.p = A.exponent();
  m.q = conj_exp(m.p);
  m.n = A.dim();
  m.opt = opt;
  m.fft_path = A.dft_basis() && !A.has_nilpotent();
  if (m.fft_path) {
    m.beta = std::max(1.0, A.eigenvalues().cwiseAbs().maxCoeff());
    m.a = A.eigenvalues() / m.beta;
  } else {
    m.beta = std::max(1.0, op_norm(A.matrix(), 2).value);
    m.A = A.matrix() / m.beta;
    m.AH = m.A.adjoint();
  }
  const Mat& M = A.matrix();
  double n1 = M.cwiseAbs().colwise().sum().maxCoeff();
  double ninf = M.cwiseAbs().rowwise().sum().maxCoeff();
  if (m.p == 1) m.norm_upper = n1;
  else if (std::isinf(m.p)) m.norm_upper = ninf;
  else if (m.p == 2) m.norm_upper = m.fft_path ? m.a.cwiseAbs().maxCoeff() : op_norm(M, 2).value;
  else m.norm_upper = std::pow(n1, 1 / m.p) * std::pow(ninf, 1 - 1 / m.p);  // Riesz-Thorin
  small_t_ = 1 / (1 + m.norm_upper);
}

KFunctional::~KFunctional() = default;
KFunctional::KFunctional(KFunctional&&) noexcept = default;

KResult KFunctional::evaluate(const Vec& x, double t) const {
  Impl::State st;
  return impl_->eval(x, t, st);
}

InterpolationNormReport KFunctional::report(const Vec& x, double theta, int J) const {
  require(theta > 0 && theta < 1, "interpolation parameter theta must lie in (0, 1)");
  require(J >= 1, "dyadic range J must be >= 1");
  InterpolationNormReport rep;
  rep.theta = theta;
  rep.J = J;
  const Impl& m = *impl_;
  double nx = vec_norm(x, m.p);
  if (nx == 0) return rep;
  Vec xn = x / nx;
  const int Jr = J + 5;
  // ascending t so warm starts follow the path
  Impl::State st;
  std::vector<double> terms(2 * Jr + 1, 0.0);
  for (int j = -Jr; j <= Jr; ++j) {
    KResult k = m.eval(xn, std::ldexp(1.0, j), st);
    rep.worst_gap = std::max(rep.worst_gap, k.rel_gap);
    terms[j + Jr] = std::pow(2.0, -j * theta) * k.value;
  }
  double v = 0, vr = 0;
  for (int j = -Jr; j <= Jr; ++j) {
    vr += terms[j + Jr];
    if (std::abs(j) <= J) v += terms[j + Jr];
  }
  rep.value = v * nx;
  rep.refined = vr * nx;
  // min(1,t)||x|| <= K(t,x) <= min(1,t)||x||_{D(A)}
  double c = 0;
  for (int j = -J; j <= J; ++j) c += std::pow(2.0, -j * theta) * std::min(1.0, std::ldexp(1.0, j));
  rep.c_lower = c;
  rep.c_upper = c;
  return rep;
}

double KFunctional::interpolation_norm(const Vec& x, double theta, int J) const {
  require(theta > 0 && theta < 1, "interpolation parameter theta must lie in (0, 1)");
  require(J >= 1, "dyadic range J must be >= 1");
  const Impl& m = *impl_;
  double nx = vec_norm(x, m.p);
  if (nx == 0) return 0;
  Vec xn = x / nx;
  Impl::State st;
  double v = 0;
  for (int j = -J; j <= J; ++j) v += std::pow(2.0, -j * theta) * m.eval(xn, std::ldexp(1.0, j), st).value;
  return v * nx;
}

double k_functional(const GroupGenerator& A, const Vec& x, double t) { return KFunctional(A).evaluate(x, t).value; }

double interpolation_norm(const GroupGenerator& A, const Vec& x, double theta, int J) {
  return KFunctional(A).interpolation_norm(x, theta, J);
}

}  // namespace stripcalc
