#include "stripcalc/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace stripcalc {

namespace {

struct GL20 {
  double x[20], w[20];
  GL20() {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    int k = 0;
    for (std::size_t i = 0; i < ab.size(); ++i) {
      x[k] = -ab[i];
      w[k++] = wt[i];
      x[k] = ab[i];
      w[k++] = wt[i];
    }
  }
};

const GL20& gl20() {
  static const GL20 g;
  return g;
}

}  // namespace

void Rule::append(const Rule& r) {
  s.insert(s.end(), r.s.begin(), r.s.end());
  w.insert(w.end(), r.w.begin(), r.w.end());
}

void add_gl_panel(Rule& r, double a, double b) {
  const GL20& g = gl20();
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < 20; ++i) {
    r.s.push_back(c + h * g.x[i]);
    r.w.push_back(h * g.w[i]);
  }
}

Rule composite_gl(double a, double b, int panels) {
  Rule r;
  double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) add_gl_panel(r, a + i * h, a + (i + 1) * h);
  return r;
}

double gamma_cutoff(double theta, double kappa, double tol) {
  double S = 1 / kappa;
  while (boost::math::gamma_q(theta, kappa * S) > tol) S *= 1.25;
  return S;
}

Rule gamma_rule(double theta, double lambda, double S, double width, int level) {
  const double lg = std::lgamma(theta);
  auto weight = [&](double s) { return std::exp((theta - 1) * std::log(s) - lambda * s - lg); };
  Rule r;
  const double s1 = std::min(1.0, S);
  const double sigma = 0.15;
  const double eps = 1e-7 * s1;
  const int sub = 1 << level;
  // innermost panel: s = u^{1/theta}, s^{theta-1} ds = du / theta
  {
    Rule u;
    double ue = std::pow(eps, theta);
    for (int k = 0; k < sub; ++k) add_gl_panel(u, ue * k / sub, ue * (k + 1) / sub);
    for (std::size_t i = 0; i < u.size(); ++i) {
      double s = std::pow(u.s[i], 1 / theta);
      r.s.push_back(s);
      r.w.push_back(u.w[i] / theta * std::exp(-lambda * s - lg));
    }
  }
  // geometric panels up to s1
  double lo = eps;
  while (lo < s1) {
    double hi = std::min(s1, lo / sigma);
    Rule g;
    for (int k = 0; k < sub; ++k) add_gl_panel(g, lo + (hi - lo) * k / sub, lo + (hi - lo) * (k + 1) / sub);
    for (std::size_t i = 0; i < g.size(); ++i) {
      r.s.push_back(g.s[i]);
      r.w.push_back(g.w[i] * weight(g.s[i]));
    }
    lo = hi;
  }
  if (S > s1) {
    double w = width / sub;
    int panels = std::max(1, static_cast<int>(std::ceil((S - s1) / w)));
    Rule u = composite_gl(s1, S, panels);
    for (std::size_t i = 0; i < u.size(); ++i) {
      r.s.push_back(u.s[i]);
      r.w.push_back(u.w[i] * weight(u.s[i]));
    }
  }
  return r;
}

}  // namespace stripcalc
