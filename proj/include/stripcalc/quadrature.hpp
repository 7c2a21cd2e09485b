#pragma once

#include <vector>

namespace stripcalc {

struct Rule {
  std::vector<double> s;
  std::vector<double> w;
  void append(const Rule& r);
  std::size_t size() const { return s.size(); }
};

// 20-point Gauss-Legendre on [a, b]
void add_gl_panel(Rule& r, double a, double b);
Rule composite_gl(double a, double b, int panels);

// Rule for  int_0^S g(s) s^{theta-1} e^{-lambda s} / Gamma(theta) ds  (the weight is folded into w).
// Graded panels at 0 (substitution u = s^theta on the innermost one), uniform panels of width
// `width / 2^level` beyond s = 1.
Rule gamma_rule(double theta, double lambda, double S, double width, int level);

// smallest S with relative tail mass Q(theta, kappa S) below tol
double gamma_cutoff(double theta, double kappa, double tol = 1e-14);

}  // namespace stripcalc
