#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stripcalc/model_spaces.hpp"

namespace stripcalc {

using Rational = boost::multiprecision::cpp_rational;

struct RationalFunction {
  std::vector<Rational> num, den;  // ascending powers, exact
  std::vector<double> num_d, den_d;
  int pade_index = -1;  // n for the (n, n+1) subdiagonal approximant
  int order = -1;       // r(z) - e^z = O(z^{order+1})
  std::string name;

  static RationalFunction from_exact(std::vector<Rational> num, std::vector<Rational> den, std::string name);
  cplx operator()(cplx z) const;
  int deg_num() const { return static_cast<int>(num.size()) - 1; }
  int deg_den() const { return static_cast<int>(den.size()) - 1; }
};

RationalFunction pade_subdiagonal(int n);

// Taylor coefficients of r(z) - e^z for powers 0..max_power, exact
std::vector<Rational> taylor_residual(const RationalFunction& r, int max_power);
int approximation_order(const RationalFunction& r, int max_power = 80);

struct StabilityReport {
  bool a_stable = false;
  bool poles_in_right_half_plane = false;
  double boundary_max = 0;
  double limit_at_infinity = 0;
  double max_root_residual = 0;
  std::vector<cplx> poles;
  long samples = 0;
};
StabilityReport check_a_stability(const RationalFunction& r, double y_max = 1e3, long samples = 10000);

// r(-tA) via Horner in matrix arithmetic and an LU solve
Mat apply_rational(const RationalFunction& r, const Mat& A, double t);

// max over sampled y of |r(-iy) - e^{-iy}| / |y|^a, normalized by 2(n+1)^{-a}
struct ScalarRateRow {
  int n = 0;
  double a = 0;
  double sup = 0;
  double bound = 0;
  double worst_y = 0;
};
std::vector<ScalarRateRow> scalar_rate_check(const std::vector<int>& ns, const std::vector<double>& as,
                                             double y_min = 1e-3, double y_max = 1e4, int samples = 4000);

struct RateRow {
  int n = 0;
  double t = 0;
  double error = 0;
  double bound = 0;  // 2 t^a (n+1)^{-a} ||A^alpha x||
  double ratio = 0;
};

struct RateReport {
  std::vector<RateRow> rows;  // worst x per (n, t)
  std::vector<double> normalized;  // max_t e/(t^a ||A^alpha x||) per n
  double slope = 0;
  int fit_points = 0;
  double floor = 1e-12;
  double target_slope = 0;          // -a + 0.1
  double lattice_target_slope = 0;  // -(alpha - 1/p + 1/q) + 0.1
  double gap = 0;                   // 1/p - 1/q for the ell^p model
  bool pass = false;
};

double type_cotype_gap(double p);  // 1/min(p,2) - 1/max(p,2)

RateReport rate_harness(const GroupGenerator& A, double alpha, double a, const std::vector<double>& t_grid,
                        const std::vector<int>& n_grid, const std::vector<Vec>& x_set);

struct CayleyReport {
  std::vector<double> rho;  // n = 1..N
  double slope = 0;
  bool pass = false;
};
CayleyReport cayley_power_sweep(const GroupGenerator& A, double theta, int N, const std::vector<Vec>& x_set);

struct SchemeReport {
  std::vector<int> ns;
  std::vector<double> errors;        // max over t and x
  std::vector<double> ratio_to_interp;  // max over t, x of error / ||x||_{theta,1}
  double slope = 0;
  double uniform_bound = 0;
  bool decreasing = false;
};
SchemeReport iterated_scheme_convergence(const RationalFunction& r, const GroupGenerator& A,
                                         const std::vector<double>& t_grid, const std::vector<int>& n_grid,
                                         const std::vector<Vec>& x_set, double theta);

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace stripcalc
