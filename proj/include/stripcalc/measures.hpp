#pragma once

#include <vector>

#include "stripcalc/model_spaces.hpp"
#include "stripcalc/parallel.hpp"

namespace stripcalc {

struct Atom {
  double s = 0;
  cplx w = 1;
};

// coeff * (s - shift)^{theta-1} e^{-lambda (s - shift)} / Gamma(theta) on s > shift
struct GammaTerm {
  cplx coeff = 1;
  double theta = 1;
  double lambda = 1;
  double shift = 0;
};

class WeightedMeasure {
 public:
  std::vector<Atom> atoms;
  std::vector<GammaTerm> gammas;
  double omega = inf;       // admissible exponential weight
  bool omega_open = false;  // only weights strictly below omega are admissible
  double grid_h = 0;        // > 0 when atoms came from a grid convolution

  bool admits(double w) const { return omega_open ? w < omega : w <= omega; }
  bool has_density() const { return !gammas.empty(); }
  bool is_zero() const;
  cplx density(double s) const;
  double max_abs_location() const;  // over atoms and term shifts
  void cap_omega(double w);
};

WeightedMeasure dirac(double s, cplx w = 1.0);
WeightedMeasure atomic_measure(std::vector<Atom> atoms);
WeightedMeasure gamma_density_measure(double theta, double lambda);
WeightedMeasure operator+(const WeightedMeasure& a, const WeightedMeasure& b);
WeightedMeasure operator*(cplx c, const WeightedMeasure& a);

// density terms discretized into weighted nodes, valid for integrands bounded by
// e^{growth s} and oscillating with frequency up to max_freq
struct DensityNodes {
  std::vector<double> s;
  std::vector<cplx> w;
  int level = 0;
  double change = 0;  // last refinement difference at the probe points
};
DensityNodes density_nodes(const WeightedMeasure& mu, double growth, double max_freq, double tol = 1e-10);

double total_variation_norm(const WeightedMeasure& mu, double omega);
cplx fourier_transform(const WeightedMeasure& mu, cplx z);
std::vector<cplx> fourier_transform(const WeightedMeasure& mu, const std::vector<cplx>& z);
WeightedMeasure cosh_weight(const WeightedMeasure& mu, double omega);
WeightedMeasure convolve(const WeightedMeasure& mu, const WeightedMeasure& nu, double grid_h = 1e-3);

Mat hille_phillips(const GroupGenerator& A, const WeightedMeasure& mu, Exec ex = Exec::parallel);
Vec hille_phillips_apply(const GroupGenerator& A, const WeightedMeasure& mu, const Vec& x, Exec ex = Exec::parallel);

}  // namespace stripcalc
