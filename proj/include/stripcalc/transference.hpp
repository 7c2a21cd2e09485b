#pragma once

#include <string>
#include <vector>

#include "stripcalc/harmonic.hpp"
#include "stripcalc/measures.hpp"
#include "stripcalc/strip_calculus.hpp"

namespace stripcalc {

// psi(s) = 1/cosh(2 omega s), phi(s) = (sqrt(8) omega / pi) cosh(omega s) / cosh(2 omega s)
struct TransferenceWeights {
  double omega = 1;
  double S = 12;  // grid half-width
  int m = 12;     // 2^m samples

  static TransferenceWeights make(double omega, double max_abs_s = 0, int m = 12);
  double psi(double s) const;
  double phi(double s) const;
  double convolution(double s) const;  // (phi * psi)(s) by quadrature
  double convolution_residual(int points = 50) const;
};

SampledSignal iota_embed(const GroupGenerator& A, const Vec& x, const TransferenceWeights& w);
Vec p_project(const GroupGenerator& A, const SampledSignal& f, const TransferenceWeights& w);

struct FactorizationReport {
  double discrepancy = 0;  // max_x ||U_mu x - P L ι x|| / ||x||
  double quadrature_only = 0;  // same with mu = delta_0
  double omega = 0;
  double S = 0;
  int m = 0;
};
FactorizationReport factorization_check(const GroupGenerator& A, const WeightedMeasure& mu,
                                        const TransferenceWeights& w, const std::vector<Vec>& xs);

// f(A): spectral mapping for diagonalizable models, regularized contour calculus otherwise
Mat strip_function_of(const StripFunction& f, const GroupGenerator& A, const ContourConfig& cfg = {});
double certified_sup_norm(const StripFunction& f);

struct BatteryRow {
  std::string name;
  double sup_norm = 0;
  double ratio = 0;
  double contour_check = -1;  // relative difference to the contour path, -1 when not run
};

struct BoundReport {
  std::vector<BatteryRow> rows;
  double max_ratio = 0;
  std::string worst;
  double theta = 0;
  int J = 20;
  double max_contour_check = 0;
};

// max_x ||f(A)x|| / (||f||_inf ||x||_{theta,1})
BoundReport certify_interpolation_bound(const GroupGenerator& A, const std::vector<StripFunction>& battery,
                                       const std::vector<Vec>& xs, double theta, int J = 20,
                                       const ContourConfig& cfg = {}, bool contour_check = true);

// max_x ||f(A)x|| / (||f||_inf ||(lambda + iA)^theta x||)
BoundReport certify_fractional_bound(const GroupGenerator& A, const std::vector<StripFunction>& battery,
                                     double lambda, double theta, const std::vector<Vec>& xs);

// f = F mu: compares f(A)x with U_{mu * nu} (lambda + iA)^theta x, nu the gamma density of (theta, lambda)
double fractional_path_check(const GroupGenerator& A, const WeightedMeasure& mu, double lambda, double theta,
                             const std::vector<Vec>& xs);

// ||f(A)|| / sup_z |lambda + iz|^alpha |f(z)| per battery entry; alpha is each function's decay order
BoundReport certify_decay_bound(const GroupGenerator& A, const std::vector<StripFunction>& battery, double lambda);

std::vector<Vec> random_sphere_set(int dim, double p, int count, std::uint64_t seed);

}  // namespace stripcalc
