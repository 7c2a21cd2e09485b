#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stripcalc/model_spaces.hpp"
#include "stripcalc/parallel.hpp"

namespace stripcalc {

struct StripFunction {
  std::function<cplx(cplx)> eval;
  double omega = 1;                // holomorphic and bounded on |Im z| < omega
  double alpha = 0;                // |f(z)| = O(|z|^{-alpha}); 0 means bounded only
  std::optional<double> sup_norm;  // certified ||f||_{H-infinity(St_omega)}
  std::string name;
  cplx operator()(cplx z) const { return eval(z); }
};

StripFunction product(const StripFunction& f, const StripFunction& g);
StripFunction scaled(cplx c, const StripFunction& f);

struct ContourConfig {
  std::optional<double> inner_height;  // omega'; default: midpoint of (omega0, f.omega)
  double panel_width = 0;              // near-field Gauss-Legendre panel width; 0 = from the margins
  double tol = 1e-9;                   // agreement of successive panel halvings
  double tail_tol = 1e-13;             // far-field interval contribution that ends the tail
  int max_refinements = 6;
  Exec exec = Exec::parallel;
};

struct CalculusResult {
  Mat value;
  double inner_height = 0;
  double quad_change = 0;  // last near-field refinement difference (relative)
  double tail_bound = 0;   // last far-field interval contribution (relative)
  double L_near = 0;
  double L_far = 0;
  long nodes = 0;
  int refinements = 0;
};

// f(A) = 1/(2 pi i) int over the boundary of St_{omega'} of f(z) R(z, A) dz, for f of class E
CalculusResult cauchy_integral(const StripFunction& f, const GroupGenerator& A, const ContourConfig& cfg = {});
Mat cauchy_integral_calculus(const StripFunction& f, const GroupGenerator& A, const ContourConfig& cfg = {});

// (i lambda - A)^2 (e f)(A) with e(z) = (i lambda - z)^{-2}
Mat regularized_calculus(const StripFunction& f, const GroupGenerator& A, double lambda, const ContourConfig& cfg = {});

// tau_k(z) = -k^2 (ik - z)^{-2}
StripFunction tau_function(double k, double omega);
std::vector<Vec> tau_approximants(const StripFunction& f, const GroupGenerator& A,
                                                const std::vector<double>& ks, const Vec& x,
                                                const ContourConfig& cfg = {});

// sampled sup over |Re z| <= X, |Im z| < omega
double sampled_sup_norm(const StripFunction& f, double X = 40, int nx = 801, int ny = 41);
// mean-value property on small circles inside the strip; returns the worst relative defect
double holomorphy_defect(const StripFunction& f, int centers = 12, unsigned seed = 3);

struct SectorFunction {
  std::function<cplx(cplx)> eval;
  double angle = pi / 2;  // holomorphic and bounded on |arg z| < angle
  std::string name;
};
GroupGenerator log_generator(const GroupGenerator& A);
Mat sectorial_via_log(const SectorFunction& f, const GroupGenerator& A, const ContourConfig& cfg = {});

struct HalfPlaneFunction {
  std::function<cplx(cplx)> eval;  // bounded holomorphic on Re z > 0
  std::string name;
};
Mat half_plane_calculus(const HalfPlaneFunction& f, const GroupGenerator& A, std::optional<double> omega = {},
                        const ContourConfig& cfg = {});

}  // namespace stripcalc
