#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stripcalc/model_spaces.hpp"
#include "stripcalc/parallel.hpp"
#include "stripcalc/strip_calculus.hpp"

namespace stripcalc {

enum class GeometryKind { type, cotype, rbound };
std::string to_string(GeometryKind k);

// Lower-bound estimate together with the maximizing family.
struct GeometryEstimate {
  GeometryKind kind = GeometryKind::type;
  SpaceSpec space;
  double exponent = 2;
  int trials = 0;
  int mc_samples = 0;
  std::uint64_t seed = 0;
  double estimate = 0;
  std::vector<double> running_max;  // after each trial
  int witness_trial = -1;
  std::vector<Vec> witness;         // family vectors
  std::vector<int> witness_ops;     // operator indices (rbound)
  std::string witness_digest;
};

GeometryEstimate estimate_type_constant(const SpaceSpec& space, double p, int family_size, int trials,
                                        int mc_samples = 2048, std::uint64_t seed = 1, Exec ex = Exec::parallel);
GeometryEstimate estimate_cotype_constant(const SpaceSpec& space, double q, int family_size, int trials,
                                          int mc_samples = 2048, std::uint64_t seed = 1, Exec ex = Exec::parallel);
GeometryEstimate estimate_r_bound(const std::vector<Mat>& ops, const SpaceSpec& space, int family_size, int trials,
                                  int mc_samples = 2048, std::uint64_t seed = 1, Exec ex = Exec::parallel);

// re-evaluates the stored witness with its original random stream
double witness_value(const GeometryEstimate& e, const std::vector<Mat>& ops = {});

// (E ||sum g_k x_k||^2)^{1/2}, Gaussian or Rademacher coefficients; exact enumeration of signs for <= 12 terms
double gaussian_average(const std::vector<Vec>& xs, double p, int mc_samples, std::uint64_t seed, std::uint64_t stream);
double rademacher_average(const std::vector<Vec>& xs, double p, int mc_samples, std::uint64_t seed,
                          std::uint64_t stream);

struct GroupRReport {
  int n = 0;
  double omega = 1;
  double lambda = 2;
  double alpha = 0;
  double theta = 0.5;
  int family_size = 0;
  double estimate_x = 0;       // from X
  double estimate_interp = 0;  // from D_A(theta, 1), rank-one families
  std::vector<double> s;
};

// family {e^{-omega|s|} U(s) (lambda + iA)^{-alpha}}, s on grid multiples with |s| <= S
GroupRReport rbounded_group_experiment(const GroupGenerator& A, double omega, double lambda, double alpha,
                                       double S, int trials, std::uint64_t seed, double theta = 0.5,
                                       int mc_samples = 256, Exec ex = Exec::parallel);

struct SquareFunctionReport {
  double value = 0;     // sup_t E||sum_k r_k f(2^k t A) x|| / ||x||_{theta,1} for log A
  double raw_sup = 0;   // numerator alone
  double interp = 0;
  int k_lo = 0, k_hi = 0;
};
SquareFunctionReport square_function_experiment(const GroupGenerator& A, const SectorFunction& f,
                                                const std::vector<double>& t_grid, int k_lo, int k_hi,
                                                const Vec& x, double theta, int mc_samples = 1024,
                                                std::uint64_t seed = 1);

}  // namespace stripcalc
