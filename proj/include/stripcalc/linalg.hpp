#pragma once

#include <cstdint>

#include "stripcalc/common.hpp"

namespace stripcalc {

// ell^p norm; p = inf allowed
double vec_norm(const Vec& x, double p);

struct OperatorNorm {
  double value = 0;
  bool exact = false;  // false: lower bound attained at `certificate`
  Vec certificate;
};

// Operator norm on ell^p; exact for p in {1, 2, inf}, ascent lower bound otherwise.
OperatorNorm op_norm(const Mat& M, double p, std::uint64_t seed = 7, int starts = 8);
double op_norm_value(const Mat& M, double p);

// Scaling and squaring with a truncated Taylor series.
Mat expm(const Mat& M, double tol = 1e-13);

double condition_number(const Mat& V);

// min over eigenvalues; used as a spectral distance helper
double min_abs(const Vec& v);

}  // namespace stripcalc
