#pragma once

#include <string>
#include <vector>

#include "stripcalc/strip_calculus.hpp"

namespace stripcalc {

// Named strip functions:
//   one, exp_group:t, resolvent:lambda, decay_pow:alpha,lambda, pade_err:n,a,t[,shift],
//   pole:c,m  ((ic - z)^{-m}), exp_decay:alpha,lambda,s  (e^{-izs}(lambda+iz)^{-alpha}),
//   blaschke:count,seed  (finite Blaschke product composed with the strip-to-disk map)
StripFunction make_strip_function(const std::string& id, double omega);
bool is_registered_function(const std::string& id);
std::vector<std::string> registered_function_kinds();

// w = tanh(pi z / (4 omega)) maps St_omega onto the unit disk
cplx strip_to_disk(cplx z, double omega);

}  // namespace stripcalc
