#pragma once

#include <memory>

#include "stripcalc/model_spaces.hpp"

namespace stripcalc {

struct KOptions {
  double gap_tol = 1e-8;   // relative duality gap for termination
  int max_iter = 20000;
  double fail_gap = 1e-3;  // above this after max_iter: ConvergenceError
};

struct KResult {
  double value = 0;        // primal objective (upper bound)
  double lower_bound = 0;  // dual objective
  double rel_gap = 0;
  int iterations = 0;
  bool converged = true;
  bool closed_form = false;
};

struct InterpolationNormReport {
  double theta = 0.5;
  int q = 1;
  int J = 20;
  double value = 0;
  double refined = 0;       // same sum with J + 5
  double c_lower = 0;       // value >= c_lower * ||x||
  double c_upper = 0;       // value <= c_upper * ||x||_{D(A)}
  double worst_gap = 0;
};

// K(t, x; X, D(A)) = inf_{x = a + b} ||a|| + t(||b|| + ||Ab||)
class KFunctional {
 public:
  explicit KFunctional(const GroupGenerator& A, KOptions opt = {});
  ~KFunctional();
  KFunctional(KFunctional&&) noexcept;

  KResult evaluate(const Vec& x, double t) const;
  double interpolation_norm(const Vec& x, double theta, int J = 20) const;
  InterpolationNormReport report(const Vec& x, double theta, int J = 20) const;

  // t(1 + ||A||) <= 1 implies K = t ||x||_{D(A)}
  double small_t_threshold() const { return small_t_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double small_t_ = 0;
};

double k_functional(const GroupGenerator& A, const Vec& x, double t);
double interpolation_norm(const GroupGenerator& A, const Vec& x, double theta, int J = 20);

}  // namespace stripcalc
