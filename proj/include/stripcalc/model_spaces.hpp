#pragma once

#include <functional>
#include <optional>

#include "stripcalc/common.hpp"
#include "stripcalc/linalg.hpp"

namespace stripcalc {

struct SpaceSpec {
  double p = 2;
  int dim = 1;
  void validate() const;
  double norm(const Vec& x) const { return vec_norm(x, p); }
};

// c(a, k) = f^{(k)}(a) / k!
using TaylorCoef = std::function<cplx(cplx a, int k)>;

class GroupGenerator {
 public:
  GroupGenerator() = default;

  // nilpotent part is given in the eigenbasis and must commute with diag(eigenvalues)
  static GroupGenerator from_spectral(const Vec& eigenvalues, const Mat& V, double p,
                                      const Mat& nilpotent = Mat(), std::optional<double> omega0 = {},
                                      bool dft_basis = false);

  int dim() const { return static_cast<int>(eig_.size()); }
  double exponent() const { return p_; }
  SpaceSpec space() const { return {p_, dim()}; }
  const Vec& eigenvalues() const { return eig_; }
  const Mat& basis() const { return V_; }
  const Mat& basis_inverse() const { return Vinv_; }
  const Mat& nilpotent() const { return N_; }
  bool has_nilpotent() const { return N_.size() > 0; }
  bool dft_basis() const { return dft_; }
  const Mat& matrix() const { return A_; }
  double omega0() const { return omega0_; }
  double group_bound() const { return M_; }
  double theta_u() const { return theta_; }
  double basis_condition() const { return cond_; }
  double period() const { return period_; }

  double norm(const Vec& x) const { return vec_norm(x, p_); }
  double graph_norm(const Vec& x) const { return norm(x) + norm(A_ * x); }

  Mat function(const TaylorCoef& c) const;
  Vec apply_function(const TaylorCoef& c, const Vec& x) const;
  Mat spectral(const std::function<cplx(cplx)>& f) const;  // diagonalizable part only

  Mat orbit(double s) const;
  Vec orbit_apply(double s, const Vec& x) const;

  // same spectral data with eigenvalues a -> alpha*a + beta and N -> alpha*N
  GroupGenerator affine(cplx alpha, cplx beta, std::optional<double> omega0 = {}) const;

  // internal: used by factories
  void set_group_data(double M, double theta) { M_ = M; theta_ = theta; }
  void set_period(double P) { period_ = P; }

 private:
  Vec eig_;
  Mat V_, Vinv_, N_, A_;
  double p_ = 2, omega0_ = 0, M_ = 1, theta_ = 0, cond_ = 1, period_ = 0;
  bool dft_ = false;
};

Mat dft_basis(int n);
Mat circulant_from_column(const Vec& col);

// Cyclic translation group on ell^p(Z_n) with grid spacing period/n (default spacing 1).
GroupGenerator make_translation_group(int n, double p, std::optional<double> period = {});
// delta*I + i*B with B the translation generator
GroupGenerator make_shifted_translation(int n, double p, double delta, std::optional<double> period = {});
GroupGenerator make_multiplication_group(const Vec& eigenvalues, const Mat& V, double p,
                                         std::optional<double> omega0 = {});
GroupGenerator make_jordan_block(cplx eigenvalue, int size, double p);

Mat group_orbit(const GroupGenerator& A, double s);
Mat fractional_power(const GroupGenerator& A, cplx lambda, double theta);
Vec fractional_power_apply(const GroupGenerator& A, cplx lambda, double theta, const Vec& x);
// principal A^alpha x
Vec power_apply(const GroupGenerator& A, double alpha, const Vec& x);

// empirical sup_s ||U(s)|| e^{-theta|s|} over s in [-S, S]
double empirical_group_bound(const GroupGenerator& A, double theta, double S = 4, int samples = 33);

}  // namespace stripcalc
