#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stripcalc/measures.hpp"
#include "stripcalc/parallel.hpp"

namespace stripcalc {

// Samples s_j = -Lg + j h, h = 2 Lg / 2^m; row j holds the X-valued sample.
struct SampledSignal {
  double Lg = 1;
  int m = 8;
  Mat values;     // 2^m x d
  double p = 2;   // exponent of the component space ell^p_d

  static SampledSignal zeros(double Lg, int m, int d = 1, double p = 2);
  int size() const { return 1 << m; }
  int dim() const { return static_cast<int>(values.cols()); }
  double h() const { return 2 * Lg / size(); }
  double node(int j) const { return -Lg + j * h(); }
  RVec frequencies() const;  // angular, fftfreq order
};

// (h sum_j ||f_j||_X^r)^{1/r}
double lp_norm(const SampledSignal& f, double r);
double parseval_defect(const SampledSignal& f);

using ScalarSymbol = std::function<cplx(double)>;
using MatrixSymbol = std::function<Mat(double)>;

// T_m f = F^{-1}(m F f) with F f(xi) = int e^{-i xi s} f(s) ds on the periodic grid
SampledSignal fourier_multiplier(const ScalarSymbol& m, const SampledSignal& f);
SampledSignal fourier_multiplier(const MatrixSymbol& m, const SampledSignal& f);
// symbol given by its values at f.frequencies()
SampledSignal fourier_multiplier_values(const Vec& symbol, const SampledSignal& f);

// (mu * f)(s) = sum_k w_k f(s - s_k), atoms on grid multiples, cyclic
SampledSignal convolve_atomic(const std::vector<Atom>& atoms, const SampledSignal& f);

class LittlewoodPaley {
 public:
  // generator 0: e^{-1/x} plateau, generator 1: steeper e^{-1/(4x)} variant
  LittlewoodPaley(double max_freq, int generator = 0);
  double chi(double s) const;
  double psi(double s) const { return chi(s) - chi(2 * s); }
  double block(int k, double xi) const;  // phi_k(|xi|)
  int blocks() const { return K_ + 1; }
  double partition_defect(const RVec& freqs) const;

 private:
  double c_ = 1;
  int K_ = 0;
};

double besov_norm(const SampledSignal& f, double r, double p, double q, int generator = 0);

struct BenchGrid {
  int m = 12;
  double Lg = 64;
};

struct BenchReport {
  std::string bench;
  std::vector<std::pair<std::string, double>> params;
  int trials = 0;
  int discarded = 0;
  double max_ratio = 0;      // normalized by the weighted sup (Lp-Lq) or ||m||_inf (Besov)
  double ratio_p95 = 0;
  double max_ratio_sup = 0;  // normalized by ||m||_inf
  double weighted_sup = 0;
  double sup_norm = 0;
  BenchGrid grid;
  std::vector<double> ratios;
};

// Random test signals: band-limited Gaussian fields (even trials) and localized atoms (odd trials).
SampledSignal random_test_signal(const BenchGrid& grid, int d, double xp, std::uint64_t seed, std::uint64_t trial);

BenchReport multiplier_bench_besov(const ScalarSymbol& m, double p, double q, double s, double r, int trials,
                                   std::uint64_t seed, BenchGrid grid = {}, bool shift = true,
                                   Exec ex = Exec::parallel);
BenchReport multiplier_bench_lp_lq(const ScalarSymbol& m, double p, double q, int trials, std::uint64_t seed,
                                   BenchGrid grid = {}, Exec ex = Exec::parallel);

}  // namespace stripcalc
