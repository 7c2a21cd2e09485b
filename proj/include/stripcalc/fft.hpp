#pragma once

#include "stripcalc/common.hpp"

namespace stripcalc {

// Unitary DFT: X_k = n^{-1/2} sum_j x_j e^{-2 pi i jk/n}; inverse uses e^{+...}.
Vec fft(const Vec& x);
Vec ifft(const Vec& x);
void fft_inplace(cplx* data, int n, bool inverse);

// Angular frequencies of a length-n grid with spacing h (fftfreq order).
RVec fft_frequencies(int n, double h);

inline bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace stripcalc
