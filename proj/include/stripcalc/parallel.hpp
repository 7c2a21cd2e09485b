#pragma once

#include <cstddef>
#include <vector>

#include <omp.h>

namespace stripcalc {

enum class Exec { serial, parallel };

// Deterministic tree reduction; the association pattern depends only on the length.
template <class T>
T pairwise_sum(std::vector<T>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  T a = pairwise_sum(v, lo, mid);
  T b = pairwise_sum(v, mid, hi);
  return a + b;
}

// Evaluates item(i) for i < n. Items are summed sequentially inside fixed blocks,
// and the block partials are tree-summed, so serial and parallel runs agree bitwise.
template <class T, class F>
T block_reduce(std::size_t n, std::size_t block, const T& zero, F&& item, Exec ex = Exec::parallel) {
  if (n == 0) return zero;
  std::size_t nb = (n + block - 1) / block;
  std::vector<T> partial(nb, zero);
  auto run_block = [&](std::size_t b) {
    T acc = zero;
    std::size_t hi = std::min(n, (b + 1) * block);
    for (std::size_t i = b * block; i < hi; ++i) acc += item(i);
    partial[b] = acc;
  };
  if (ex == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) run_block(static_cast<std::size_t>(b));
  } else {
    for (std::size_t b = 0; b < nb; ++b) run_block(b);
  }
  return pairwise_sum(partial, 0, nb);
}

// Fills out[i] = item(i).
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& item, Exec ex = Exec::parallel) {
  std::vector<T> out(n);
  if (ex == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) out[i] = item(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = item(i);
  }
  return out;
}

}  // namespace stripcalc
