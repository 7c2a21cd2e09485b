#pragma once

#include <cstdint>
#include <random>

#include "stripcalc/common.hpp"

namespace stripcalc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent generator for (seed, counter); draws never depend on evaluation order.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t counter) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (counter * 0xd1b54a32d192ed03ULL + 1)));
}

inline Vec gaussian_vec(std::mt19937_64& g, int n) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(nd(g), nd(g));
  return v;
}

inline double gaussian(std::mt19937_64& g) {
  std::normal_distribution<double> nd;
  return nd(g);
}

inline double uniform(std::mt19937_64& g, double a, double b) {
  std::uniform_real_distribution<double> u(a, b);
  return u(g);
}

}  // namespace stripcalc
