#include "doctest.h"
#include "stripcalc/geometry.hpp"
#include "stripcalc/rng.hpp"

using namespace stripcalc;

TEST_CASE("Gaussian and Rademacher averages") {
  auto g = stream_rng(1, 0);
  std::vector<Vec> xs = {gaussian_vec(g, 4), gaussian_vec(g, 4), gaussian_vec(g, 4)};
  double l2 = std::sqrt(xs[0].squaredNorm() + xs[1].squaredNorm() + xs[2].squaredNorm());
  CHECK(gaussian_average(xs, 2, 64, 1, 0) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(rademacher_average(xs, 2, 64, 1, 0) == doctest::Approx(l2).epsilon(1e-12));
  // exact sign enumeration on ell^1
  double acc = 0;
  for (int mask = 0; mask < 8; ++mask) {
    Vec v = Vec::Zero(4);
    for (int k = 0; k < 3; ++k) v += ((mask >> k) & 1 ? -1.0 : 1.0) * xs[k];
    acc += std::pow(vec_norm(v, 1), 2);
  }
  CHECK(rademacher_average(xs, 1, 64, 1, 0) == doctest::Approx(std::sqrt(acc / 8)).epsilon(1e-12));
  CHECK(gaussian_average({xs[0]}, 1, 64, 1, 0) == doctest::Approx(vec_norm(xs[0], 1)).epsilon(1e-12));
}

TEST_CASE("Hilbert space has type and cotype 2 with constant one") {
  auto t = estimate_type_constant({2, 8}, 2, 8, 16, 512, 3);
  auto c = estimate_cotype_constant({2, 8}, 2, 8, 16, 512, 3);
  CHECK(std::abs(t.estimate - 1) <= 0.05);
  CHECK(std::abs(c.estimate - 1) <= 0.05);
  auto single = estimate_type_constant({1, 8}, 2, 1, 8, 512, 3);
  CHECK(single.estimate == doctest::Approx(1).epsilon(1e-12));
  auto sq = estimate_cotype_constant({inf, 8}, 8, 1, 8, 512, 3);
  CHECK(sq.estimate <= 1 + 1e-12);
}

TEST_CASE("ell^1: type 2 degenerates, cotype 2 stays bounded") {
  double prev = 0;
  for (int n : {2, 4, 8, 16}) {
    auto e = estimate_type_constant({1, n}, 2, n, 16, 1024, 1);
    CHECK(e.estimate > prev);
    prev = e.estimate;
  }
  auto c4 = estimate_cotype_constant({1, 4}, 2, 4, 16, 1024, 1);
  auto c32 = estimate_cotype_constant({1, 32}, 2, 32, 16, 1024, 1);
  CHECK(std::abs(c32.estimate / c4.estimate - 1) <= 0.2);
}

TEST_CASE("R-bounds of trivial and scalar families") {
  auto id = estimate_r_bound({Mat::Identity(3, 3)}, {1, 3}, 4, 8, 256, 2);
  CHECK(id.estimate == doctest::Approx(1).epsilon(1e-12));
  std::vector<Mat> sc = {Mat::Identity(3, 3), -Mat::Identity(3, 3), I1 * Mat::Identity(3, 3)};
  // real unimodular scalars: contraction principle with constant one
  std::vector<Mat> re = {Mat::Identity(3, 3), -Mat::Identity(3, 3), 0.5 * Mat::Identity(3, 3)};
  for (double p : {1.0, 2.0, 4.0}) CHECK(std::abs(estimate_r_bound(re, {p, 3}, 4, 24, 256, 2).estimate - 1) <= 0.05);
  // complex rotations cost up to pi/2 with real Rademacher signs outside Hilbert space
  CHECK(std::abs(estimate_r_bound(sc, {2, 3}, 4, 24, 256, 2).estimate - 1) <= 1e-12);
  for (double p : {1.0, 4.0}) {
    double e = estimate_r_bound(sc, {p, 3}, 4, 24, 256, 2).estimate;
    MESSAGE("complex scalar family on ell^" << p << ": " << e);
    CHECK(e >= 1 - 1e-12);
    CHECK(e <= pi / 2);
  }
  Mat P0 = Mat::Zero(2, 2), P1 = Mat::Zero(2, 2);
  P0(0, 0) = 1;
  P1(1, 1) = 1;
  CHECK(estimate_r_bound({P0, P1}, {2, 2}, 4, 24, 256, 2).estimate <= 1.05);
}

TEST_CASE("witness, running max and serial/parallel agreement") {
  auto a = estimate_type_constant({1, 6}, 2, 6, 12, 256, 9, Exec::serial);
  auto b = estimate_type_constant({1, 6}, 2, 6, 12, 256, 9, Exec::parallel);
  CHECK(a.estimate == b.estimate);
  CHECK(a.witness_digest == b.witness_digest);
  CHECK(witness_value(a) == a.estimate);
  for (std::size_t i = 1; i < a.running_max.size(); ++i) CHECK(a.running_max[i] >= a.running_max[i - 1]);
  CHECK(a.running_max.back() == a.estimate);
  std::vector<Mat> ops = {Mat::Identity(3, 3), 0.5 * Mat::Ones(3, 3)};
  auto r = estimate_r_bound(ops, {1, 3}, 3, 12, 256, 4);
  CHECK(witness_value(r, ops) == r.estimate);
  auto half = estimate_type_constant({1, 6}, 2, 6, 6, 256, 9);
  CHECK(half.estimate <= a.estimate);
}

TEST_CASE("group families") {
  GroupGenerator Z = make_multiplication_group(Vec::Zero(1), Mat::Identity(1, 1), 2);
  auto z = rbounded_group_experiment(Z, 1.0, 2.0, 0.0, 2.0, 4, 1);
  CHECK(z.estimate_x <= 1.05);
  GroupGenerator T2 = make_translation_group(64, 2, 16.0);
  auto h = rbounded_group_experiment(T2, 1.0, 2.0, 0.0, 4.0, 4, 1);
  CHECK(h.estimate_x <= 3.0);
  CHECK(h.family_size > 1);
}

TEST_CASE("square functions") {
  SectorFunction f{[](cplx z) { return z / ((1.0 + z) * (1.0 + z)); }, pi, "z/(1+z)^2"};
  GroupGenerator one = make_multiplication_group(Vec::Constant(1, 1.0), Mat::Identity(1, 1), 2);
  auto zero = square_function_experiment(one, f, {1.0}, 0, 2, Vec::Zero(1), 0.5, 16, 1);
  CHECK(zero.raw_sup == 0);
  // single k: E|r f(2^k t)| = |f(2^k t)|
  for (int k : {-1, 0, 2}) {
    auto s = square_function_experiment(one, f, {1.0}, k, k, Vec::Constant(1, 1.0), 0.5, 16, 1);
    double z = std::ldexp(1.0, k);
    CHECK(s.raw_sup == doctest::Approx(z / ((1 + z) * (1 + z))).epsilon(1e-9));
  }
  Vec ev(4);
  ev << 0.3, 1.0, 2.5, 7.0;
  GroupGenerator D = make_multiplication_group(ev, Mat::Identity(4, 4), 1);
  Vec x = Vec::Ones(4);
  auto a = square_function_experiment(D, f, {1.0, 1.5}, -6, 6, x, 0.5, 512, 1);
  auto b = square_function_experiment(D, f, {1.0, 1.5}, -12, 12, x, 0.5, 512, 1);
  CHECK(std::abs(b.value / a.value - 1) <= 0.1);
}
