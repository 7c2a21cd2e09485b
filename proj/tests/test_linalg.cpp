#include "doctest.h"
#include "stripcalc/fft.hpp"
#include "stripcalc/linalg.hpp"
#include "stripcalc/parallel.hpp"
#include "stripcalc/rng.hpp"

using namespace stripcalc;

TEST_CASE("vector norms") {
  Vec x(3);
  x << cplx(3, 4), -1.0, cplx(0, 2);
  CHECK(vec_norm(x, 1) == doctest::Approx(8));
  CHECK(vec_norm(x, 2) == doctest::Approx(std::sqrt(30.0)));
  CHECK(vec_norm(x, inf) == doctest::Approx(5));
  CHECK(vec_norm(x, 3) == doctest::Approx(std::cbrt(125.0 + 1 + 8)));
}

TEST_CASE("operator norms against closed forms") {
  Mat M(2, 2);
  M << 1.0, -2.0, cplx(0, 3), 4.0;
  CHECK(op_norm_value(M, 1) == doctest::Approx(6));     // max column sum
  CHECK(op_norm_value(M, inf) == doctest::Approx(7));   // max row sum
  Eigen::JacobiSVD<Mat> svd(M);
  CHECK(op_norm_value(M, 2) == doctest::Approx(svd.singularValues()[0]));
  auto r = op_norm(M, 1);
  CHECK(r.exact);
}

TEST_CASE("p-norm ascent is a lower bound that is attained") {
  Mat M = Mat::Random(5, 5);
  auto r = op_norm(M, 3);
  CHECK(vec_norm(M * r.certificate, 3) / vec_norm(r.certificate, 3) == doctest::Approx(r.value).epsilon(1e-10));
  // Riesz-Thorin upper bound
  CHECK(r.value <= std::pow(op_norm_value(M, 1), 1.0 / 3) * std::pow(op_norm_value(M, inf), 2.0 / 3) * (1 + 1e-12));
}

TEST_CASE("expm matches eigen-decomposition and nilpotent series") {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = cplx(0, -1);
  D(1, 1) = cplx(0.5, 2);
  Mat E = expm(D);
  CHECK(std::abs(E(0, 0) - std::exp(cplx(0, -1))) < 1e-14);
  CHECK(std::abs(E(1, 1) - std::exp(cplx(0.5, 2))) < 1e-13);
  Mat N = Mat::Zero(3, 3);
  N(0, 1) = 1;
  N(1, 2) = 1;
  Mat EN = expm(N);
  CHECK(std::abs(EN(0, 2) - 0.5) < 1e-15);
  CHECK(std::abs(EN(0, 1) - 1.0) < 1e-15);
  Mat big = 3.0 * Mat::Random(4, 4);
  Mat prod = expm(big) * expm(-big);
  CHECK((prod - Mat::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("unitary fft round trip and frequencies") {
  auto g = stream_rng(1, 1);
  Vec x = gaussian_vec(g, 64);
  Vec X = fft(x);
  CHECK(std::abs(X.norm() - x.norm()) < 1e-12);
  CHECK((ifft(X) - x).norm() < 1e-13);
  Vec e = Vec::Zero(8);
  e[0] = 1;
  Vec E = fft(e);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(E[k] - 1 / std::sqrt(8.0)) < 1e-15);
  RVec f = fft_frequencies(8, 0.5);
  CHECK(f[1] == doctest::Approx(2 * pi / 4));
  CHECK(f[4] == doctest::Approx(-2 * pi));
  CHECK(f[7] == doctest::Approx(-2 * pi / 4));
  CHECK(is_pow2(64));
  CHECK_FALSE(is_pow2(48));
}

TEST_CASE("block_reduce is bitwise identical serial vs parallel") {
  auto item = [](std::size_t i) { return std::sin(0.1 * i) / (1.0 + i); };
  double a = block_reduce(100003, 64, 0.0, item, Exec::serial);
  double b = block_reduce(100003, 64, 0.0, item, Exec::parallel);
  CHECK(a == b);
}
