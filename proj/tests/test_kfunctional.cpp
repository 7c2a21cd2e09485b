#include "doctest.h"
#include "stripcalc/kfunctional.hpp"
#include "stripcalc/rng.hpp"

using namespace stripcalc;

TEST_CASE("zero vector") {
  GroupGenerator A = make_translation_group(8, 1);
  for (double t : {1e-3, 1.0, 1e3}) CHECK(k_functional(A, Vec::Zero(8), t) == 0);
  CHECK(interpolation_norm(A, Vec::Zero(8), 0.5) == 0);
}

TEST_CASE("large t gives the X norm, small t the graph norm") {
  GroupGenerator A = make_translation_group(8, 1);
  auto g = stream_rng(3, 0);
  Vec x = gaussian_vec(g, 8);
  KFunctional K(A);
  CHECK(K.evaluate(x, 1e6).value == doctest::Approx(A.norm(x)).epsilon(1e-7));
  double t = 0.5 * K.small_t_threshold();
  KResult r = K.evaluate(x, t);
  CHECK(r.closed_form);
  CHECK(r.value == doctest::Approx(t * A.graph_norm(x)).epsilon(1e-12));
}

TEST_CASE("one-dimensional closed form") {
  for (double a : {0.0, 0.7, -3.0}) {
    Vec ev = Vec::Constant(1, a);
    GroupGenerator A = make_multiplication_group(ev, Mat::Identity(1, 1), 2);
    Vec x = Vec::Constant(1, cplx(1.5, -2));
    double nx = std::abs(x[0]);
    double sum = 0;
    for (int j = -20; j <= 20; ++j) {
      double t = std::ldexp(1.0, j);
      double k = nx * std::min(1.0, t * (1 + std::abs(a)));
      CHECK(k_functional(A, x, t) == doctest::Approx(k).epsilon(1e-7));
      sum += std::pow(2.0, -0.4 * j) * k;
    }
    CHECK(interpolation_norm(A, x, 0.4, 20) == doctest::Approx(sum).epsilon(1e-7));
  }
}

TEST_CASE("separable ell^1 diagonal closed form") {
  Vec ev(3);
  ev << 0.5, -2.0, 4.0;
  GroupGenerator A = make_multiplication_group(ev, Mat::Identity(3, 3), 1);
  Vec x(3);
  x << 1.0, cplx(0, -0.5), 2.0;
  for (double t : {0.05, 0.3, 0.9}) {
    double k = 0;
    for (int i = 0; i < 3; ++i) k += std::abs(x[i]) * std::min(1.0, t * (1 + std::abs(ev[i])));
    CHECK(k_functional(A, x, t) == doctest::Approx(k).epsilon(1e-6));
  }
}

TEST_CASE("two-dimensional ell^2 model against a lattice search") {
  Vec ev(2);
  ev << 0.5, 3.0;
  GroupGenerator A = make_multiplication_group(ev, Mat::Identity(2, 2), 2);
  Vec x(2);
  x << 1.0, 0.6;
  const double t = 0.4;
  // real data: the optimal split can be taken real
  double best = inf;
  const double h = 0.002;
  for (double b0 = -0.2; b0 <= 1.2; b0 += h)
    for (double b1 = -0.2; b1 <= 0.8; b1 += h) {
      double a = std::hypot(1.0 - b0, 0.6 - b1);
      double v = a + t * (std::hypot(b0, b1) + std::hypot(0.5 * b0, 3.0 * b1));
      best = std::min(best, v);
    }
  KResult r = KFunctional(A).evaluate(x, t);
  CHECK(r.value <= best + 1e-9);
  CHECK(r.value >= best - 5e-3);
  CHECK(r.lower_bound <= r.value * (1 + 1e-12));
}

TEST_CASE("interpolation norm is homogeneous and sits between X and the graph norm") {
  GroupGenerator A = make_translation_group(16, 1);
  auto g = stream_rng(5, 0);
  Vec x = gaussian_vec(g, 16);
  KFunctional K(A);
  double v = K.interpolation_norm(x, 0.5);
  CHECK(K.interpolation_norm(2.0 * x, 0.5) == doctest::Approx(2 * v).epsilon(1e-12));
  InterpolationNormReport rep = K.report(x, 0.5);
  CHECK(rep.value == doctest::Approx(v).epsilon(1e-9));
  CHECK(v >= rep.c_lower * A.norm(x) * (1 - 1e-9));
  CHECK(v <= rep.c_upper * A.graph_norm(x) * (1 + 1e-9));
  CHECK(std::abs(rep.refined - rep.value) / rep.value < 1e-3);
}

TEST_CASE("invalid theta is a domain error") {
  GroupGenerator A = make_translation_group(8, 1);
  CHECK_THROWS_AS(interpolation_norm(A, Vec::Ones(8), 1.0), DomainError);
  CHECK_THROWS_AS(interpolation_norm(A, Vec::Ones(8), 0.0), DomainError);
}
