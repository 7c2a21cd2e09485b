#include "doctest.h"
#include "stripcalc/rational.hpp"
#include "stripcalc/serialize.hpp"
#include "stripcalc/transference.hpp"

using namespace stripcalc;

namespace {
GroupGenerator scalar(cplx a) { return make_multiplication_group(Vec::Constant(1, a), Mat::Identity(1, 1), 2); }
}

TEST_CASE("low-order subdiagonal Pade approximants") {
  RationalFunction r0 = pade_subdiagonal(0);
  CHECK(r0.num == std::vector<Rational>{1});
  CHECK(r0.den == std::vector<Rational>{1, -1});
  RationalFunction r1 = pade_subdiagonal(1);
  CHECK(r1.num == std::vector<Rational>{1, Rational(1, 3)});
  CHECK(r1.den == std::vector<Rational>{1, Rational(-2, 3), Rational(1, 6)});
  auto res = taylor_residual(r1, 4);
  for (int k = 0; k <= 3; ++k) CHECK(res[k] == 0);
  CHECK(res[4] != 0);
}

TEST_CASE("exact approximation order") {
  for (int n = 0; n <= 8; ++n) {
    RationalFunction r = pade_subdiagonal(n);
    CHECK(r.deg_num() == n);
    CHECK(r.deg_den() == n + 1);
    CHECK(approximation_order(r) == 2 * n + 1);
    auto res = taylor_residual(r, 2 * n + 2);
    CHECK(res[2 * n + 2] != 0);
  }
}

TEST_CASE("A-stability") {
  StabilityReport s0 = check_a_stability(pade_subdiagonal(0));
  REQUIRE(s0.poles.size() == 1);
  CHECK(std::abs(s0.poles[0] - 1.0) < 1e-14);
  for (double y : {0.0, 0.5, 7.0}) CHECK(std::abs(pade_subdiagonal(0)(I1 * y)) == doctest::Approx(1 / std::hypot(1, y)));
  for (int n = 0; n <= 20; ++n) {
    StabilityReport s = check_a_stability(pade_subdiagonal(n), 1e3, 10000);
    CHECK(s.a_stable);
    CHECK(s.poles_in_right_half_plane);
    CHECK(s.boundary_max <= 1 + 1e-12);
    CHECK(s.limit_at_infinity == 0);
  }
  auto poly = RationalFunction::from_exact({1, 1, Rational(1, 2)}, {1}, "taylor2");
  CHECK_FALSE(check_a_stability(poly).a_stable);
}

TEST_CASE("matrix evaluation") {
  auto one = RationalFunction::from_exact({1}, {1}, "one");
  Mat A = Mat::Random(5, 5);
  CHECK((apply_rational(one, A, 0.7) - Mat::Identity(5, 5)).norm() < 1e-15);
  CHECK(std::abs(apply_rational(pade_subdiagonal(0), Mat::Ones(1, 1), 1)(0, 0) - 0.5) < 1e-15);
  GroupGenerator B = model_from_json({{"kind", "random-diagonalizable"}, {"n", 8}, {"p", 2}, {"omega0", 0.3}, {"seed", 3}});
  GroupGenerator C = B.affine(I1, 1.5);  // spectrum shifted into the right half-plane
  RationalFunction r = pade_subdiagonal(3);
  const double t = 0.8;
  Mat expect = C.spectral([&](cplx a) { return r(-t * a); });
  Mat got = apply_rational(r, C.matrix(), t);
  CHECK((got - expect).norm() / expect.norm() < 1e-10);
  CHECK_THROWS_AS(apply_rational(pade_subdiagonal(0), -Mat::Ones(1, 1), 1), ConditioningError);
}

TEST_CASE("scalar rate bound") {
  auto rows = scalar_rate_check({1, 2, 5, 10, 20}, {0.25, 0.5, 0.75});
  for (const auto& row : rows) {
    CHECK(row.sup <= row.bound);
    CHECK(row.bound == doctest::Approx(2 * std::pow(row.n + 1.0, -row.a)));
  }
}

TEST_CASE("rate harness") {
  GroupGenerator one = scalar(1.0);
  auto z = rate_harness(one, 1, 0.45, {1.0}, {2, 4}, {Vec::Zero(1)});
  for (const auto& row : z.rows) CHECK(row.error == 0);
  auto s = rate_harness(one, 1, 0.45, {40.0}, {1, 2, 4, 8, 12, 16, 20}, {Vec::Ones(1)});
  // monotone once n >= 2
  for (std::size_t i = 2; i < s.rows.size(); ++i)
    if (s.rows[i - 1].error > 1e-13) CHECK(s.rows[i].error <= s.rows[i - 1].error);
  CHECK(s.rows.back().error < 1e-6);
  GroupGenerator T = make_shifted_translation(32, 1, 1.0);
  auto xs = random_sphere_set(32, 1, 2, 3);
  auto rep = rate_harness(T, 1, 0.45, {0.5, 1, 2}, {2, 4, 6, 8, 10}, xs);
  CHECK(rep.pass);
  CHECK(rep.slope <= rep.target_slope);
  CHECK(rep.target_slope == doctest::Approx(-0.35));
  CHECK(rep.gap == doctest::Approx(0.5));
  CHECK_THROWS_AS(rate_harness(T, 1, 0.6, {1.0}, {2}, xs), DomainError);
  CHECK(type_cotype_gap(2) == 0);
  CHECK(type_cotype_gap(4) == doctest::Approx(0.25));
}

TEST_CASE("Cayley transform powers") {
  auto z = cayley_power_sweep(scalar(1.0), 0.5, 10, {Vec::Ones(1)});
  for (double r : z.rho) CHECK(r == doctest::Approx(0).epsilon(1e-15));
  const cplx a(0.5, 2);
  auto g = cayley_power_sweep(scalar(a), 0.5, 12, {Vec::Ones(1)});
  const double q = std::abs((1.0 - a) / (1.0 + a));
  for (int k = 1; k < 12; ++k) CHECK(g.rho[k] / g.rho[k - 1] == doctest::Approx(q).epsilon(1e-9));
  GroupGenerator T = make_shifted_translation(32, 1, 0.1);
  auto xs = random_sphere_set(32, 1, 2, 4);
  auto s = cayley_power_sweep(T, 0.5, 60, xs);
  CHECK(s.slope <= 0.05);
  std::vector<Vec> scaled;
  for (const Vec& x : xs) scaled.push_back(5.0 * x);
  auto s2 = cayley_power_sweep(T, 0.5, 60, scaled);
  for (int k = 0; k < 60; ++k) CHECK(s2.rho[k] == doctest::Approx(s.rho[k]).epsilon(1e-12));
}

TEST_CASE("iterated schemes") {
  GroupGenerator one = scalar(2.0);
  RationalFunction r0 = pade_subdiagonal(0);
  auto s = iterated_scheme_convergence(r0, one, {1.0}, {1, 10, 100, 1000}, {Vec::Ones(1)}, 0.5);
  for (std::size_t i = 0; i < s.ns.size(); ++i) {
    int n = s.ns[i];
    CHECK(s.errors[i] == doctest::Approx(std::abs(std::pow(1 + 2.0 / n, -n) - std::exp(-2.0))).epsilon(1e-9));
  }
  CHECK(s.decreasing);
  GroupGenerator T = make_shifted_translation(16, 2, 1.0);
  auto xs = random_sphere_set(16, 2, 1, 5);
  RationalFunction r1 = pade_subdiagonal(1);
  auto single = iterated_scheme_convergence(r1, T, {1.0}, {1}, xs, 0.5);
  Mat E = apply_rational(r1, T.matrix(), 1.0) - expm(-T.matrix());
  CHECK(single.errors[0] == doctest::Approx(T.norm(E * xs[0])).epsilon(1e-10));
  auto third = iterated_scheme_convergence(r1, T, {1.0}, {8, 16, 32, 64}, xs, 0.5);
  CHECK(third.slope == doctest::Approx(-3).epsilon(0.1));
}
