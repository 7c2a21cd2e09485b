#include "doctest.h"
#include "stripcalc/functions.hpp"
#include "stripcalc/kfunctional.hpp"
#include "stripcalc/quadrature.hpp"
#include "stripcalc/rng.hpp"
#include "stripcalc/serialize.hpp"
#include "stripcalc/transference.hpp"

using namespace stripcalc;

TEST_CASE("transference weights") {
  for (double w : {0.5, 1.0, 2.0}) {
    auto W = TransferenceWeights::make(w);
    CHECK(W.psi(0) == 1);
    CHECK(W.psi(0.7) == doctest::Approx(1 / std::cosh(1.4 * w)));
    CHECK(W.phi(0) == doctest::Approx(std::sqrt(8.0) * w / pi));
    CHECK(W.convolution_residual() <= 1e-8);
    for (double s : {-2.0, 0.0, 0.4, 3.0}) CHECK(W.convolution(s) * std::cosh(w * s) == doctest::Approx(1).epsilon(1e-9));
    CHECK(W.S >= 12 / w);
  }
  CHECK(TransferenceWeights::make(1, 30).S >= 34);
  CHECK(std::isfinite(TransferenceWeights::make(2).phi(400)));
}

TEST_CASE("embedding into signals") {
  GroupGenerator T = make_translation_group(16, 1);
  auto W = TransferenceWeights::make(1.0, 0, 10);
  SampledSignal z = iota_embed(T, Vec::Zero(16), W);
  CHECK(z.values.norm() == 0);
  GroupGenerator Z = make_multiplication_group(Vec::Zero(1), Mat::Identity(1, 1), 1);
  Vec x = Vec::Constant(1, cplx(2, -1));
  SampledSignal f = iota_embed(Z, x, W);
  const int n = f.size();
  for (int j = 1; j < n; ++j) {
    CHECK(std::abs(f.values(j, 0) - W.psi(f.node(j)) * x[0]) < 1e-15);
    CHECK(std::abs(f.values(j, 0) - f.values(n - j, 0)) < 1e-15);
  }
  auto g = stream_rng(3, 0);
  Vec y = gaussian_vec(g, 16);
  SampledSignal e = iota_embed(T, y, W);
  for (int j = 0; j < n; j += 37) {
    double s = e.node(j);
    Vec expect = W.psi(-s) * (group_orbit(T, -s) * y);
    CHECK((e.values.row(j).transpose() - expect).norm() < 1e-12);
  }
  TransferenceWeights tiny = W;
  tiny.S = 2;
  CHECK_THROWS_AS(iota_embed(T, y, tiny), DomainError);
}

TEST_CASE("projection back to X") {
  GroupGenerator T = make_translation_group(16, 1);
  auto W = TransferenceWeights::make(1.0, 0, 12);
  CHECK(p_project(T, SampledSignal::zeros(W.S, W.m, 16, 1), W).norm() == 0);
  auto g = stream_rng(4, 0);
  Vec y = gaussian_vec(g, 16);
  CHECK(T.norm(p_project(T, iota_embed(T, y, W), W) - y) <= 1e-6 * T.norm(y));
  GroupGenerator Z = make_multiplication_group(Vec::Zero(1), Mat::Identity(1, 1), 1);
  SampledSignal c = SampledSignal::zeros(W.S, W.m, 1, 1);
  c.values.setConstant(cplx(0.5, 1));
  Rule r = composite_gl(-W.S, W.S, 400);
  double integral = 0;
  for (std::size_t i = 0; i < r.size(); ++i) integral += r.w[i] * W.phi(r.s[i]);
  CHECK(std::abs(p_project(Z, c, W)[0] - integral * cplx(0.5, 1)) < 1e-9);
}

TEST_CASE("factorization through a Fourier multiplier") {
  GroupGenerator T = make_translation_group(64, 1);
  auto xs = random_sphere_set(64, 1, 3, 5);
  auto W0 = TransferenceWeights::make(1.0, 0.7);
  CHECK(factorization_check(T, dirac(0), W0, xs).discrepancy <= 1e-6);
  CHECK(factorization_check(T, dirac(0.7), W0, xs).discrepancy <= 1e-5);
  auto g = stream_rng(8, 0);
  std::vector<Atom> atoms;
  for (int k = 0; k < 5; ++k) atoms.push_back({uniform(g, -2, 2), cplx(gaussian(g), gaussian(g))});
  WeightedMeasure mu = atomic_measure(atoms);
  auto W = TransferenceWeights::make(1.0, mu.max_abs_location());
  FactorizationReport rep = factorization_check(T, mu, W, xs);
  CHECK(rep.discrepancy <= 1e-4);
  CHECK(rep.quadrature_only <= 1e-6);
  CHECK_THROWS_AS(factorization_check(T, gamma_density_measure(1, 0.5), W, xs), DomainError);
}

TEST_CASE("interpolation-space bound") {
  GroupGenerator T = make_translation_group(32, 1);
  auto xs = random_sphere_set(32, 1, 3, 6);
  KFunctional K(T);
  BoundReport one = certify_interpolation_bound(T, {make_strip_function("one", 1.0)}, xs, 0.5, 20, {}, false);
  double expect = 0;
  for (const Vec& x : xs) expect = std::max(expect, T.norm(x) / K.interpolation_norm(x, 0.5, 20));
  CHECK(one.max_ratio == doctest::Approx(expect).epsilon(1e-12));
  std::vector<StripFunction> battery;
  for (double t : {0.0, 0.5, 1.0, 2.0, 3.0}) battery.push_back(make_strip_function("exp_group:" + format_number(t), 1.0));
  BoundReport b = certify_interpolation_bound(T, battery, xs, 0.5, 20, {}, true);
  CHECK(b.max_ratio <= 2 * b.rows[0].ratio);
  CHECK(b.max_contour_check <= 1e-6);
  auto blaschke = make_strip_function("blaschke:6,2", 1.0);
  CHECK(certify_interpolation_bound(T, {blaschke}, xs, 0.5, 20, {}, false).max_ratio <= 1.5 * b.max_ratio);
}

TEST_CASE("fractional-domain and decay bounds") {
  GroupGenerator B = model_from_json({{"kind", "random-diagonalizable"}, {"n", 8}, {"p", 1}, {"omega0", 0.3}, {"seed", 4}});
  auto xs = random_sphere_set(8, 1, 4, 7);
  const double lambda = 2.5;
  BoundReport one = certify_fractional_bound(B, {make_strip_function("one", 1.0)}, lambda, 0.5, xs);
  double expect = 0;
  for (const Vec& x : xs) expect = std::max(expect, B.norm(x) / B.norm(fractional_power_apply(B, lambda, 0.5, x)));
  CHECK(one.max_ratio == doctest::Approx(expect).epsilon(1e-10));
  auto f = make_strip_function("exp_group:1", 1.0);
  BoundReport z = certify_fractional_bound(B, {f}, lambda, 0.0, xs);
  Mat F = strip_function_of(f, B);
  double plain = 0;
  for (const Vec& x : xs) plain = std::max(plain, B.norm(F * x) / (z.rows[0].sup_norm * B.norm(x)));
  CHECK(z.max_ratio == doctest::Approx(plain).epsilon(1e-12));
  WeightedMeasure mu = atomic_measure({{0.4, 1.0}, {-0.9, cplx(0.3, 0.3)}}) + 0.7 * gamma_density_measure(0.8, lambda);
  CHECK(fractional_path_check(B, mu, lambda, 0.5, xs) <= 1e-5);
  auto d1 = make_strip_function("decay_pow:0.75,2.5", 1.0);
  auto d2 = make_strip_function("decay_pow:1.5,2.5", 1.0);
  auto d3 = make_strip_function("exp_decay:0.75,2.5,1", 1.0);
  BoundReport d = certify_decay_bound(B, {d1, d2, d3}, lambda);
  CHECK(d.rows[0].sup_norm == doctest::Approx(1).epsilon(1e-9));
  CHECK(d.rows[0].ratio == doctest::Approx(op_norm_value(fractional_power(B, lambda, -0.75), 1)).epsilon(1e-9));
  CHECK(d.rows[1].ratio <= d.rows[0].ratio);
  CHECK(std::isfinite(d.rows[2].ratio));
}

TEST_CASE("test sets are normalized and reproducible") {
  auto a = random_sphere_set(12, 1.5, 4, 2), b = random_sphere_set(12, 1.5, 4, 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(vec_norm(a[i], 1.5) == doctest::Approx(1));
    CHECK(a[i] == b[i]);
  }
}
