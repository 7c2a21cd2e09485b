#include "doctest.h"
#include "stripcalc/functions.hpp"
#include "stripcalc/serialize.hpp"
#include "stripcalc/strip_calculus.hpp"

using namespace stripcalc;

namespace {
StripFunction fn(std::function<cplx(cplx)> f, double omega, double alpha, std::string name) {
  StripFunction s;
  s.eval = std::move(f);
  s.omega = omega;
  s.alpha = alpha;
  s.name = std::move(name);
  return s;
}
GroupGenerator diag(std::initializer_list<cplx> ev, double p = 2) {
  Vec v(static_cast<int>(ev.size()));
  int i = 0;
  for (cplx e : ev) v[i++] = e;
  return make_multiplication_group(v, Mat::Identity(v.size(), v.size()), p);
}
GroupGenerator model8() {
  return model_from_json({{"kind", "random-diagonalizable"}, {"n", 8}, {"p", 2}, {"omega0", 0.3}, {"seed", 2}});
}
}  // namespace

TEST_CASE("single residue on a scalar model") {
  auto f = fn([](cplx z) { return std::pow(2.0 * I1 - z, -2); }, 1.5, 2, "pole2");
  Mat r = cauchy_integral_calculus(f, diag({0.0}));
  CHECK(std::abs(r(0, 0) + 0.25) < 1e-10);
}

TEST_CASE("spectral mapping on a diagonal model") {
  auto f = fn([](cplx z) { return std::exp(I1 * z) * std::pow(3.0 * I1 - z, -2); }, 2, 2, "osc");
  Mat r = cauchy_integral_calculus(f, diag({1.0, -1.0}));
  CHECK(std::abs(r(0, 0) - f(1.0)) / std::abs(f(1.0)) < 1e-8);
  CHECK(std::abs(r(1, 1) - f(-1.0)) / std::abs(f(-1.0)) < 1e-8);
  CHECK(std::abs(r(0, 1)) < 1e-10);
}

TEST_CASE("Jordan block calculus") {
  auto f = fn([](cplx z) { return std::pow(2.0 * I1 - z, -2); }, 1.5, 2, "pole2");
  GroupGenerator J = make_jordan_block(0, 2, 2);
  Mat r = cauchy_integral_calculus(f, J);
  const double h = 1e-4;
  cplx d = (f(h) - f(-h)) / (2 * h);
  CHECK(std::abs(r(0, 0) - f(0.0)) < 1e-9);
  CHECK(std::abs(r(1, 1) - f(0.0)) < 1e-9);
  CHECK(std::abs(r(0, 1) - d) < 1e-7);
  CHECK(std::abs(r(1, 0)) < 1e-10);
}

TEST_CASE("contour independence and serial/parallel agreement") {
  GroupGenerator A = model8();
  StripFunction f = make_strip_function("decay_pow:1.5,2", 1.0);
  ContourConfig c1, c2;
  c1.inner_height = 0.5;
  c2.inner_height = 0.9;
  Mat r1 = cauchy_integral_calculus(f, A, c1), r2 = cauchy_integral_calculus(f, A, c2);
  Mat S = A.spectral(f.eval);
  CHECK((r1 - S).norm() / S.norm() < 1e-8);
  CHECK((r1 - r2).norm() / S.norm() < 1e-7);
  ContourConfig cs = c1;
  cs.exec = Exec::serial;
  CHECK(cauchy_integral_calculus(f, A, cs) == r1);
}

TEST_CASE("insufficient decay is rejected by the direct contour") {
  CHECK_THROWS_AS(cauchy_integral_calculus(make_strip_function("resolvent:2", 1.0), model8()), DomainError);
  auto f = make_strip_function("decay_pow:1.5,2", 0.2);
  CHECK_THROWS_AS(cauchy_integral_calculus(f, model8()), DomainError);
}

TEST_CASE("regularized calculus reproduces the identity, the group and resolvents") {
  GroupGenerator A = model8();
  const int n = A.dim();
  Mat one = regularized_calculus(make_strip_function("one", 1.0), A, 2);
  CHECK((one - Mat::Identity(n, n)).norm() < 1e-8);
  for (double t : {0.5, 2.0}) {
    Mat U = group_orbit(A, t);
    Mat r = regularized_calculus(make_strip_function("exp_group:" + format_number(t), 1.0), A, 2);
    CHECK((r - U).norm() / U.norm() < 1e-7);
  }
  Mat R = (I1 * 1.7 * Mat::Identity(n, n) - A.matrix()).inverse();
  auto res = fn([](cplx z) { return 1.0 / (I1 * 1.7 - z); }, 1.0, 1, "res");
  CHECK((regularized_calculus(res, A, 2) - R).norm() / R.norm() < 1e-8);
}

TEST_CASE("tau approximants") {
  GroupGenerator A = model8();
  Vec x = Vec::LinSpaced(8, 1, 2);
  std::vector<double> ks = {4, 8, 16, 32};
  auto a1 = tau_approximants(make_strip_function("one", 1.0), A, ks, x);
  auto f = make_strip_function("exp_group:1", 1.0);
  auto a2 = tau_approximants(f, A, ks, x);
  Vec fx = regularized_calculus(f, A, 2) * x;
  std::vector<double> e2;
  double p1 = inf;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double e1 = A.norm(a1[i] - x);
    CHECK(e1 < p1);
    p1 = e1;
    e2.push_back(A.norm(a2[i] - fx));
    if (i) CHECK(e2[i] < e2[i - 1]);
  }
  // tau_k(a) - 1 = O(a/k)
  CHECK(e2[2] / e2[3] == doctest::Approx(2).epsilon(0.1));
  GroupGenerator slow = model_from_json(
      {{"kind", "random-diagonalizable"}, {"n", 8}, {"p", 2}, {"omega0", 0.005}, {"spread", 0.01}, {"seed", 2}});
  Vec gx = regularized_calculus(f, slow, 2) * x;
  auto a3 = tau_approximants(f, slow, ks, x);
  CHECK(slow.norm(a3.back() - gx) <= 1e-3 * slow.norm(gx));
  double prev = inf;
  for (double k : {4.0, 16.0, 64.0, 256.0}) {
    double s = sampled_sup_norm(tau_function(k, 1.0));
    CHECK(s >= 1 - 1e-9);
    CHECK(s <= prev);
    prev = s;
  }
  CHECK(prev < 1.01);
}

TEST_CASE("sectorial calculus through the logarithm") {
  GroupGenerator A = diag({1.0, 4.0});
  SectorFunction one{[](cplx) { return cplx(1); }, pi / 2, "one"};
  CHECK((sectorial_via_log(one, A) - Mat::Identity(2, 2)).norm() < 1e-8);
  const double s0 = 0.7;
  SectorFunction ip{[s0](cplx z) { return std::pow(z, I1 * s0); }, pi / 2, "imag power"};
  Mat r = sectorial_via_log(ip, A);
  CHECK(std::abs(r(0, 0) - 1.0) < 1e-8);
  CHECK(std::abs(r(1, 1) - std::pow(cplx(4.0), I1 * s0)) < 1e-8);
  SectorFunction res{[](cplx z) { return 1.0 / (1.0 + z); }, 0.9 * pi, "resolvent"};
  GroupGenerator B = model_from_json({{"kind", "spectral"}, {"eigenvalues", {0.5, 2.0, {1.0, 0.5}}}});
  Mat R = (Mat::Identity(3, 3) + B.matrix()).inverse();
  CHECK((sectorial_via_log(res, B) - R).norm() / R.norm() < 1e-8);
  CHECK_THROWS_AS(sectorial_via_log(one, diag({-1.0, 2.0})), DomainError);
}

TEST_CASE("half-plane calculus") {
  GroupGenerator A = make_shifted_translation(8, 2, 1.0);
  HalfPlaneFunction one{[](cplx) { return cplx(1); }, "one"};
  CHECK((half_plane_calculus(one, A) - Mat::Identity(8, 8)).norm() < 1e-8);
  const double t = 0.8;
  HalfPlaneFunction sg{[t](cplx z) { return std::exp(-t * z); }, "semigroup"};
  Mat T = expm(-t * A.matrix());
  CHECK((half_plane_calculus(sg, A) - T).norm() / T.norm() < 1e-8);
  HalfPlaneFunction cay{[](cplx z) { return (1.0 - z) / (1.0 + z); }, "cayley"};
  CHECK(std::abs(half_plane_calculus(cay, diag({1.0}))(0, 0)) < 1e-9);
}

TEST_CASE("registered functions are holomorphic and bounded") {
  for (std::string id : {"one", "exp_group:1.5", "resolvent:2", "decay_pow:1.5,2", "pole:1.5,2", "exp_decay:1,2,0.5",
                         "blaschke:5,3", "pade_err:2,0.5,1,1.5"}) {
    StripFunction f = make_strip_function(id, 1.0);
    CHECK_MESSAGE(holomorphy_defect(f) < 1e-8, id);
    CHECK(std::isfinite(sampled_sup_norm(f)));
  }
  CHECK_THROWS_AS(make_strip_function("nonsense:1", 1.0), DomainError);
  CHECK_THROWS_AS(make_strip_function("resolvent:0.5", 1.0), DomainError);
  CHECK(std::abs(strip_to_disk(0.0, 1.0)) == 0);
  CHECK(std::abs(strip_to_disk(cplx(3, 0.99), 1.0)) < 1);
}
