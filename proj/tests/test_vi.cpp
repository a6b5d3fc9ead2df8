// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#include <doctest.h>

#include "conelat/projection_identities.hpp"
#include "conelat/props.hpp"
#include "conelat/vi.hpp"
#include "oracles.hpp"

using conelat::AffineMap;
using conelat::Cone;
using conelat::Matrix;
using conelat::Vector;
using V = Vector<double>;

namespace {
V vec(std::initializer_list<double> xs) {
  V v(static_cast<conelat::Index>(xs.size()));
  conelat::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
}  // namespace

TEST_CASE("affine ncp with identity map") {
  // F(x) = x + q, q = (-1, 1): solution (1, 0).
  const auto orth2 = Cone<double>::orthant(2);
  AffineMap<double> f{Matrix<double>::Identity(2, 2), vec({-1, 1})};
  const auto traj = conelat::ncp_solve<double>(orth2, f, vec({0, 0}), 0.5, 1e-10, 500);
  REQUIRE(traj.converged);
  const V sol = traj.iterates.back();
  CHECK((sol - vec({1, 0})).norm() <= 1e-8);
  CHECK(conelat::ncp_residual(orth2, sol, V(f(sol))) <= 1e-10);
}

TEST_CASE("ncp residual is evaluated before stepping") {
  // Already-complementary start converges immediately with one residual entry.
  const auto orth2 = Cone<double>::orthant(2);
  AffineMap<double> f{Matrix<double>::Identity(2, 2), vec({-1, 1})};
  const auto traj = conelat::ncp_solve<double>(orth2, f, vec({1, 0}), 0.5, 1e-10, 500);
  CHECK(traj.converged);
  CHECK(traj.iterates.size() == 1);
  CHECK(traj.residuals.size() == 1);
}

TEST_CASE("lorentz ncp") {
  const auto lor3 = Cone<double>::lorentz(3);
  const V target = vec({1, 0, 1});
  conelat::MapFn<double> f = [&](const V& x) { return V(x - target); };
  const auto traj = conelat::ncp_solve<double>(lor3, f, vec({0, 0, 0.5}), 0.5, 1e-9, 1000);
  REQUIRE(traj.converged);
  CHECK((traj.iterates.back() - target).norm() <= 1e-6);
}

TEST_CASE("vi over a polyhedron") {
  // Minimize ||x - (2, 2)||^2 over the unit box: F(x) = x - (2, 2), solution (1, 1).
  const auto orth2 = Cone<double>::orthant(2);
  conelat::VIProblem<double> p;
  p.domain = conelat::testing::make_box(vec({0, 0}), vec({1, 1}));
  p.map = [](const V& x) { return V(x - vec({2, 2})); };
  p.step = 0.5;
  p.x0 = vec({0, 0});
  p.tol = 1e-9;
  p.max_iter = 500;
  const auto traj = conelat::solve_vi(p, orth2);
  REQUIRE(traj.converged);
  CHECK((traj.iterates.back() - vec({1, 1})).norm() <= 1e-7);
  // Iterates climb monotonically in the orthant order from below.
  CHECK(traj.order_monotone_prefix + 1 == traj.iterates.size());
}

TEST_CASE("vi over a cone domain") {
  const auto lor3 = Cone<double>::lorentz(3);
  conelat::VIProblem<double> p;
  p.domain = lor3;
  p.map = [](const V& x) { return V(x - vec({0, 0, 3})); };
  p.step = 0.4;
  p.x0 = vec({1, 0, 1});
  p.tol = 1e-9;
  p.max_iter = 2000;
  const auto traj = conelat::solve_vi(p, lor3);
  REQUIRE(traj.converged);
  CHECK((traj.iterates.back() - vec({0, 0, 3})).norm() <= 1e-6);
}

TEST_CASE("vi input validation and failure modes") {
  const auto orth1 = Cone<double>::orthant(1);
  conelat::VIProblem<double> p;
  p.domain = orth1;
  p.map = [](const V& x) { return V(-x); };  // pushes away, never converges
  p.step = 0.5;
  p.x0 = vec({1});
  p.tol = 1e-12;
  p.max_iter = 5;
  const auto traj = conelat::solve_vi(p, orth1);
  CHECK_FALSE(traj.converged);
  CHECK(traj.residuals.size() == 5);

  p.step = 0.0;
  CHECK_THROWS_AS(conelat::solve_vi(p, orth1), std::invalid_argument);

  conelat::MapFn<double> bad = [](const V& x) {
    return V(x * std::numeric_limits<double>::quiet_NaN());
  };
  CHECK_THROWS_AS(conelat::ncp_solve<double>(orth1, bad, vec({1}), 0.5), std::runtime_error);
}

TEST_CASE("order monotone prefix") {
  const auto orth1 = Cone<double>::orthant(1);
  std::vector<V> ups = {vec({0}), vec({1}), vec({2}), vec({1.5})};
  CHECK(conelat::order_monotone_prefix(orth1, ups) == 2);
  std::vector<V> downs = {vec({3}), vec({2}), vec({1})};
  CHECK(conelat::order_monotone_prefix(orth1, downs) == 2);
  CHECK(conelat::order_monotone_prefix(orth1, {vec({1})}) == 0);
}

TEST_CASE("projection identity check") {
  const auto box = conelat::testing::make_box(vec({-1, 0}), vec({1, 2}));
  const auto ok = conelat::projection_identities_check(box, 2, 100, 3, 1e-6);
  CHECK(ok.verdict == conelat::Verdict::NoCounterexample);
}

TEST_CASE("property suite smoke") {
  const auto cones = conelat::standard_cones({"orthant", "lorentz"}, {3}, 1);
  const auto results = conelat::run_property_suite(cones, 60, 1);
  REQUIRE_FALSE(results.empty());
  for (const auto& r : results) {
    CAPTURE(r.cone);
    CAPTURE(r.name);
    CAPTURE(r.worst);
    if (!r.informational) CHECK(r.pass);
  }
}
