// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#include <doctest.h>

#include "conelat/certify.hpp"
#include "oracles.hpp"

using conelat::Certificate;
using conelat::Cone;
using conelat::Method;
using conelat::Vector;
using conelat::Verdict;
using V = Vector<double>;

namespace {
V vec(std::initializer_list<double> xs) {
  V v(static_cast<conelat::Index>(xs.size()));
  conelat::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

std::vector<V> orthant_basis(int m) {
  std::vector<V> g;
  for (int i = 0; i < m; ++i) {
    V e = V::Zero(m);
    e[i] = 1.0;
    g.push_back(e);
  }
  return g;
}
}  // namespace

TEST_CASE("orthant hyperplane closed form") {
  // Mixed-sign pairwise products: isotone.
  auto c = conelat::hyperplane_isotone_orthant(vec({1, -2, 0}));
  CHECK(c.verdict == Verdict::Proven);
  CHECK(c.method == Method::ClosedForm);

  // Two positive coordinates: refuted with a basis-vector witness.
  auto r = conelat::hyperplane_isotone_orthant(vec({1, 1, -1}));
  REQUIRE(r.verdict == Verdict::Refuted);
  REQUIRE(r.witness.has_value());
  const V uh = vec({1, 1, -1}).normalized();
  CHECK(conelat::isotone_gap(uh, r.witness->first, r.witness->second) < 0.0);

  CHECK_THROWS_AS(conelat::hyperplane_isotone_orthant(vec({0, 0})), std::invalid_argument);
}

TEST_CASE("lorentz hyperplane closed form") {
  auto c = conelat::hyperplane_isotone_lorentz(vec({3, -1, 0}));
  CHECK(c.verdict == Verdict::Proven);

  auto r = conelat::hyperplane_isotone_lorentz(vec({1, 0, 0.5}));
  REQUIRE(r.verdict == Verdict::Refuted);
  REQUIRE(r.witness.has_value());
  const auto lor = Cone<double>::lorentz(3);
  CHECK(contains(lor, r.witness->first, 1e-12));
  CHECK(contains(lor, r.witness->second, 1e-12));
  const V uh = vec({1, 0, 0.5}).normalized();
  CHECK(conelat::isotone_gap(uh, r.witness->first, r.witness->second) < 0.0);

  CHECK_THROWS_AS(conelat::hyperplane_isotone_lorentz(vec({1, 1})), std::invalid_argument);
}

TEST_CASE("probe pair construction") {
  const V u = vec({0.3, -0.7, 0.9}).normalized();
  auto [a, b] = conelat::lorentz_probe_pair(u);
  CHECK(std::abs(a.head(2).norm() - 1.0) <= 1e-12);
  CHECK(a[2] == 1.0);
  CHECK((a.head(2) + b.head(2)).norm() <= 1e-12);
  CHECK(std::abs(a.head(2).dot(u.head(2))) <= 1e-12);

  const V z = conelat::unit_orthogonal(vec({1, 2, 3}));
  CHECK(std::abs(z.norm() - 1.0) <= 1e-12);
  CHECK(std::abs(z.dot(vec({1, 2, 3}))) <= 1e-12);
  CHECK(conelat::unit_orthogonal(vec({0.0, 0.0})).norm() == doctest::Approx(1.0));
}

TEST_CASE("bilinear generator-pair certificate agrees with the orthant closed form") {
  std::mt19937_64 rng(101);
  const auto gens = orthant_basis(4);
  for (int t = 0; t < 300; ++t) {
    const V u = conelat::gaussian_point<double>(4, rng);
    if (u.norm() < 1e-6) continue;
    const auto closed = conelat::hyperplane_isotone_orthant(u);
    const auto bil = conelat::hyperplane_isotone_bilinear(gens, u);
    CHECK(closed.verdict == bil.verdict);
    CHECK(bil.method == (bil.verdict == Verdict::Proven ? Method::GeneratorPairs
                                                        : Method::GeneratorPairs));
  }
  CHECK_THROWS_AS(conelat::hyperplane_isotone_bilinear<double>({}, vec({1})),
                  std::invalid_argument);
}

TEST_CASE("sampled certifier semantics") {
  const auto orth3 = Cone<double>::orthant(3);
  // n = 0 short-circuits without probing.
  const auto zero = conelat::hyperplane_isotone_sampled(orth3, vec({1, 1, 1}), 0, 7);
  CHECK(zero.verdict == Verdict::NoCounterexample);
  CHECK(zero.samples_used == 0);

  // Deterministic probes catch the orthant violation immediately.
  const auto ref = conelat::hyperplane_isotone_sampled(orth3, vec({1, 1, -1}), 10, 7);
  REQUIRE(ref.verdict == Verdict::Refuted);
  CHECK(ref.method == Method::Sampled);
  REQUIRE(ref.witness.has_value());

  // Isotone normals never get refuted; verdict stays NO_COUNTEREXAMPLE.
  const auto ok = conelat::hyperplane_isotone_sampled(orth3, vec({2, -1, 0}), 500, 7);
  CHECK(ok.verdict == Verdict::NoCounterexample);
  CHECK(ok.samples_used >= 500);

  const auto lor = Cone<double>::lorentz(3);
  CHECK(conelat::hyperplane_isotone_sampled(lor, vec({0, 1, 0.3}), 10, 7).verdict ==
        Verdict::Refuted);
  CHECK(conelat::hyperplane_isotone_sampled(lor, vec({1, 1, 0}), 500, 7).verdict ==
        Verdict::NoCounterexample);
}

TEST_CASE("subspace invariance check") {
  const auto lor3 = Cone<double>::lorentz(3);
  // span{e3} (the axis) is invariant under the Lorentz projection.
  const auto ok = conelat::subspace_invariant(lor3, {vec({0, 0, 1})}, 200, 3);
  CHECK(ok.verdict == Verdict::NoCounterexample);
  // span{e1} is not.
  const auto bad = conelat::subspace_invariant(lor3, {vec({1, 0, 0})}, 200, 3);
  CHECK(bad.verdict == Verdict::Refuted);
  CHECK_THROWS_AS(conelat::subspace_invariant(lor3, {vec({1, 0, 0}), vec({2, 0, 0})}, 10, 3),
                  std::invalid_argument);
}

TEST_CASE("polyhedron certification aggregates facet verdicts") {
  const auto orth2 = Cone<double>::orthant(2);
  const auto box = conelat::testing::make_box(vec({0, 0}), vec({1, 1}));
  const auto rep = conelat::certify_polyhedron(orth2, box);
  CHECK(rep.invariant == Verdict::Proven);
  CHECK(rep.isotone == Verdict::Proven);
  CHECK(rep.per_facet.size() == box.halfspaces.size());
  CHECK(rep.sharp_declared);

  conelat::Polyhedron<double> sliced = box;
  sliced.halfspaces.push_back({vec({1, 1}), 1.5});  // positive-pair normal
  const auto rep2 = conelat::certify_polyhedron(orth2, sliced);
  CHECK(rep2.invariant == Verdict::Refuted);
  CHECK(rep2.isotone == Verdict::Refuted);

  // Lorentz cylinder: normals with vanishing last coordinate.
  const auto lor3 = Cone<double>::lorentz(3);
  conelat::Polyhedron<double> cyl;
  cyl.halfspaces.push_back({vec({1, 0, 0}), 1.0});
  cyl.halfspaces.push_back({vec({-1, 0, 0}), 1.0});
  cyl.halfspaces.push_back({vec({0, 1, 0}), 1.0});
  cyl.halfspaces.push_back({vec({0, -1, 0}), 1.0});
  CHECK(conelat::certify_polyhedron(lor3, cyl).invariant == Verdict::Proven);

  CHECK_THROWS_AS(conelat::certify_polyhedron(Cone<double>::product({orth2}), box),
                  std::invalid_argument);

  const auto grep = conelat::certify_polyhedron_generators(orthant_basis(2), box);
  CHECK(grep.invariant == Verdict::Proven);
}

TEST_CASE("invariance falsifier") {
  const auto orth2 = Cone<double>::orthant(2);
  const auto box = conelat::testing::make_box(vec({0, 0}), vec({1, 1}));
  conelat::Polyhedron<double> sliced = box;
  sliced.halfspaces.push_back({vec({1, 1}), 1.2});

  auto member_of = [](const conelat::Polyhedron<double>& p) {
    return conelat::MembershipOracle<double>(
        [p](const V& x) { return member(p, x, 1e-7); });
  };
  auto sampler_of = [](const conelat::Polyhedron<double>& p) {
    return conelat::PointSampler<double>([p](std::mt19937_64& rng) {
      return project(p, conelat::gaussian_point<double>(2, rng, 2.0), 1e-10);
    });
  };

  const auto clean = conelat::falsify_invariance(orth2, member_of(box), sampler_of(box), 500, 11);
  CHECK(clean.verdict == Verdict::NoCounterexample);

  const auto probes = conelat::polyhedron_invariance_probes(orth2, sliced, 11);
  CHECK_FALSE(probes.empty());
  const auto bad = conelat::falsify_invariance(orth2, member_of(sliced), sampler_of(sliced),
                                               2000, 11, probes);
  REQUIRE(bad.verdict == Verdict::Refuted);
  REQUIRE(bad.witness.has_value());
  // The witness re-validates: both ends inside, meet or join outside.
  const V& wx = bad.witness->first;
  const V& wy = bad.witness->second;
  CHECK(member(sliced, wx, 1e-7));
  CHECK(member(sliced, wy, 1e-7));
  CHECK((!member(sliced, meet(orth2, wx, wy), 1e-7) ||
         !member(sliced, join(orth2, wx, wy), 1e-7)));

  // Sampler emitting non-members is an input error.
  conelat::PointSampler<double> outside = [](std::mt19937_64&) { return vec({5, 5}); };
  CHECK_THROWS_AS(conelat::falsify_invariance(orth2, member_of(box), outside, 5, 11),
                  std::invalid_argument);
}

TEST_CASE("isotonicity falsifier") {
  const auto orth2 = Cone<double>::orthant(2);
  const auto box = conelat::testing::make_box(vec({0, 0}), vec({1, 1}));
  auto pairs = conelat::make_ordered_pair_sampler(orth2, 1.5);

  // Box projection (clamp) is isotone.
  auto clamp_proj = [&](const V& x) { return project(box, x, 1e-10); };
  CHECK(conelat::falsify_isotonicity<double>(orth2, clamp_proj, pairs, 300, 13, 1e-7).verdict ==
        Verdict::NoCounterexample);

  // Projection onto the non-invariant slice is not.
  conelat::Polyhedron<double> sliced = box;
  sliced.halfspaces.push_back({vec({1, 1}), 1.2});
  auto slice_proj = [&](const V& x) { return project(sliced, x, 1e-10); };
  CHECK(conelat::falsify_isotonicity<double>(orth2, slice_proj, pairs, 2000, 13, 1e-7).verdict ==
        Verdict::Refuted);
}

TEST_CASE("sublattice check matches the invariance falsifier on the orthant") {
  const auto box = conelat::testing::make_box(vec({0, 0}), vec({1, 1}));
  conelat::MembershipOracle<double> is_member = [box](const V& x) {
    return member(box, x, 1e-7);
  };
  conelat::PointSampler<double> sampler = [box](std::mt19937_64& rng) {
    return project(box, conelat::gaussian_point<double>(2, rng, 2.0), 1e-10);
  };
  CHECK(conelat::sublattice_check_orthant(is_member, sampler, 500, 17).verdict ==
        Verdict::NoCounterexample);
}

TEST_CASE("hyperplane invariance probes") {
  const auto orth3 = Cone<double>::orthant(3);
  // Isotone normal: the search finds nothing.
  CHECK(conelat::hyperplane_invariance_probes(orth3, vec({1, -1, 0}), 23).empty());
  // Non-isotone normal: deterministic witnesses appear and genuinely escape H.
  const auto ws = conelat::hyperplane_invariance_probes(orth3, vec({1, 1, -1}), 23);
  REQUIRE_FALSE(ws.empty());
  const V uh = vec({1, 1, -1}).normalized();
  for (const auto& [x, y] : ws) {
    CHECK(std::abs(uh.dot(x)) <= 1e-9);
    CHECK(std::abs(uh.dot(y)) <= 1e-9);
    CHECK(std::abs(uh.dot(join(orth3, x, y))) > 1e-7);
  }

  const auto lor3 = Cone<double>::lorentz(3);
  CHECK_FALSE(conelat::hyperplane_invariance_probes(lor3, vec({1, 0, 0.4}), 23).empty());
  CHECK(conelat::hyperplane_invariance_probes(lor3, vec({1, 0.3, 0}), 23).empty());
}
