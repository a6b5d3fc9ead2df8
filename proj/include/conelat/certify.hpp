// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "conelat/certificate.hpp"
#include "conelat/cone.hpp"
#include "conelat/lattice.hpp"
#include "conelat/projection.hpp"
#include "conelat/types.hpp"

namespace conelat {

/// g(x, y) = <x,y> - <u,x><u,y> for a unit normal u. P_H is isotone on K iff
/// g >= 0 on K x K.
template <typename Scalar>
Scalar isotone_gap(const Vector<Scalar>& unit_u, const Vector<Scalar>& x,
                   const Vector<Scalar>& y) {
  return x.dot(y) - unit_u.dot(x) * unit_u.dot(y);
}

template <typename Scalar>
Vector<Scalar> normalized_normal(const Vector<Scalar>& u, const char* where) {
  require_nonzero_normal(u, where);
  return u / u.norm();
}

/// A unit vector orthogonal to a (requires dim >= 2; a may be zero).
template <typename Scalar>
Vector<Scalar> unit_orthogonal(const Vector<Scalar>& a) {
  const Index m = a.size();
  if (m < 2) throw std::invalid_argument("unit_orthogonal: need dimension >= 2");
  const Scalar nrm2 = a.squaredNorm();
  if (nrm2 == Scalar(0)) {
    Vector<Scalar> z = Vector<Scalar>::Zero(m);
    z[0] = Scalar(1);
    return z;
  }
  Index k = 0;
  a.cwiseAbs().minCoeff(&k);
  Vector<Scalar> z = Vector<Scalar>::Zero(m);
  z[k] = Scalar(1);
  z -= (a[k] / nrm2) * a;
  return z / z.norm();
}

/// Orthant hyperplane isotonicity: PROVEN iff u^i u^j <= 0 for all i != j.
template <typename Scalar>
Certificate<Scalar> hyperplane_isotone_orthant(const Vector<Scalar>& u,
                                               Scalar tol = Scalar(kDefaultTol)) {
  const Vector<Scalar> uh = normalized_normal(u, "hyperplane_isotone_orthant");
  const Index m = uh.size();
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      if (uh[i] * uh[j] > tol) {
        Vector<Scalar> ei = Vector<Scalar>::Zero(m);
        Vector<Scalar> ej = Vector<Scalar>::Zero(m);
        ei[i] = Scalar(1);
        ej[j] = Scalar(1);
        return Certificate<Scalar>::refuted(Method::ClosedForm, std::move(ei), std::move(ej));
      }
    }
  }
  return Certificate<Scalar>::proven(Method::ClosedForm);
}

/// The refuting pair from the Lorentz hyperplane characterization:
/// u = (z, 1), v = (-z, 1) with z a unit vector orthogonal to the first m
/// normal coordinates. Both lie in the Lorentz cone.
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> lorentz_probe_pair(const Vector<Scalar>& u) {
  const Index m = u.size() - 1;
  const Vector<Scalar> z = unit_orthogonal(Vector<Scalar>(u.head(m)));
  Vector<Scalar> a(u.size()), b(u.size());
  a.head(m) = z;
  a[m] = Scalar(1);
  b.head(m) = -z;
  b[m] = Scalar(1);
  return {a, b};
}

/// Lorentz hyperplane isotonicity (dimension m+1 with m > 1): PROVEN iff the
/// last normal coordinate vanishes.
template <typename Scalar>
Certificate<Scalar> hyperplane_isotone_lorentz(const Vector<Scalar>& u,
                                               Scalar tol = Scalar(kDefaultTol)) {
  require_nonzero_normal(u, "hyperplane_isotone_lorentz");
  if (u.size() < 3) {
    throw std::invalid_argument(
        "hyperplane_isotone_lorentz: requires dimension >= 3 (the 2-dimensional Lorentz cone "
        "is a rotated orthant)");
  }
  const Vector<Scalar> uh = u / u.norm();
  const Index m = uh.size() - 1;
  if (std::abs(uh[m]) <= tol) return Certificate<Scalar>::proven(Method::ClosedForm);
  auto [a, b] = lorentz_probe_pair(uh);
  return Certificate<Scalar>::refuted(Method::ClosedForm, std::move(a), std::move(b));
}

/// Bilinear certificate over generator pairs of a polyhedral self-dual cone:
/// g is bilinear, so nonnegativity on generator pairs extends to all conic
/// combinations.
template <typename Scalar>
Certificate<Scalar> hyperplane_isotone_bilinear(const std::vector<Vector<Scalar>>& generators,
                                                const Vector<Scalar>& u,
                                                Scalar tol = Scalar(kDefaultTol)) {
  if (generators.empty()) {
    throw std::invalid_argument("hyperplane_isotone_bilinear: empty generator list");
  }
  const Vector<Scalar> uh = normalized_normal(u, "hyperplane_isotone_bilinear");
  std::size_t used = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i; j < generators.size(); ++j) {
      ++used;
      if (isotone_gap(uh, generators[i], generators[j]) < -tol) {
        Certificate<Scalar> c = Certificate<Scalar>::refuted(Method::GeneratorPairs,
                                                             generators[i], generators[j]);
        c.samples_used = used;
        return c;
      }
    }
  }
  return Certificate<Scalar>::proven(Method::GeneratorPairs, used);
}

/// Monte-Carlo falsifier for hyperplane isotonicity. Deterministic adversarial
/// probes run first: the Lorentz proof pair, all standard-basis pairs for the
/// orthant, rotation-column pairs for rotated orthants.
template <typename Scalar>
Certificate<Scalar> hyperplane_isotone_sampled(const Cone<Scalar>& k, const Vector<Scalar>& u,
                                               std::size_t n, std::uint64_t seed,
                                               Scalar tol = Scalar(kDefaultTol)) {
  const Vector<Scalar> uh = normalized_normal(u, "hyperplane_isotone_sampled");
  require_dim(k.dim(), u.size(), "hyperplane_isotone_sampled");
  if (n == 0) return Certificate<Scalar>::no_counterexample(0, seed);

  std::size_t used = 0;
  auto check = [&](const Vector<Scalar>& x,
                   const Vector<Scalar>& y) -> std::optional<Certificate<Scalar>> {
    ++used;
    if (isotone_gap(uh, x, y) < -tol) {
      return Certificate<Scalar>::refuted(Method::Sampled, x, y, used, seed);
    }
    return std::nullopt;
  };

  using Kind = typename Cone<Scalar>::Kind;
  if (k.kind() == Kind::Lorentz && k.dim() >= 3) {
    auto [a, b] = lorentz_probe_pair(uh);
    if (auto c = check(a, b)) return *c;
  } else if (k.kind() == Kind::Orthant) {
    for (Index i = 0; i < k.dim(); ++i) {
      for (Index j = i + 1; j < k.dim(); ++j) {
        Vector<Scalar> ei = Vector<Scalar>::Zero(k.dim());
        Vector<Scalar> ej = Vector<Scalar>::Zero(k.dim());
        ei[i] = Scalar(1);
        ej[j] = Scalar(1);
        if (auto c = check(ei, ej)) return *c;
      }
    }
  } else if (k.kind() == Kind::RotatedOrthant) {
    for (Index i = 0; i < k.dim(); ++i) {
      for (Index j = i + 1; j < k.dim(); ++j) {
        if (auto c = check(Vector<Scalar>(k.rotation().col(i)),
                           Vector<Scalar>(k.rotation().col(j)))) {
          return *c;
        }
      }
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < n; ++t) {
    const Vector<Scalar> x = sample_one(k, rng);
    const Vector<Scalar> y = sample_one(k, rng);
    if (auto c = check(x, y)) return *c;
  }
  return Certificate<Scalar>::no_counterexample(used, seed);
}

/// Sampled check of P_K(S) subset S for S = span(basis).
template <typename Scalar>
Certificate<Scalar> subspace_invariant(const Cone<Scalar>& k,
                                       const std::vector<Vector<Scalar>>& basis, std::size_t n,
                                       std::uint64_t seed, Scalar tol = Scalar(kDefaultTol)) {
  if (basis.empty()) throw std::invalid_argument("subspace_invariant: empty basis");
  Matrix<Scalar> b(k.dim(), static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_dim(k.dim(), basis[i].size(), "subspace_invariant");
    b.col(static_cast<Index>(i)) = basis[i];
  }
  Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(b);
  if (qr.rank() < b.cols()) {
    throw std::invalid_argument("subspace_invariant: basis is linearly dependent");
  }
  const Matrix<Scalar> q =
      qr.householderQ() * Matrix<Scalar>::Identity(k.dim(), b.cols());

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < n; ++t) {
    const Vector<Scalar> s = q * gaussian_point<Scalar>(b.cols(), rng);
    const Vector<Scalar> p = project(k, s);
    const Scalar dist = (p - q * (q.transpose() * p)).norm();
    if (dist > tol) {
      return Certificate<Scalar>::refuted(Method::Sampled, s, p, t + 1, seed);
    }
  }
  return Certificate<Scalar>::no_counterexample(n, seed);
}

/// Per-facet certificates with the aggregated equivalences: every facet
/// hyperplane isotone/invariant makes the polyhedron invariant and its
/// projection isotone; any refuted facet refutes both.
template <typename Scalar>
struct PolyhedronReport {
  std::vector<Certificate<Scalar>> per_facet;
  Verdict invariant{};
  Verdict isotone{};
  bool sharp_declared = false;
};

template <typename Scalar>
PolyhedronReport<Scalar> aggregate_report(std::vector<Certificate<Scalar>> per_facet,
                                          bool sharp) {
  PolyhedronReport<Scalar> r;
  r.per_facet = std::move(per_facet);
  r.sharp_declared = sharp;
  const bool all_proven =
      std::all_of(r.per_facet.begin(), r.per_facet.end(),
                  [](const Certificate<Scalar>& c) { return c.verdict == Verdict::Proven; });
  r.invariant = all_proven ? Verdict::Proven : Verdict::Refuted;
  r.isotone = r.invariant;
  return r;
}

/// Closed-form facet certification: K must be an orthant or a Lorentz cone.
/// Offsets are immaterial (translates of invariant sets are invariant).
template <typename Scalar>
PolyhedronReport<Scalar> certify_polyhedron(const Cone<Scalar>& k, const Polyhedron<Scalar>& p,
                                            Scalar tol = Scalar(kDefaultTol)) {
  if (p.halfspaces.empty()) throw std::invalid_argument("certify_polyhedron: empty facet list");
  using Kind = typename Cone<Scalar>::Kind;
  if (k.kind() != Kind::Orthant && k.kind() != Kind::Lorentz) {
    throw std::invalid_argument(
        "certify_polyhedron: closed forms exist for orthant and Lorentz cones only; use the "
        "generator-based overload otherwise");
  }
  std::vector<Certificate<Scalar>> facets;
  facets.reserve(p.halfspaces.size());
  for (const Halfspace<Scalar>& h : p.halfspaces) {
    require_dim(k.dim(), h.u.size(), "certify_polyhedron");
    facets.push_back(k.kind() == Kind::Orthant ? hyperplane_isotone_orthant(h.u, tol)
                                               : hyperplane_isotone_lorentz(h.u, tol));
  }
  return aggregate_report(std::move(facets), p.sharp);
}

/// Generator-pair facet certification for polyhedral self-dual cones.
template <typename Scalar>
PolyhedronReport<Scalar> certify_polyhedron_generators(
    const std::vector<Vector<Scalar>>& generators, const Polyhedron<Scalar>& p,
    Scalar tol = Scalar(kDefaultTol)) {
  if (p.halfspaces.empty()) {
    throw std::invalid_argument("certify_polyhedron_generators: empty facet list");
  }
  std::vector<Certificate<Scalar>> facets;
  facets.reserve(p.halfspaces.size());
  for (const Halfspace<Scalar>& h : p.halfspaces) {
    facets.push_back(hyperplane_isotone_bilinear(generators, h.u, tol));
  }
  return aggregate_report(std::move(facets), p.sharp);
}

template <typename Scalar>
using MembershipOracle = std::function<bool(const Vector<Scalar>&)>;

template <typename Scalar>
using PointSampler = std::function<Vector<Scalar>(std::mt19937_64&)>;

template <typename Scalar>
using PairSampler = std::function<std::pair<Vector<Scalar>, Vector<Scalar>>(std::mt19937_64&)>;

template <typename Scalar>
using WitnessPairs = std::vector<std::pair<Vector<Scalar>, Vector<Scalar>>>;

/// Sampled falsifier of meet/join invariance of a membership-defined set.
/// Caller-supplied probe pairs run before the random draws; probe endpoints
/// outside the set are skipped, while sampler output outside the set is an
/// input error.
template <typename Scalar>
Certificate<Scalar> falsify_invariance(const Cone<Scalar>& k,
                                       const MembershipOracle<Scalar>& is_member,
                                       const PointSampler<Scalar>& sampler, std::size_t n,
                                       std::uint64_t seed,
                                       const WitnessPairs<Scalar>& probes = {}) {
  std::size_t used = 0;
  auto test_pair = [&](const Vector<Scalar>& x,
                       const Vector<Scalar>& y) -> std::optional<Certificate<Scalar>> {
    ++used;
    if (!is_member(meet(k, x, y)) || !is_member(join(k, x, y))) {
      return Certificate<Scalar>::refuted(Method::Sampled, x, y, used, seed);
    }
    return std::nullopt;
  };

  for (const auto& [x, y] : probes) {
    if (!is_member(x) || !is_member(y)) continue;
    if (auto c = test_pair(x, y)) return *c;
  }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < n; ++t) {
    const Vector<Scalar> x = sampler(rng);
    const Vector<Scalar> y = sampler(rng);
    if (!is_member(x) || !is_member(y)) {
      throw std::invalid_argument("falsify_invariance: sampler produced a non-member point");
    }
    if (auto c = test_pair(x, y)) return *c;
  }
  return Certificate<Scalar>::no_counterexample(used, seed);
}

/// Sampled falsifier of projection isotonicity over ordered pairs x <=_K y.
template <typename Scalar>
Certificate<Scalar> falsify_isotonicity(
    const Cone<Scalar>& k, const std::function<Vector<Scalar>(const Vector<Scalar>&)>& projector,
    const PairSampler<Scalar>& ordered_pairs, std::size_t n, std::uint64_t seed,
    Scalar tol = Scalar(kDefaultTol)) {
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < n; ++t) {
    const auto [x, y] = ordered_pairs(rng);
    if (!leq(k, projector(x), projector(y), tol)) {
      return Certificate<Scalar>::refuted(Method::Sampled, x, y, t + 1, seed);
    }
  }
  return Certificate<Scalar>::no_counterexample(n, seed);
}

/// Ordered pairs x <=_K y with y = x + (cone draw).
template <typename Scalar>
PairSampler<Scalar> make_ordered_pair_sampler(const Cone<Scalar>& k, Scalar scale = Scalar(1)) {
  return [k, scale](std::mt19937_64& rng) {
    const Vector<Scalar> x = gaussian_point<Scalar>(k.dim(), rng, scale);
    const Vector<Scalar> y = x + scale * sample_one(k, rng);
    return std::make_pair(x, y);
  };
}

/// Coordinate-wise specialization: falsify sublattice closure under
/// componentwise min/max (K = orthant).
template <typename Scalar>
Certificate<Scalar> sublattice_check_orthant(const MembershipOracle<Scalar>& is_member,
                                             const PointSampler<Scalar>& sampler, std::size_t n,
                                             std::uint64_t seed,
                                             const WitnessPairs<Scalar>& probes = {}) {
  std::size_t used = 0;
  auto test_pair = [&](const Vector<Scalar>& x,
                       const Vector<Scalar>& y) -> std::optional<Certificate<Scalar>> {
    ++used;
    if (!is_member(x.cwiseMin(y)) || !is_member(x.cwiseMax(y))) {
      return Certificate<Scalar>::refuted(Method::Sampled, x, y, used, seed);
    }
    return std::nullopt;
  };

  for (const auto& [x, y] : probes) {
    if (!is_member(x) || !is_member(y)) continue;
    if (auto c = test_pair(x, y)) return *c;
  }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < n; ++t) {
    const Vector<Scalar> x = sampler(rng);
    const Vector<Scalar> y = sampler(rng);
    if (!is_member(x) || !is_member(y)) {
      throw std::invalid_argument("sublattice_check_orthant: sampler produced a non-member point");
    }
    if (auto c = test_pair(x, y)) return *c;
  }
  return Certificate<Scalar>::no_counterexample(used, seed);
}

/// Candidate pairs inside the hyperplane H(u, 0) whose meet or join leaves the
/// hyperplane. Deterministic constructions run first, then tangential random
/// draws. Returned pairs are witnesses for non-invariance of H; an empty list
/// suggests (but does not prove) invariance.
template <typename Scalar>
WitnessPairs<Scalar> hyperplane_invariance_probes(const Cone<Scalar>& k, const Vector<Scalar>& u,
                                                  std::uint64_t seed, std::size_t tries = 64,
                                                  Scalar min_gap = Scalar(1e-6)) {
  const Vector<Scalar> uh = normalized_normal(u, "hyperplane_invariance_probes");
  require_dim(k.dim(), u.size(), "hyperplane_invariance_probes");
  const Index m = k.dim();

  WitnessPairs<Scalar> candidates;
  using Kind = typename Cone<Scalar>::Kind;
  if (k.kind() == Kind::Orthant) {
    for (Index i = 0; i < m; ++i) {
      for (Index j = i + 1; j < m; ++j) {
        if (uh[i] * uh[j] > Scalar(1e-12)) {
          Vector<Scalar> z = Vector<Scalar>::Zero(m);
          z[i] = uh[j];
          z[j] = -uh[i];
          candidates.emplace_back(z, Vector<Scalar>(-z));
        }
      }
    }
  } else if (k.kind() == Kind::Lorentz && m >= 3 && std::abs(uh[m - 1]) > Scalar(1e-12)) {
    const Vector<Scalar> z0 = unit_orthogonal(Vector<Scalar>(uh.head(m - 1)));
    Vector<Scalar> w(m);
    w.head(m - 1) = z0;
    w[m - 1] = Scalar(1);
    const Vector<Scalar> zh = w - uh.dot(w) * uh;  // tangential part, lies in H
    candidates.emplace_back(zh, Vector<Scalar>::Zero(m));
    candidates.emplace_back(zh, Vector<Scalar>(-zh));
  }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < tries; ++t) {
    Vector<Scalar> a = gaussian_point<Scalar>(m, rng);
    Vector<Scalar> b = gaussian_point<Scalar>(m, rng);
    a -= uh.dot(a) * uh;
    b -= uh.dot(b) * uh;
    candidates.emplace_back(std::move(a), std::move(b));
  }

  WitnessPairs<Scalar> out;
  for (const auto& [x, y] : candidates) {
    const Scalar scale = std::max(Scalar(1), x.norm() + y.norm());
    const Scalar gap = std::abs(uh.dot(join(k, x, y))) / scale;
    if (gap > min_gap) {
      out.emplace_back(x, y);
      if (out.size() >= 16) break;
    }
  }
  return out;
}

/// Candidate pairs inside the polyhedron P placed on its hyperfaces, built by
/// translating hyperplane witnesses of refuted facets to a point of the
/// corresponding hyperface and shrinking until both endpoints are feasible.
/// Translation invariance and homogeneity of meet/join preserve the violation.
template <typename Scalar>
WitnessPairs<Scalar> polyhedron_invariance_probes(const Cone<Scalar>& k,
                                                  const Polyhedron<Scalar>& p,
                                                  std::uint64_t seed,
                                                  std::size_t tries_per_facet = 64) {
  const Index m = k.dim();
  std::mt19937_64 rng(seed);

  // Interior-ish point: average of projections of a few gaussians.
  Scalar scale = Scalar(1);
  for (const Halfspace<Scalar>& h : p.halfspaces) {
    scale = std::max(scale, std::abs(h.b) / h.u.norm());
  }
  Vector<Scalar> center = Vector<Scalar>::Zero(m);
  const int kCenterDraws = 8;
  for (int i = 0; i < kCenterDraws; ++i) {
    center += project(p, gaussian_point<Scalar>(m, rng, scale));
  }
  center /= Scalar(kCenterDraws);

  WitnessPairs<Scalar> out;
  for (std::size_t fi = 0; fi < p.halfspaces.size(); ++fi) {
    const Halfspace<Scalar>& h = p.halfspaces[fi];
    const WitnessPairs<Scalar> plane_witnesses =
        hyperplane_invariance_probes(k, h.u, seed + fi, tries_per_facet);
    if (plane_witnesses.empty()) continue;

    // Point on the hyperface: project the center onto P intersected with H.
    Polyhedron<Scalar> face = p;
    face.halfspaces.push_back(h);
    face.halfspaces.push_back(Halfspace<Scalar>{Vector<Scalar>(-h.u), -h.b});
    Vector<Scalar> p0;
    try {
      p0 = project(face, center, Scalar(1e-11), 20000);
    } catch (const std::runtime_error&) {
      continue;  // hyperface unreachable within budget; skip this facet
    }

    for (const auto& [wx, wy] : plane_witnesses) {
      bool placed = false;
      Scalar delta = scale;
      for (int halvings = 0; halvings < 40 && !placed; ++halvings, delta /= Scalar(2)) {
        const Vector<Scalar> x = p0 + delta * wx;
        const Vector<Scalar> y = p0 + delta * wy;
        if (violation(p, x) > Scalar(1e-9) * scale || violation(p, y) > Scalar(1e-9) * scale) {
          continue;
        }
        const Scalar v = std::max(violation(p, meet(k, x, y)), violation(p, join(k, x, y)));
        if (v > Scalar(1e-6) * scale) {
          out.emplace_back(x, y);
          placed = true;
        }
      }
      if (placed && out.size() >= 4 * p.halfspaces.size()) return out;
    }
  }
  return out;
}

}  // namespace conelat
