// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <random>

#include "conelat/certificate.hpp"
#include "conelat/cone.hpp"
#include "conelat/projection.hpp"
#include "conelat/types.hpp"

namespace conelat {

/// Sampled verification of the projection identities
///   P_D(-x) = -P_{-D} x,
///   P_{x+D} y = x + P_D(y - x),
///   P_D(t x + (1-t) P_D x) = P_D x  for t in [0, 1],
/// on a feasible polyhedron D.
template <typename Scalar>
Certificate<Scalar> projection_identities_check(const Polyhedron<Scalar>& d, Index dim,
                                                std::size_t n, std::uint64_t seed,
                                                Scalar tol = Scalar(1e-6)) {
  const Polyhedron<Scalar> neg_d = negate(d);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Scalar proj_tol = Scalar(1e-10);
  for (std::size_t t = 0; t < n; ++t) {
    const Vector<Scalar> x = gaussian_point<Scalar>(dim, rng, Scalar(2));
    const Vector<Scalar> y = gaussian_point<Scalar>(dim, rng, Scalar(2));
    const Scalar lam = Scalar(unif(rng));

    const Vector<Scalar> px = project(d, x, proj_tol);
    // (en)
    if ((project(d, Vector<Scalar>(-x), proj_tol) + project(neg_d, x, proj_tol)).norm() > tol) {
      return Certificate<Scalar>::refuted(Method::Sampled, x, y, t + 1, seed);
    }
    // (et)
    const Polyhedron<Scalar> shifted = translate(d, x);
    if ((project(shifted, y, proj_tol) - (x + project(d, Vector<Scalar>(y - x), proj_tol)))
            .norm() > tol) {
      return Certificate<Scalar>::refuted(Method::Sampled, x, y, t + 1, seed);
    }
    // (sun)
    const Vector<Scalar> mid = lam * x + (Scalar(1) - lam) * px;
    if ((project(d, mid, proj_tol) - px).norm() > tol) {
      return Certificate<Scalar>::refuted(Method::Sampled, x, mid, t + 1, seed);
    }
  }
  return Certificate<Scalar>::no_counterexample(n, seed);
}

}  // namespace conelat
