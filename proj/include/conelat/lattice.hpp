// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <utility>
#include <variant>

#include "conelat/cone.hpp"
#include "conelat/types.hpp"

namespace conelat {

/// Generalized meet: x - P_K(x - y). Componentwise min when K is the orthant.
template <typename Scalar>
Vector<Scalar> meet(const Cone<Scalar>& k, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  require_dim(x.size(), y.size(), "meet");
  return x - project(k, Vector<Scalar>(x - y));
}

/// Generalized join: x + P_K(y - x). Componentwise max when K is the orthant.
template <typename Scalar>
Vector<Scalar> join(const Cone<Scalar>& k, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  require_dim(x.size(), y.size(), "join");
  return x + project(k, Vector<Scalar>(y - x));
}

template <typename Scalar>
bool comparable(const Cone<Scalar>& k, const Vector<Scalar>& x, const Vector<Scalar>& y,
                Scalar tol = Scalar(kDefaultTol)) {
  return leq(k, x, y, tol) || leq(k, y, x, tol);
}

/// The planar rectangle with vertices x, y, meet, join: the minimal invariant
/// convex set containing an incomparable pair.
template <typename Scalar>
struct Rectangle {
  Vector<Scalar> x;
  Vector<Scalar> y;
  Vector<Scalar> meet;
  Vector<Scalar> join;
};

template <typename Scalar>
struct ComparablePair {
  Vector<Scalar> first;
  Vector<Scalar> second;
};

template <typename Scalar>
using MinimalInvariantSet = std::variant<ComparablePair<Scalar>, Rectangle<Scalar>>;

/// Minimal invariant set containing {x, y}: the pair itself when comparable,
/// otherwise the rectangle spanned by x, y, meet, join.
template <typename Scalar>
MinimalInvariantSet<Scalar> minimal_invariant(const Cone<Scalar>& k, const Vector<Scalar>& x,
                                              const Vector<Scalar>& y,
                                              Scalar tol = Scalar(kDefaultTol)) {
  require_dim(x.size(), y.size(), "minimal_invariant");
  if (comparable(k, x, y, tol)) {
    return ComparablePair<Scalar>{x, y};
  }
  return Rectangle<Scalar>{x, y, meet(k, x, y), join(k, x, y)};
}

/// Complementarity residual ||x meet fx||: zero exactly when x in K,
/// fx in K and <x, fx> = 0.
template <typename Scalar>
Scalar ncp_residual(const Cone<Scalar>& k, const Vector<Scalar>& x, const Vector<Scalar>& fx) {
  return meet(k, x, fx).norm();
}

}  // namespace conelat
