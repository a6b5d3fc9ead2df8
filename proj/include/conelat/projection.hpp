// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "conelat/types.hpp"

namespace conelat {

/// H(u, a) stored as {x : <u, x> = b} with b = <u, a>.
template <typename Scalar>
struct Hyperplane {
  Vector<Scalar> u;
  Scalar b{};
};

/// H_-(u, a) = {x : <u, x> <= b}.
template <typename Scalar>
struct Halfspace {
  Vector<Scalar> u;
  Scalar b{};
};

template <typename Scalar>
struct Polyhedron {
  std::vector<Halfspace<Scalar>> halfspaces;
  bool sharp = false;  // caller-declared; never verified here
};

struct IterationLimit : std::runtime_error {
  explicit IterationLimit(const std::string& what) : std::runtime_error(what) {}
};

struct SuspectedInfeasible : std::runtime_error {
  explicit SuspectedInfeasible(const std::string& what) : std::runtime_error(what) {}
};

template <typename Scalar>
void require_nonzero_normal(const Vector<Scalar>& u, const char* where) {
  if (u.size() == 0 || u.norm() == Scalar(0)) {
    throw std::invalid_argument(std::string(where) + ": zero normal");
  }
}

template <typename Scalar>
Vector<Scalar> project(const Hyperplane<Scalar>& h, const Vector<Scalar>& x) {
  require_nonzero_normal(h.u, "project(Hyperplane)");
  require_dim(h.u.size(), x.size(), "project(Hyperplane)");
  return x - ((h.u.dot(x) - h.b) / h.u.squaredNorm()) * h.u;
}

template <typename Scalar>
Vector<Scalar> project(const Halfspace<Scalar>& h, const Vector<Scalar>& x) {
  require_nonzero_normal(h.u, "project(Halfspace)");
  require_dim(h.u.size(), x.size(), "project(Halfspace)");
  if (h.u.dot(x) <= h.b) return x;
  return project(Hyperplane<Scalar>{h.u, h.b}, x);
}

/// Largest normalized constraint violation max_i (<u_i,x> - b_i)_+ / ||u_i||.
template <typename Scalar>
Scalar violation(const Polyhedron<Scalar>& p, const Vector<Scalar>& x) {
  Scalar v = Scalar(0);
  for (const Halfspace<Scalar>& h : p.halfspaces) {
    v = std::max(v, (h.u.dot(x) - h.b) / h.u.norm());
  }
  return v;
}

template <typename Scalar>
bool member(const Polyhedron<Scalar>& p, const Vector<Scalar>& x,
            Scalar tol = Scalar(kDefaultTol)) {
  return violation(p, x) <= tol;
}

/// Nearest point of the halfspace intersection by Dykstra's cyclic scheme.
/// The correction vectors restore the nearest-point guarantee that plain
/// alternating projection lacks.
template <typename Scalar>
Vector<Scalar> project(const Polyhedron<Scalar>& p, const Vector<Scalar>& x,
                       Scalar tol = Scalar(kDefaultTol), std::size_t max_iter = 10000) {
  if (p.halfspaces.empty()) throw std::invalid_argument("project(Polyhedron): empty halfspace list");
  for (const Halfspace<Scalar>& h : p.halfspaces) {
    require_nonzero_normal(h.u, "project(Polyhedron)");
    require_dim(h.u.size(), x.size(), "project(Polyhedron)");
  }
  const std::size_t q = p.halfspaces.size();
  Vector<Scalar> cur = x;
  std::vector<Vector<Scalar>> corr(q, Vector<Scalar>::Zero(x.size()));
  Scalar disp = std::numeric_limits<Scalar>::infinity();
  Scalar mid_disp = std::numeric_limits<Scalar>::infinity();
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Vector<Scalar> start = cur;
    // Net point movement alone can vanish over a cycle while the correction
    // vectors still drift (the iterate loops through the same positions), so
    // convergence is measured on both.
    Scalar corr_move = Scalar(0);
    for (std::size_t i = 0; i < q; ++i) {
      const Vector<Scalar> y = cur + corr[i];
      cur = project(p.halfspaces[i], y);
      corr_move += (y - cur - corr[i]).norm();
      corr[i] = y - cur;
    }
    disp = (cur - start).norm() + corr_move;
    if (it == max_iter / 2) mid_disp = disp;
    if (disp <= tol && violation(p, cur) <= tol) return cur;
  }
  if (std::isfinite(mid_disp) && disp > Scalar(0.5) * mid_disp && disp > tol) {
    throw SuspectedInfeasible(
        "project(Polyhedron): cycle displacement failed to contract (last " +
        std::to_string(static_cast<double>(disp)) + "); the intersection may be empty");
  }
  throw IterationLimit("project(Polyhedron): no convergence in " + std::to_string(max_iter) +
                       " cycles (violation " +
                       std::to_string(static_cast<double>(violation(p, cur))) +
                       ", displacement " + std::to_string(static_cast<double>(disp)) + ")");
}

/// Projection onto an intersection of hyperplanes by least squares on the
/// stacked constraints (exact, no iteration).
template <typename Scalar>
Vector<Scalar> project_affine(const std::vector<Hyperplane<Scalar>>& planes,
                              const Vector<Scalar>& x) {
  if (planes.empty()) throw std::invalid_argument("project_affine: empty hyperplane list");
  Matrix<Scalar> a(static_cast<Index>(planes.size()), x.size());
  Vector<Scalar> b(static_cast<Index>(planes.size()));
  for (std::size_t i = 0; i < planes.size(); ++i) {
    require_nonzero_normal(planes[i].u, "project_affine");
    require_dim(planes[i].u.size(), x.size(), "project_affine");
    a.row(static_cast<Index>(i)) = planes[i].u.transpose();
    b[static_cast<Index>(i)] = planes[i].b;
  }
  // Minimum-norm correction d with A d = A x - b gives the nearest affine point.
  const Vector<Scalar> d = a.completeOrthogonalDecomposition().solve(Vector<Scalar>(a * x - b));
  return x - d;
}

/// Negation -D of a halfspace description.
template <typename Scalar>
Polyhedron<Scalar> negate(const Polyhedron<Scalar>& p) {
  Polyhedron<Scalar> out;
  out.sharp = p.sharp;
  out.halfspaces.reserve(p.halfspaces.size());
  for (const Halfspace<Scalar>& h : p.halfspaces) {
    out.halfspaces.push_back(Halfspace<Scalar>{Vector<Scalar>(-h.u), h.b});
  }
  return out;
}

/// Translate x + D.
template <typename Scalar>
Polyhedron<Scalar> translate(const Polyhedron<Scalar>& p, const Vector<Scalar>& x) {
  Polyhedron<Scalar> out;
  out.sharp = p.sharp;
  out.halfspaces.reserve(p.halfspaces.size());
  for (const Halfspace<Scalar>& h : p.halfspaces) {
    out.halfspaces.push_back(Halfspace<Scalar>{h.u, h.b + h.u.dot(x)});
  }
  return out;
}

}  // namespace conelat
