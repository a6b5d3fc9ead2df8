// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "conelat/cone.hpp"
#include "conelat/lattice.hpp"
#include "conelat/projection.hpp"
#include "conelat/types.hpp"

namespace conelat {

template <typename Scalar>
using MapFn = std::function<Vector<Scalar>(const Vector<Scalar>&)>;

/// Affine map F(x) = M x + q, the convenience constructor for test problems.
template <typename Scalar>
struct AffineMap {
  Matrix<Scalar> linear;
  Vector<Scalar> offset;
  Vector<Scalar> operator()(const Vector<Scalar>& x) const { return linear * x + offset; }
};

template <typename Scalar>
struct VIProblem {
  std::variant<Polyhedron<Scalar>, Cone<Scalar>> domain;
  MapFn<Scalar> map;
  Scalar step{};
  Vector<Scalar> x0;
  Scalar tol = Scalar(1e-8);
  std::size_t max_iter = 1000;
};

template <typename Scalar>
struct Trajectory {
  std::vector<Vector<Scalar>> iterates;  // starts with x0
  std::vector<Scalar> residuals;
  bool converged = false;
  std::size_t order_monotone_prefix = 0;
};

/// Longest prefix of consecutive iterate pairs that stay <=_K-comparable in
/// the direction fixed by the first comparable pair.
template <typename Scalar>
std::size_t order_monotone_prefix(const Cone<Scalar>& k,
                                  const std::vector<Vector<Scalar>>& iterates,
                                  Scalar tol = Scalar(kDefaultTol)) {
  if (iterates.size() < 2) return 0;
  const bool up = leq(k, iterates[0], iterates[1], tol);
  const bool down = leq(k, iterates[1], iterates[0], tol);
  if (!up && !down) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < iterates.size(); ++i) {
    const bool ok = up ? leq(k, iterates[i], iterates[i + 1], tol)
                       : leq(k, iterates[i + 1], iterates[i], tol);
    if (!ok) break;
    ++count;
  }
  return count;
}

namespace detail {

template <typename Scalar>
void check_finite(const Vector<Scalar>& v, const char* where) {
  if (!v.allFinite()) throw std::runtime_error(std::string(where) + ": non-finite map value");
}

}  // namespace detail

/// Projection fixed-point iteration x_{k+1} = P_domain(x_k - step * F(x_k));
/// residual ||x_{k+1} - x_k|| / step.
template <typename Scalar>
Trajectory<Scalar> solve_vi(const VIProblem<Scalar>& p, const Cone<Scalar>& k) {
  if (p.step <= Scalar(0)) throw std::invalid_argument("solve_vi: step must be positive");
  auto proj = [&](const Vector<Scalar>& v) {
    return std::visit([&](const auto& dom) { return project(dom, v); }, p.domain);
  };
  Trajectory<Scalar> traj;
  Vector<Scalar> x = p.x0;
  traj.iterates.push_back(x);
  for (std::size_t it = 0; it < p.max_iter; ++it) {
    const Vector<Scalar> fx = p.map(x);
    detail::check_finite(fx, "solve_vi");
    require_dim(x.size(), fx.size(), "solve_vi");
    const Vector<Scalar> xn = proj(Vector<Scalar>(x - p.step * fx));
    const Scalar res = (xn - x).norm() / p.step;
    traj.iterates.push_back(xn);
    traj.residuals.push_back(res);
    x = xn;
    if (res <= p.tol) {
      traj.converged = true;
      break;
    }
  }
  traj.order_monotone_prefix = order_monotone_prefix(k, traj.iterates);
  return traj;
}

/// Complementarity iteration over the cone itself; convergence is declared by
/// the meet-based residual ||x meet F(x)||.
template <typename Scalar>
Trajectory<Scalar> ncp_solve(const Cone<Scalar>& k, const MapFn<Scalar>& f,
                             const Vector<Scalar>& x0, Scalar step, Scalar tol = Scalar(1e-8),
                             std::size_t max_iter = 1000) {
  if (step <= Scalar(0)) throw std::invalid_argument("ncp_solve: step must be positive");
  require_dim(k.dim(), x0.size(), "ncp_solve");
  Trajectory<Scalar> traj;
  Vector<Scalar> x = x0;
  traj.iterates.push_back(x);
  for (std::size_t it = 0; it <= max_iter; ++it) {
    const Vector<Scalar> fx = f(x);
    detail::check_finite(fx, "ncp_solve");
    require_dim(x.size(), fx.size(), "ncp_solve");
    const Scalar res = ncp_residual(k, x, fx);
    traj.residuals.push_back(res);
    if (res <= tol) {
      traj.converged = true;
      break;
    }
    if (it == max_iter) break;
    x = project(k, Vector<Scalar>(x - step * fx));
    traj.iterates.push_back(x);
  }
  traj.order_monotone_prefix = order_monotone_prefix(k, traj.iterates);
  return traj;
}

}  // namespace conelat
