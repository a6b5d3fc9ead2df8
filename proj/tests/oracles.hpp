// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0
//
// Test-only oracles, independent of the projection code paths they check.

#pragma once

#include <cmath>
#include <random>

#include "conelat/cone.hpp"
#include "conelat/projection.hpp"
#include "conelat/types.hpp"

namespace conelat::testing {

/// Componentwise clamp: the closed-form box projection.
inline Vector<double> clamp_box(const Vector<double>& lo, const Vector<double>& hi,
                                const Vector<double>& x) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

/// Axis box [lo, hi] as a halfspace intersection (normals +-e_i).
inline Polyhedron<double> make_box(const Vector<double>& lo, const Vector<double>& hi) {
  Polyhedron<double> p;
  p.sharp = true;
  const Index m = lo.size();
  for (Index i = 0; i < m; ++i) {
    Vector<double> e = Vector<double>::Zero(m);
    e[i] = 1.0;
    p.halfspaces.push_back({e, hi[i]});
    p.halfspaces.push_back({Vector<double>(-e), -lo[i]});
  }
  return p;
}

/// Minimum distance from x to the 3-dimensional Lorentz cone by brute grid
/// enumeration over the cone parameterization (r cos a, r sin a, t), r <= t.
inline double lorentz3_grid_min_distance(const Vector<double>& x, double t_max,
                                         int t_steps = 160, int r_steps = 24,
                                         int angle_steps = 480) {
  double best = x.norm();  // distance to the apex
  for (int ti = 1; ti <= t_steps; ++ti) {
    const double t = t_max * ti / t_steps;
    for (int ri = 0; ri <= r_steps; ++ri) {
      const double r = t * ri / r_steps;
      for (int ai = 0; ai < angle_steps; ++ai) {
        const double a = 2.0 * M_PI * ai / angle_steps;
        const double dx = r * std::cos(a) - x[0];
        const double dy = r * std::sin(a) - x[1];
        const double dz = t - x[2];
        best = std::min(best, std::sqrt(dx * dx + dy * dy + dz * dz));
      }
    }
  }
  return best;
}

/// Sampled nearest-point check: no cone member may be closer to x than p.
inline bool no_closer_cone_point(const Cone<double>& k, const Vector<double>& x,
                                 const Vector<double>& p, std::size_t n, std::uint64_t seed,
                                 double tol = 1e-9) {
  const double d = (x - p).norm();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    if ((x - sample_one(k, rng)).norm() < d - tol) return false;
  }
  return true;
}

}  // namespace conelat::testing
