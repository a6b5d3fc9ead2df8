// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace conelat {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

/// Default membership / orthogonality tolerance (double precision, dims up to ~100).
inline constexpr double kDefaultTol = 1e-9;

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

inline void require_dim(Index expected, Index got, const char* where) {
  if (expected != got) {
    throw DimensionMismatch(std::string(where) + ": expected dimension " +
                            std::to_string(expected) + ", got " + std::to_string(got));
  }
}

}  // namespace conelat
