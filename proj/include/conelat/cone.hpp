// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "conelat/types.hpp"

namespace conelat {

/// A self-dual cone: nonnegative orthant, Lorentz (second-order) cone,
/// a rotated orthant Q(R^m_+) with Q orthogonal, or a direct product of these.
template <typename Scalar>
class Cone {
 public:
  enum class Kind { Orthant, Lorentz, RotatedOrthant, Product };

  static Cone orthant(Index dim) {
    if (dim < 1) throw std::invalid_argument("Cone::orthant: dim must be positive");
    return Cone(Kind::Orthant, dim);
  }

  static Cone lorentz(Index dim) {
    if (dim < 2) throw std::invalid_argument("Cone::lorentz: dim must be at least 2");
    return Cone(Kind::Lorentz, dim);
  }

  /// Q(R^m_+) is self-dual only for orthogonal Q; Q is validated at construction.
  static Cone rotated_orthant(Matrix<Scalar> q, Scalar orth_tol = Scalar(kDefaultTol)) {
    if (q.rows() < 1 || q.rows() != q.cols()) {
      throw std::invalid_argument("Cone::rotated_orthant: Q must be square and nonempty");
    }
    const Matrix<Scalar> gram = q.transpose() * q;
    const Scalar err =
        (gram - Matrix<Scalar>::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
    if (err > orth_tol) {
      throw std::invalid_argument("Cone::rotated_orthant: Q is not orthogonal (|Q^T Q - I| = " +
                                  std::to_string(static_cast<double>(err)) + ")");
    }
    Cone c(Kind::RotatedOrthant, q.rows());
    c.q_ = std::move(q);
    return c;
  }

  static Cone product(std::vector<Cone> parts) {
    if (parts.empty()) throw std::invalid_argument("Cone::product: empty part list");
    Index d = 0;
    for (const Cone& p : parts) d += p.dim();
    Cone c(Kind::Product, d);
    c.parts_ = std::move(parts);
    return c;
  }

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  const Matrix<Scalar>& rotation() const { return q_; }
  const std::vector<Cone>& parts() const { return parts_; }

 private:
  Cone(Kind k, Index d) : kind_(k), dim_(d) {}

  Kind kind_;
  Index dim_;
  Matrix<Scalar> q_;          // RotatedOrthant only
  std::vector<Cone> parts_;   // Product only
};

/// Membership in the distance-epsilon relaxation of K.
template <typename Scalar>
bool contains(const Cone<Scalar>& k, const Vector<Scalar>& x, Scalar tol = Scalar(kDefaultTol)) {
  require_dim(k.dim(), x.size(), "contains");
  if (tol < Scalar(0)) throw std::invalid_argument("contains: tol must be nonnegative");
  using Kind = typename Cone<Scalar>::Kind;
  switch (k.kind()) {
    case Kind::Orthant:
      return x.minCoeff() >= -tol;
    case Kind::Lorentz: {
      const Index m = x.size() - 1;
      return x.head(m).norm() <= x[m] + tol;
    }
    case Kind::RotatedOrthant:
      return (k.rotation().transpose() * x).minCoeff() >= -tol;
    case Kind::Product: {
      Index off = 0;
      for (const Cone<Scalar>& p : k.parts()) {
        if (!contains<Scalar>(p, x.segment(off, p.dim()), tol)) return false;
        off += p.dim();
      }
      return true;
    }
  }
  return false;
}

/// Exact metric projection P_K x (closed form per variant).
template <typename Scalar>
Vector<Scalar> project(const Cone<Scalar>& k, const Vector<Scalar>& x) {
  require_dim(k.dim(), x.size(), "project");
  using Kind = typename Cone<Scalar>::Kind;
  switch (k.kind()) {
    case Kind::Orthant:
      return x.cwiseMax(Scalar(0));
    case Kind::Lorentz: {
      const Index m = x.size() - 1;
      const Scalar t = x[m];
      const Scalar r = x.head(m).norm();
      // Tie cases r == |t| agree across branches; first branch wins.
      if (r <= t) return x;
      if (r <= -t) return Vector<Scalar>::Zero(x.size());
      const Scalar alpha = (t + r) / Scalar(2);
      Vector<Scalar> p(x.size());
      p.head(m) = (alpha / r) * x.head(m);
      p[m] = alpha;
      return p;
    }
    case Kind::RotatedOrthant:
      return k.rotation() * (k.rotation().transpose() * x).cwiseMax(Scalar(0)).eval();
    case Kind::Product: {
      Vector<Scalar> out(x.size());
      Index off = 0;
      for (const Cone<Scalar>& p : k.parts()) {
        out.segment(off, p.dim()) = project<Scalar>(p, x.segment(off, p.dim()));
        off += p.dim();
      }
      return out;
    }
  }
  return x;
}

/// Moreau decomposition x = plus - minus with plus = P_K x, minus = P_K(-x),
/// <plus, minus> = 0.
template <typename Scalar>
struct MoreauPair {
  Vector<Scalar> plus;
  Vector<Scalar> minus;
};

template <typename Scalar>
MoreauPair<Scalar> moreau(const Cone<Scalar>& k, const Vector<Scalar>& x) {
  require_dim(k.dim(), x.size(), "moreau");
  return MoreauPair<Scalar>{project(k, x), project(k, Vector<Scalar>(-x))};
}

/// Order relation induced by K: x <=_K y iff y - x in K.
template <typename Scalar>
bool leq(const Cone<Scalar>& k, const Vector<Scalar>& x, const Vector<Scalar>& y,
         Scalar tol = Scalar(kDefaultTol)) {
  require_dim(x.size(), y.size(), "leq");
  return contains(k, Vector<Scalar>(y - x), tol);
}

/// One draw that lies in K exactly by construction.
template <typename Scalar>
Vector<Scalar> sample_one(const Cone<Scalar>& k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  using Kind = typename Cone<Scalar>::Kind;
  switch (k.kind()) {
    case Kind::Orthant: {
      Vector<Scalar> v(k.dim());
      for (Index i = 0; i < k.dim(); ++i) v[i] = Scalar(std::abs(normal(rng)));
      return v;
    }
    case Kind::Lorentz: {
      const Index m = k.dim() - 1;
      Vector<Scalar> v(k.dim());
      for (Index i = 0; i < m; ++i) v[i] = Scalar(normal(rng));
      const Scalar t = Scalar(std::abs(normal(rng)));
      const Scalar r = v.head(m).norm();
      if (r > Scalar(0)) {
        v.head(m) *= t * Scalar(unif(rng)) / r;
      }
      v[m] = t;
      return v;
    }
    case Kind::RotatedOrthant: {
      Vector<Scalar> v(k.dim());
      for (Index i = 0; i < k.dim(); ++i) v[i] = Scalar(std::abs(normal(rng)));
      return k.rotation() * v;
    }
    case Kind::Product: {
      Vector<Scalar> out(k.dim());
      Index off = 0;
      for (const Cone<Scalar>& p : k.parts()) {
        out.segment(off, p.dim()) = sample_one<Scalar>(p, rng);
        off += p.dim();
      }
      return out;
    }
  }
  return Vector<Scalar>::Zero(k.dim());
}

/// n deterministic (seeded) members of K.
template <typename Scalar>
std::vector<Vector<Scalar>> sample(const Cone<Scalar>& k, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Vector<Scalar>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(k, rng));
  return out;
}

/// Gaussian point, not restricted to K; shares the sampling RNG conventions.
template <typename Scalar>
Vector<Scalar> gaussian_point(Index dim, std::mt19937_64& rng, Scalar scale = Scalar(1)) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector<Scalar> v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = scale * Scalar(normal(rng));
  return v;
}

}  // namespace conelat
