// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "conelat/cone.hpp"
#include "conelat/lattice.hpp"
#include "conelat/types.hpp"

namespace conelat {

struct PropertyResult {
  std::string cone;
  std::string name;
  double worst = 0.0;   // worst observed slack (compare against bound)
  double bound = 0.0;
  bool pass = true;
  bool informational = false;  // recorded, never asserted
};

inline Matrix<double> random_orthogonal(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix<double> g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix<double>> qr(g);
  return qr.householderQ() * Matrix<double>::Identity(dim, dim);
}

/// Build the named standard cones at each requested dimension.
/// Kinds: orthant, lorentz, rotated, product.
inline std::vector<std::pair<std::string, Cone<double>>> standard_cones(
    const std::vector<std::string>& kinds, const std::vector<int>& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::string, Cone<double>>> out;
  for (int d : dims) {
    for (const std::string& kind : kinds) {
      if (kind == "orthant") {
        out.emplace_back("orthant{" + std::to_string(d) + "}", Cone<double>::orthant(d));
      } else if (kind == "lorentz") {
        const int dd = std::max(d, 2);
        out.emplace_back("lorentz{" + std::to_string(dd) + "}", Cone<double>::lorentz(dd));
      } else if (kind == "rotated") {
        out.emplace_back("rotated_orthant{" + std::to_string(d) + "}",
                         Cone<double>::rotated_orthant(random_orthogonal(d, rng)));
      } else if (kind == "product") {
        std::vector<Cone<double>> parts;
        parts.push_back(Cone<double>::orthant(1));
        if (d >= 3) {
          parts.push_back(Cone<double>::lorentz(d - 1));
        } else {
          parts.push_back(Cone<double>::orthant(std::max(d - 1, 1)));
        }
        out.emplace_back("product{" + std::to_string(d) + "}",
                         Cone<double>::product(std::move(parts)));
      } else {
        throw std::invalid_argument("standard_cones: unknown cone kind '" + kind + "'");
      }
    }
  }
  return out;
}

namespace detail {

inline double dist_to_cone(const Cone<double>& k, const Vector<double>& v) {
  return (v - project(k, v)).norm();
}

}  // namespace detail

/// The sampled invariant suite: Moreau decomposition, projection facts, the
/// meet/join identity list and the angle inequality used by the Lorentz
/// hyperplane characterization.
inline std::vector<PropertyResult> run_property_suite(
    const std::vector<std::pair<std::string, Cone<double>>>& cones, std::size_t n,
    std::uint64_t seed) {
  using V = Vector<double>;
  std::vector<PropertyResult> results;

  for (const auto& [label, k] : cones) {
    const Index d = k.dim();
    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(label));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto gpt = [&]() { return gaussian_point<double>(d, rng, 2.0); };
    auto cpt = [&]() { return sample_one(k, rng); };

    auto add = [&](const std::string& name, double worst, double bound,
                   bool informational = false) {
      results.push_back(
          {label, name, worst, bound, informational || worst <= bound, informational});
    };

    double rec = 0, orth = 0, idem = 0, sdual = 0, nonexp = 0, charac = 0;
    double mj_two = 0, mj_comm = 0, mj_bounds = 0, mj_sum = 0, mj_shift = 0, mj_homog = 0, mj_orth = 0,
           mj_dual = 0, mj_lip = 0, mj_lip_ratio = 0, mj_seg = 0, mj_compl = 0, incmp = 0, rect = 0,
           angle = 0;

    for (std::size_t t = 0; t < n; ++t) {
      const V x = gpt(), y = gpt(), z = gpt(), w = gpt();
      const V cx = cpt(), cy = cpt();
      const double lam = unif(rng), mu = unif(rng), pos = 0.1 + 3.0 * unif(rng);

      // Moreau and basic projection facts.
      const MoreauPair<double> mp = moreau(k, x);
      rec = std::max(rec, ((mp.plus - mp.minus) - x).norm());
      orth = std::max(orth, std::abs(mp.plus.dot(mp.minus)));
      const V px = project(k, x);
      idem = std::max(idem, (project(k, px) - px).norm());
      sdual = std::max(sdual, -cx.dot(cy));
      nonexp = std::max(nonexp, (px - project(k, y)).norm() - (x - y).norm());
      charac = std::max(charac, (px - x).dot(px - cy));

      // Meet/join identity list.
      const V mt = meet(k, x, y), jn = join(k, x, y);
      mj_two = std::max({mj_two, (mt - (y - project(k, V(y - x)))).norm(),
                       (jn - (y + project(k, V(x - y)))).norm()});
      mj_comm = std::max({mj_comm, (mt - meet(k, y, x)).norm(), (jn - join(k, y, x)).norm()});
      mj_bounds = std::max({mj_bounds, detail::dist_to_cone(k, V(x - mt)),
                            detail::dist_to_cone(k, V(y - mt)),
                            detail::dist_to_cone(k, V(jn - x)),
                            detail::dist_to_cone(k, V(jn - y))});
      mj_sum = std::max(mj_sum, (mt + jn - x - y).norm());
      mj_shift = std::max(mj_shift, (meet(k, V(x + z), V(y + z)) - (mt + z)).norm());
      mj_homog = std::max(mj_homog, (meet(k, V(pos * x), V(pos * y)) - pos * mt).norm());
      mj_orth = std::max(mj_orth, std::abs((x - mt).dot(jn - x)));
      mj_dual = std::max(mj_dual, (join(k, V(-x), V(-y)) + mt).norm());

      const double spread = (x - z).norm() + (y - w).norm();
      const double dj = (jn - join(k, z, w)).norm();
      const double dm = (mt - meet(k, z, w)).norm();
      mj_lip = std::max({mj_lip, dj - 1.5 * spread, dm - 1.5 * spread});
      if (spread > 1e-12) mj_lip_ratio = std::max(mj_lip_ratio, std::max(dj, dm) / spread);

      const V zs = lam * x + (1 - lam) * mt, ws = mu * y + (1 - mu) * mt;
      const V zj = lam * x + (1 - lam) * jn, wj = mu * y + (1 - mu) * jn;
      mj_seg = std::max({mj_seg, (meet(k, zs, ws) - mt).norm(), (join(k, zj, wj) - jn).norm()});

      // Complementary pairs built from the Moreau split have meet zero.
      if (meet(k, mp.plus, mp.minus).norm() <= 1e-10) {
        mj_compl = std::max(mj_compl, std::abs(mp.plus.dot(mp.minus)));
      }

      if (!comparable(k, x, y)) {
        const V xs = x - mt, ys = y - mt;
        incmp = std::max({incmp, detail::dist_to_cone(k, xs), detail::dist_to_cone(k, ys),
                           std::abs(xs.dot(ys))});

        // Rectangle closure: meets/joins of points inside the rectangle stay
        // in its affine patch and barycentric bounds.
        const V e1 = x - mt, e2 = y - mt;
        if (e1.norm() > 1e-8 && e2.norm() > 1e-8) {
          auto combo = [&]() {
            double a = unif(rng), b = unif(rng), c = unif(rng), e = unif(rng);
            const double s = a + b + c + e;
            return V((a / s) * x + (b / s) * y + (c / s) * mt + (e / s) * jn);
          };
          const V u = combo(), v = combo();
          const V eh1 = e1 / e1.norm(), eh2 = e2 / e2.norm();
          for (const V& q : {meet(k, u, v), join(k, u, v)}) {
            const double s1 = (q - mt).dot(eh1), s2 = (q - mt).dot(eh2);
            const double resid = (q - (mt + s1 * eh1 + s2 * eh2)).norm();
            const double outside =
                std::max({-s1, s1 - e1.norm(), -s2, s2 - e2.norm(), 0.0});
            rect = std::max({rect, resid, outside});
          }
        }
      }

      // Angle inequality (<x,y> + ||x|| ||y||) ||a||^2 >= <a,x><a,y>.
      angle = std::max(angle, z.dot(x) * z.dot(y) -
                              (x.dot(y) + x.norm() * y.norm()) * z.squaredNorm());
    }

    add("moreau_reconstruction", rec, 1e-9);
    add("moreau_orthogonality", orth, 1e-9);
    add("projection_idempotent", idem, 1e-9);
    add("self_duality", sdual, 1e-9);
    add("projection_nonexpansive", nonexp, 1e-9);
    add("variational_characterization", charac, 1e-9);
    add("meetjoin_two_routes", mj_two, 1e-8);
    add("meetjoin_commutative", mj_comm, 1e-8);
    add("meetjoin_order_bounds", mj_bounds, 1e-8);
    add("meetjoin_sum", mj_sum, 1e-9);
    add("meetjoin_translation", mj_shift, 1e-8);
    add("meetjoin_homogeneity", mj_homog, 1e-8);
    add("meetjoin_orthogonality", mj_orth, 1e-9);
    add("meetjoin_duality", mj_dual, 1e-8);
    add("meetjoin_lipschitz_3_2", mj_lip, 1e-9);
    add("meetjoin_lipschitz_empirical", mj_lip_ratio, 1.5, /*informational=*/true);
    add("meetjoin_segment_stability", mj_seg, 1e-8);
    add("meetjoin_complementarity", mj_compl, 1e-8);
    add("incomparable_translates", incmp, 1e-8);
    add("rectangle_closure", rect, 1e-8);
    add("angle_inequality", angle, 1e-9);
  }
  return results;
}

}  // namespace conelat
