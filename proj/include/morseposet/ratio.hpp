#pragma once

#include <cmath>
#include <optional>

#include "morseposet/sampling.hpp"

namespace morseposet {

/// Tight lower bound of the circumradius-to-shortest-edge ratio on each of
/// the nine classes. The bound for 4641 is the global minimum, attained by
/// the regular tetrahedron; every other bound is an infimum approached by
/// flat or tied limit configurations on the class boundary.
inline double min_ratio_bound(TypeLabel t) {
  switch (t) {
    case TypeLabel::T4641:
      return std::sqrt(6.0) / 4.0;
    case TypeLabel::T4630:
    case TypeLabel::T4531:
    case TypeLabel::T4520:
    case TypeLabel::T4421O:
    case TypeLabel::T4410O:
      return std::sqrt(2.0) / 2.0;
    case TypeLabel::T4410P:
      return std::sqrt(7.0 / 12.0);
    case TypeLabel::T4300L:
    case TypeLabel::T4300T:
      return std::sqrt(3.0) / 2.0;
  }
  return 0.0;
}

struct RatioReport {
  double rho = 0.0;          // circumradius / min_edge
  double circumradius = 0.0;
  double min_edge = 0.0;
  SubsetIndex min_edge_subset;
  bool min_edge_active = false;
};

/// Circumradius over shortest edge length for 4 points in R^3. Scale
/// invariant; undefined (NonGeneric) for coplanar points.
inline RatioReport edelsbrunner_ratio(const Configuration& c, const Tolerance& tol = {}) {
  if (c.dim() != 3 || c.size() != 4)
    throw std::invalid_argument("edelsbrunner_ratio expects 4 points in R^3");

  CircumData full;
  try {
    full = circumcenter(c, SubsetIndex::full(4), tol);
  } catch (const DegenerateSubset&) {
    throw NonGeneric("coplanar points: circumradius undefined");
  }

  int bi = 0, bj = 1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double d = dist(c.point(i), c.point(j));
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }

  RatioReport rep;
  rep.circumradius = full.radius;
  rep.min_edge = best;
  rep.min_edge_subset = SubsetIndex::pair(bi, bj);
  rep.rho = full.radius / best;
  try {
    rep.min_edge_active = is_active(c, rep.min_edge_subset, tol);
  } catch (const DegenerateSubset& ex) {
    throw NonGeneric(ex.what());
  }
  return rep;
}

struct TypeMinimum {
  double rho = 0.0;
  std::int64_t sample_index = -1;
  Configuration config;
};

struct MinRatioScan {
  std::array<std::optional<TypeMinimum>, kTypeLabelCount> per_type;
  std::int64_t nongeneric = 0;
  std::int64_t theorem_violations = 0;
  std::int64_t total = 0;
};

namespace detail {

// Keep the smaller (rho, sample_index); ties on rho resolve to the lower
// index so merges are order-independent.
inline void take_min(std::optional<TypeMinimum>& slot, const TypeMinimum& cand) {
  if (!slot || cand.rho < slot->rho ||
      (cand.rho == slot->rho && cand.sample_index < slot->sample_index))
    slot = cand;
}

}  // namespace detail

/// Track the smallest ratio seen per class over a sampled stream of random
/// sphere tetrahedra, with the witness configuration for each minimum.
/// Deterministic for fixed (seed, samples) regardless of workers.
inline MinRatioScan per_type_min_scan(const SamplerConfig& cfg, const Tolerance& tol = {}) {
  if (cfg.samples < 1) throw std::invalid_argument("per_type_min_scan: samples must be positive");
  if (cfg.workers < 1) throw std::invalid_argument("per_type_min_scan: workers must be positive");

  const int n = static_cast<int>(std::min<std::int64_t>(cfg.workers, cfg.samples));
  std::vector<MinRatioScan> parts(static_cast<std::size_t>(n));
  detail::parallel_sample_loop(cfg.samples, n, [&](int w, std::int64_t lo, std::int64_t hi) {
    MinRatioScan& part = parts[static_cast<std::size_t>(w)];
    for (std::int64_t i = lo; i < hi; ++i) {
      const Configuration c = sample_sphere_tetrahedron(cfg.seed, i);
      try {
        const TetrahedronType t = classify_tetrahedron(c, tol);
        const RatioReport r = edelsbrunner_ratio(c, tol);
        detail::take_min(part.per_type[static_cast<std::size_t>(t.label)], TypeMinimum{r.rho, i, c});
      } catch (const NonGeneric&) {
        ++part.nongeneric;
      } catch (const EulerViolation&) {
        ++part.nongeneric;
      } catch (const TheoremViolation&) {
        ++part.theorem_violations;
      }
      ++part.total;
    }
  });

  MinRatioScan out;
  for (const auto& part : parts) {
    for (std::size_t k = 0; k < out.per_type.size(); ++k)
      if (part.per_type[k]) detail::take_min(out.per_type[k], *part.per_type[k]);
    out.nongeneric += part.nongeneric;
    out.theorem_violations += part.theorem_violations;
    out.total += part.total;
  }
  return out;
}

}  // namespace morseposet
