#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "morseposet/geometry.hpp"

namespace morseposet {

/// An active subset of the configuration: its circumcenter is a critical
/// point of the minimum-distance function, the circumradius is the critical
/// value, and the index equals subset size minus one.
struct ActiveSubset {
  SubsetIndex subset;
  Vec center;
  double critical_value = 0.0;
  int index = 0;
};

/// The set of active subsets, ordered by inclusion. Elements are stored
/// sorted by (size, mask) so layers read off in sequence.
class MorsePoset {
 public:
  MorsePoset(int dim, int point_count, std::vector<ActiveSubset> elements)
      : dim_(dim), point_count_(point_count), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end(),
              [](const ActiveSubset& a, const ActiveSubset& b) { return a.subset < b.subset; });
  }

  int dim() const { return dim_; }
  int point_count() const { return point_count_; }
  const std::vector<ActiveSubset>& elements() const { return elements_; }

  std::vector<std::uint64_t> subset_masks() const {
    std::vector<std::uint64_t> masks;
    masks.reserve(elements_.size());
    for (const auto& e : elements_) masks.push_back(e.subset.mask());
    std::sort(masks.begin(), masks.end());
    return masks;
  }

  const ActiveSubset* find(const SubsetIndex& s) const {
    for (const auto& e : elements_)
      if (e.subset == s) return &e;
    return nullptr;
  }

  bool contains(const SubsetIndex& s) const { return find(s) != nullptr; }

 private:
  int dim_;
  int point_count_;
  std::vector<ActiveSubset> elements_;
};

namespace detail {

// Activity of a non-singleton subset given its circumcenter data:
// (a) the center lies strictly inside the subset's convex hull, and
// (b) every configuration point outside the subset lies strictly outside
//     the circumsphere. Either predicate inside its tolerance band makes
//     the configuration non-generic.
inline bool active_given_circ(const Configuration& c, const SubsetIndex& s,
                              const CircumData& circ, const Tolerance& tol) {
  bool interior = true;
  const double cband = tol.coefficient_band();
  for (double w : circ.barycentric) {
    if (std::abs(w) <= cband)
      throw NonGeneric("circumcenter of " + subset_str(s) + " lies on a hull face within tolerance");
    if (w < 0.0) interior = false;
  }

  bool empty_sphere = true;
  const double dband = tol.distance_band(c.diameter());
  for (int p = 0; p < c.size(); ++p) {
    if (s.contains(p)) continue;
    const double d = dist(c.point(p), circ.center);
    if (std::abs(d - circ.radius) <= dband)
      throw NonGeneric("point " + std::to_string(p) + " within tolerance of the circumsphere of " +
                       subset_str(s));
    if (d < circ.radius) empty_sphere = false;
  }
  return interior && empty_sphere;
}

}  // namespace detail

/// Activity predicate. Singletons are always active (each point is a local
/// minimum). Throws NonGeneric when a predicate is indeterminate at the
/// tolerance, DegenerateSubset when the subset is affinely dependent.
inline bool is_active(const Configuration& c, const SubsetIndex& s, const Tolerance& tol = {}) {
  check_subset(c, s);
  if (s.size() == 1) return true;
  const CircumData circ = circumcenter(c, s, tol);
  return detail::active_given_circ(c, s, circ, tol);
}

/// Build the full Morse poset by exhaustive enumeration of subsets of size
/// 1..dim+1. Affinely dependent subsets make the configuration non-generic.
inline MorsePoset morse_poset(const Configuration& c, const Tolerance& tol = {}) {
  std::vector<ActiveSubset> elems;
  for (int p = 0; p < c.size(); ++p) {
    auto pt = c.point(p);
    elems.push_back({SubsetIndex({p}), Vec(pt.begin(), pt.end()), 0.0, 0});
  }
  try {
    detail::for_each_subset(c.size(), 2, c.dim() + 1, [&](const std::vector<int>& idx) {
      SubsetIndex s(idx);
      const CircumData circ = circumcenter(c, s, tol);
      if (detail::active_given_circ(c, s, circ, tol))
        elems.push_back({std::move(s), circ.center, circ.radius, static_cast<int>(idx.size()) - 1});
    });
  } catch (const DegenerateSubset& e) {
    throw NonGeneric(std::string("affinely dependent subset: ") + e.what());
  }
  return MorsePoset(c.dim(), c.size(), std::move(elems));
}

/// Counts of active subsets per index. The alternating sum must be 1 for
/// any generic configuration; a mismatch reports a tolerance failure.
struct CriticalSpectrum {
  std::vector<int> counts;  // counts[i] = active subsets of index i

  int alternating_sum() const {
    int s = 0;
    int sign = 1;
    for (int c : counts) {
      s += sign * c;
      sign = -sign;
    }
    return s;
  }
};

inline CriticalSpectrum critical_spectrum(const MorsePoset& poset) {
  CriticalSpectrum sp;
  sp.counts.assign(static_cast<std::size_t>(poset.dim()) + 1, 0);
  for (const auto& e : poset.elements()) ++sp.counts[static_cast<std::size_t>(e.index)];
  if (sp.alternating_sum() != 1)
    throw EulerViolation("alternating sum of critical counts is " +
                         std::to_string(sp.alternating_sum()) + ", expected 1");
  return sp;
}

/// Active subsets of size two: the edges whose diametral sphere contains no
/// other configuration point.
inline std::vector<SubsetIndex> gabriel_graph(const Configuration& c, const Tolerance& tol = {}) {
  std::vector<SubsetIndex> edges;
  try {
    for (int i = 0; i < c.size(); ++i)
      for (int j = i + 1; j < c.size(); ++j) {
        SubsetIndex e = SubsetIndex::pair(i, j);
        if (is_active(c, e, tol)) edges.push_back(std::move(e));
      }
  } catch (const DegenerateSubset& ex) {
    throw NonGeneric(std::string("coincident points: ") + ex.what());
  }
  return edges;
}

struct Ball {
  Vec center;
  double radius = -1.0;  // negative = empty ball

  bool contains(std::span<const double> p) const {
    if (radius < 0.0) return false;
    return dist2(p, center) <= radius * radius * (1.0 + 1e-12);
  }
};

namespace detail {

inline Ball ball_of_support(const std::vector<std::span<const double>>& pts,
                            const std::vector<int>& support, int dim) {
  if (support.empty()) return Ball{Vec(static_cast<std::size_t>(dim), 0.0), -1.0};
  std::vector<std::span<const double>> sp;
  sp.reserve(support.size());
  for (int i : support) sp.push_back(pts[static_cast<std::size_t>(i)]);
  auto sol = circumball(sp, 1e-14);
  if (!sol.ok) throw NonGeneric("degenerate support set in minimum enclosing ball");
  return Ball{std::move(sol.center), sol.radius};
}

// Welzl recursion; support sets never exceed dim+1 points.
inline Ball welzl(const std::vector<std::span<const double>>& pts, int limit,
                  std::vector<int>& support, int dim) {
  if (limit == 0 || static_cast<int>(support.size()) == dim + 1)
    return ball_of_support(pts, support, dim);
  Ball b = welzl(pts, limit - 1, support, dim);
  if (b.contains(pts[static_cast<std::size_t>(limit) - 1])) return b;
  support.push_back(limit - 1);
  Ball r = welzl(pts, limit - 1, support, dim);
  support.pop_back();
  return r;
}

}  // namespace detail

inline Ball min_enclosing_ball(const Configuration& c, const SubsetIndex& s) {
  check_subset(c, s);
  std::vector<std::span<const double>> pts;
  pts.reserve(static_cast<std::size_t>(s.size()));
  for (int i : s.indices()) pts.push_back(c.point(i));
  std::vector<int> support;
  return detail::welzl(pts, static_cast<int>(pts.size()), support, c.dim());
}

/// Euler characteristic of the nerve of the closed balls B(P_i, epsilon):
/// a simplex enters the nerve exactly when the minimum enclosing ball of its
/// vertices has radius <= epsilon. Computed by full subset enumeration, so
/// it is an oracle independent of the activity predicates; for non-critical
/// epsilon it must equal the alternating count of active subsets with
/// critical value below epsilon.
inline int cech_euler_characteristic(const Configuration& c, double epsilon,
                                     const Tolerance& tol = {}) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (c.size() > 20) throw std::invalid_argument("nerve enumeration limited to 20 points");

  const double dband = tol.distance_band(c.diameter());
  for (const auto& e : morse_poset(c, tol).elements())
    if (std::abs(e.critical_value - epsilon) <= dband)
      throw CriticalEpsilon("epsilon within tolerance of critical value " +
                            std::to_string(e.critical_value));

  int chi = 0;
  detail::for_each_subset(c.size(), 1, c.size(), [&](const std::vector<int>& idx) {
    Ball b = min_enclosing_ball(c, SubsetIndex(idx));
    if (b.radius <= epsilon) chi += (idx.size() % 2 == 1) ? 1 : -1;
  });
  return chi;
}

}  // namespace morseposet
