#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "morseposet/morse.hpp"

namespace morseposet {

/// Straight-line path between two configurations of the same shape;
/// coordinates interpolate pointwise linearly in t on [0,1].
struct PathSpec {
  Configuration start;
  Configuration end;

  PathSpec(Configuration s, Configuration e) : start(std::move(s)), end(std::move(e)) {
    if (start.dim() != end.dim() || start.size() != end.size())
      throw std::invalid_argument("PathSpec: endpoints must share dimension and point count");
  }
};

inline Configuration config_at(const PathSpec& path, double t) {
  const auto& a = path.start.coords();
  const auto& b = path.end.coords();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
  return Configuration(path.start.dim(), std::move(out));
}

/// One crossing of the discriminant: the poset difference across a tight
/// parameter bracket. added/removed list the subsets gained/lost going from
/// t_low to t_high.
struct TransitionEvent {
  double t_low = 0.0;
  double t_high = 0.0;
  std::vector<SubsetIndex> added;
  std::vector<SubsetIndex> removed;
};

/// A generic crossing changes the poset by exactly one subset of length j
/// and one of length j+1, both appearing or both disappearing, the shorter
/// nested in the longer.
inline bool check_event(const TransitionEvent& e) {
  if (!e.added.empty() && !e.removed.empty()) return false;
  const auto& grp = e.added.empty() ? e.removed : e.added;
  if (grp.size() != 2) return false;
  const SubsetIndex& a = grp[0].size() <= grp[1].size() ? grp[0] : grp[1];
  const SubsetIndex& b = grp[0].size() <= grp[1].size() ? grp[1] : grp[0];
  return b.size() == a.size() + 1 && a.is_subset_of(b);
}

namespace detail {

using MaskSet = std::vector<std::uint64_t>;  // ascending

inline std::optional<MaskSet> try_masks(const Configuration& c, const Tolerance& tol) {
  try {
    return morse_poset(c, tol).subset_masks();
  } catch (const NonGeneric&) {
    return std::nullopt;
  }
}

inline void mask_diff(const MaskSet& before, const MaskSet& after,
                      std::vector<SubsetIndex>& added, std::vector<SubsetIndex>& removed) {
  std::size_t i = 0, j = 0;
  while (i < before.size() || j < after.size()) {
    if (j == after.size() || (i < before.size() && before[i] < after[j]))
      removed.push_back(SubsetIndex::from_mask(before[i++]));
    else if (i == before.size() || after[j] < before[i])
      added.push_back(SubsetIndex::from_mask(after[j++]));
    else {
      ++i;
      ++j;
    }
  }
  std::sort(added.begin(), added.end());
  std::sort(removed.begin(), removed.end());
}

}  // namespace detail

/// Locate every poset change along the path. The [0,1] interval is sampled
/// at steps+1 uniform parameters; each change is bisected until the bracket
/// is below t_tolerance or its midpoint lands inside the genericity band
/// (the crossing itself). A single generic crossing always changes exactly
/// one nested (j, j+1) pair, so a terminal bracket whose difference has any
/// other shape holds two or more coincident crossings: that raises
/// UnresolvedCluster and the caller should jitter the endpoints and rescan.
/// Throws NonGenericEndpoint if an endpoint fails.
inline std::vector<TransitionEvent> scan_path(const PathSpec& path, int steps = 256,
                                              const Tolerance& tol = {},
                                              double t_tolerance = 1e-10) {
  if (steps < 2) throw std::invalid_argument("scan_path: steps must be at least 2");
  if (!(t_tolerance > 0.0)) throw std::invalid_argument("scan_path: t_tolerance must be positive");

  auto m0 = detail::try_masks(config_at(path, 0.0), tol);
  auto m1 = detail::try_masks(config_at(path, 1.0), tol);
  if (!m0 || !m1) throw NonGenericEndpoint("path endpoint is not generic at this tolerance");

  std::vector<TransitionEvent> events;
  auto emit = [&](double lo, const detail::MaskSet& ml, double hi, const detail::MaskSet& mh) {
    TransitionEvent e;
    e.t_low = lo;
    e.t_high = hi;
    detail::mask_diff(ml, mh, e.added, e.removed);
    if (!check_event(e))
      throw UnresolvedCluster("bracket [" + std::to_string(lo) + "," + std::to_string(hi) +
                              "] changes " + std::to_string(e.added.size() + e.removed.size()) +
                              " subsets that do not form one nested pair");
    events.push_back(std::move(e));
  };

  std::function<void(double, const detail::MaskSet&, double, const detail::MaskSet&)> resolve =
      [&](double lo, const detail::MaskSet& ml, double hi, const detail::MaskSet& mh) {
        if (ml == mh) return;
        if (hi - lo <= t_tolerance) {
          emit(lo, ml, hi, mh);
          return;
        }
        const double mid = 0.5 * (lo + hi);
        auto mm = detail::try_masks(config_at(path, mid), tol);
        if (!mm) {
          // midpoint sits on the discriminant band: the crossing is pinned
          emit(lo, ml, hi, mh);
          return;
        }
        resolve(lo, ml, mid, *mm);
        resolve(mid, *mm, hi, mh);
      };

  double prev_t = 0.0;
  detail::MaskSet prev_m = *m0;
  for (int k = 1; k <= steps; ++k) {
    const double t = (k == steps) ? 1.0 : static_cast<double>(k) / static_cast<double>(steps);
    auto mk = (k == steps) ? m1 : detail::try_masks(config_at(path, t), tol);
    if (!mk) continue;  // grid point on the band; fold into the next bracket
    if (*mk != prev_m) resolve(prev_t, prev_m, t, *mk);
    prev_t = t;
    prev_m = std::move(*mk);
  }
  return events;
}

}  // namespace morseposet
