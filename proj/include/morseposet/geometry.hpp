#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "morseposet/errors.hpp"
#include "morseposet/rng.hpp"

namespace morseposet {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(dist2(a, b));
}

/// One relative tolerance drives every genericity decision. Distance
/// comparisons use rel scaled by the configuration diameter; barycentric
/// coordinates are dimensionless and use rel directly. Predicates that land
/// inside a band are treated as indeterminate and surface as NonGeneric.
struct Tolerance {
  double rel = 1e-9;

  double coefficient_band() const { return rel; }
  double distance_band(double scale) const { return rel * scale; }
  // Cutoff ratio for Gram pivots in affine-independence checks. Pivots are
  // squared lengths, so the natural band is rel^2, floored above the noise
  // level of double-precision Gram entries.
  double pivot_floor() const { return std::max(rel * rel, 1e-14); }
};

/// N labelled points in R^n, stored as one flat coordinate array.
/// Immutable after construction; all library operations are pure functions
/// of a Configuration, so concurrent use needs no coordination.
class Configuration {
 public:
  Configuration(int dim, std::vector<double> coords)
      : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 1) throw std::invalid_argument("Configuration: dimension must be positive");
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim_) != 0)
      throw std::invalid_argument("Configuration: coordinate count must be a multiple of dim");
    count_ = static_cast<int>(coords_.size() / static_cast<std::size_t>(dim_));
    if (count_ < 2) throw std::invalid_argument("Configuration: need at least two points");
    if (count_ > 64) throw std::invalid_argument("Configuration: at most 64 points supported");
    for (double x : coords_)
      if (!std::isfinite(x)) throw std::invalid_argument("Configuration: coordinates must be finite");
    double d2max = 0.0;
    for (int i = 0; i < count_; ++i)
      for (int j = i + 1; j < count_; ++j) d2max = std::max(d2max, dist2(point(i), point(j)));
    diameter_ = std::sqrt(d2max);
  }

  static Configuration from_points(const std::vector<Vec>& pts) {
    if (pts.empty()) throw std::invalid_argument("Configuration: no points");
    const int dim = static_cast<int>(pts.front().size());
    std::vector<double> flat;
    flat.reserve(pts.size() * static_cast<std::size_t>(dim));
    for (const Vec& p : pts) {
      if (static_cast<int>(p.size()) != dim)
        throw std::invalid_argument("Configuration: ragged point list");
      flat.insert(flat.end(), p.begin(), p.end());
    }
    return Configuration(dim, std::move(flat));
  }

  int dim() const { return dim_; }
  int size() const { return count_; }

  std::span<const double> point(int i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }

  const std::vector<double>& coords() const { return coords_; }
  double diameter() const { return diameter_; }

  double min_pairwise_distance() const {
    double d2min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count_; ++i)
      for (int j = i + 1; j < count_; ++j) d2min = std::min(d2min, dist2(point(i), point(j)));
    return std::sqrt(d2min);
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int dim_;
  int count_ = 0;
  std::vector<double> coords_;
  double diameter_ = 0.0;
};

/// Strictly increasing point labels. Configurations hold at most 64 points,
/// so every subset also carries a bitmask for cheap set algebra.
class SubsetIndex {
 public:
  SubsetIndex() = default;

  explicit SubsetIndex(std::vector<int> indices) : idx_(std::move(indices)) {
    int prev = -1;
    for (int i : idx_) {
      if (i < 0 || i >= 64) throw std::invalid_argument("SubsetIndex: label out of range");
      if (i <= prev) throw std::invalid_argument("SubsetIndex: labels must strictly increase");
      prev = i;
      mask_ |= std::uint64_t{1} << i;
    }
    if (idx_.empty()) throw std::invalid_argument("SubsetIndex: empty subset");
  }

  SubsetIndex(std::initializer_list<int> indices) : SubsetIndex(std::vector<int>(indices)) {}

  static SubsetIndex from_mask(std::uint64_t mask) {
    std::vector<int> idx;
    for (int b = 0; b < 64; ++b)
      if (mask >> b & 1u) idx.push_back(b);
    return SubsetIndex(std::move(idx));
  }

  static SubsetIndex pair(int i, int j) {
    return i < j ? SubsetIndex({i, j}) : SubsetIndex({j, i});
  }

  static SubsetIndex full(int count) {
    std::vector<int> idx(static_cast<std::size_t>(count));
    std::iota(idx.begin(), idx.end(), 0);
    return SubsetIndex(std::move(idx));
  }

  const std::vector<int>& indices() const { return idx_; }
  int size() const { return static_cast<int>(idx_.size()); }
  std::uint64_t mask() const { return mask_; }

  bool contains(int label) const {
    return label >= 0 && label < 64 && (mask_ >> label & 1u);
  }
  bool is_subset_of(const SubsetIndex& o) const { return (mask_ & ~o.mask_) == 0; }

  friend bool operator==(const SubsetIndex& a, const SubsetIndex& b) { return a.mask_ == b.mask_; }
  // Layer-by-layer order: size first, then mask.
  friend bool operator<(const SubsetIndex& a, const SubsetIndex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask_ < b.mask_;
  }

 private:
  std::vector<int> idx_;
  std::uint64_t mask_ = 0;
};

inline std::string subset_str(const SubsetIndex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.indices().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.indices()[i]);
  }
  out += '}';
  return out;
}

inline void check_subset(const Configuration& c, const SubsetIndex& s) {
  if (s.size() == 0) throw std::invalid_argument("subset must be nonempty");
  if (s.indices().back() >= c.size())
    throw std::invalid_argument("subset label " + std::to_string(s.indices().back()) +
                                " out of range for " + std::to_string(c.size()) + " points");
}

namespace detail {

// Visit all subsets of {0..count-1} with sizes in [min_size, max_size],
// each as a strictly increasing index vector.
template <typename Fn>
void for_each_subset(int count, int min_size, int max_size, Fn&& fn) {
  max_size = std::min(max_size, count);
  for (int m = std::max(1, min_size); m <= max_size; ++m) {
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      fn(static_cast<const std::vector<int>&>(idx));
      int i = m - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == count - m + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

struct BallSolve {
  bool ok = false;
  double min_pivot_ratio = std::numeric_limits<double>::infinity();
  Vec center;
  std::vector<double> barycentric;
  double radius = 0.0;
};

// Point equidistant from pts inside their affine span, with barycentric
// output. Solves the Gram system (u_i . u_j) x_j = |u_i|^2 / 2 for the
// difference vectors u_i = p_i - p_0. Fails (ok = false) when a pivot falls
// under pivot_floor relative to the largest squared difference length,
// i.e. the points are affinely dependent at that cutoff.
inline BallSolve circumball(const std::vector<std::span<const double>>& pts, double pivot_floor) {
  BallSolve out;
  const int m = static_cast<int>(pts.size());
  const int dim = static_cast<int>(pts.front().size());
  out.barycentric.assign(static_cast<std::size_t>(m), 0.0);
  if (m == 1) {
    out.ok = true;
    out.center.assign(pts[0].begin(), pts[0].end());
    out.barycentric[0] = 1.0;
    out.radius = 0.0;
    return out;
  }

  const int k = m - 1;
  std::vector<double> u(static_cast<std::size_t>(k) * dim);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < dim; ++c) u[static_cast<std::size_t>(i) * dim + c] = pts[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(c)] - pts[0][static_cast<std::size_t>(c)];
  auto urow = [&](int i) {
    return std::span<const double>(u.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim));
  };

  const int w = k + 1;  // augmented row width
  std::vector<double> a(static_cast<std::size_t>(k) * w);
  double scale = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double g = dot(urow(i), urow(j));
      a[static_cast<std::size_t>(i) * w + j] = g;
      a[static_cast<std::size_t>(j) * w + i] = g;
    }
    const double diag = a[static_cast<std::size_t>(i) * w + i];
    a[static_cast<std::size_t>(i) * w + k] = 0.5 * diag;
    scale = std::max(scale, diag);
  }
  if (!(scale > 0.0)) {
    out.min_pivot_ratio = 0.0;
    return out;  // all subset points coincide
  }

  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(a[static_cast<std::size_t>(r) * w + col]) > std::abs(a[static_cast<std::size_t>(piv) * w + col])) piv = r;
    if (piv != col)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(col) * w, a.begin() + static_cast<std::ptrdiff_t>(col + 1) * w,
                       a.begin() + static_cast<std::ptrdiff_t>(piv) * w);
    const double p = a[static_cast<std::size_t>(col) * w + col];
    out.min_pivot_ratio = std::min(out.min_pivot_ratio, std::abs(p) / scale);
    if (std::abs(p) <= pivot_floor * scale) return out;
    for (int r = col + 1; r < k; ++r) {
      const double f = a[static_cast<std::size_t>(r) * w + col] / p;
      if (f == 0.0) continue;
      for (int cc = col; cc <= k; ++cc)
        a[static_cast<std::size_t>(r) * w + cc] -= f * a[static_cast<std::size_t>(col) * w + cc];
    }
  }

  std::vector<double> x(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    double s = a[static_cast<std::size_t>(i) * w + k];
    for (int j = i + 1; j < k; ++j) s -= a[static_cast<std::size_t>(i) * w + j] * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s / a[static_cast<std::size_t>(i) * w + i];
  }

  out.center.assign(pts[0].begin(), pts[0].end());
  double wsum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    wsum += xi;
    for (int c = 0; c < dim; ++c) out.center[static_cast<std::size_t>(c)] += xi * urow(i)[static_cast<std::size_t>(c)];
    out.barycentric[static_cast<std::size_t>(i) + 1] = xi;
  }
  out.barycentric[0] = 1.0 - wsum;
  out.radius = dist(out.center, pts[0]);
  out.ok = true;
  return out;
}

// Determinant by partial-pivot elimination; destroys its copy of the matrix.
inline double determinant(std::vector<double> a, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r) * n + col]) > std::abs(a[static_cast<std::size_t>(piv) * n + col])) piv = r;
    const double p = a[static_cast<std::size_t>(piv) * n + col];
    if (p == 0.0) return 0.0;
    if (piv != col) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(col) * n, a.begin() + static_cast<std::ptrdiff_t>(col + 1) * n,
                       a.begin() + static_cast<std::ptrdiff_t>(piv) * n);
      det = -det;
    }
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      const double f = a[static_cast<std::size_t>(r) * n + col] / p;
      if (f == 0.0) continue;
      for (int cc = col; cc < n; ++cc)
        a[static_cast<std::size_t>(r) * n + cc] -= f * a[static_cast<std::size_t>(col) * n + cc];
    }
  }
  return det;
}

}  // namespace detail

/// Circumcenter of a point subset: center, radius and barycentric
/// coordinates of the center relative to the subset points. For a singleton
/// this is the point itself with radius zero.
struct CircumData {
  Vec center;
  double radius = 0.0;
  std::vector<double> barycentric;
};

inline CircumData circumcenter(const Configuration& c, const SubsetIndex& s,
                               const Tolerance& tol = {}) {
  check_subset(c, s);
  if (s.size() > c.dim() + 1)
    throw DegenerateSubset("subset " + subset_str(s) + " has more than dim+1 points");
  std::vector<std::span<const double>> pts;
  pts.reserve(static_cast<std::size_t>(s.size()));
  for (int i : s.indices()) pts.push_back(c.point(i));
  auto sol = detail::circumball(pts, tol.pivot_floor());
  if (!sol.ok) throw DegenerateSubset("subset " + subset_str(s) + " is affinely dependent within tolerance");
  return CircumData{std::move(sol.center), sol.radius, std::move(sol.barycentric)};
}

enum class CenterPosition { interior, exterior, boundary };

/// Locate the circumcenter against the subset's convex hull: interior when
/// every barycentric coordinate clears the band, exterior when one is
/// decisively negative, boundary otherwise.
inline CenterPosition barycentric_position(const CircumData& circ, const Tolerance& tol = {}) {
  const double band = tol.coefficient_band();
  bool any_negative = false;
  bool all_positive = true;
  for (double w : circ.barycentric) {
    if (w < -band) any_negative = true;
    if (w <= band) all_positive = false;
  }
  if (any_negative) return CenterPosition::exterior;
  return all_positive ? CenterPosition::interior : CenterPosition::boundary;
}

/// Symmetric matrix of pairwise lengths, zero diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(int count) : n_(count), d_(static_cast<std::size_t>(count) * count, 0.0) {
    if (count < 2) throw std::invalid_argument("DistanceMatrix: need at least two points");
  }

  static DistanceMatrix from_config(const Configuration& c, const SubsetIndex& s) {
    check_subset(c, s);
    DistanceMatrix dm(s.size());
    for (int i = 0; i < s.size(); ++i)
      for (int j = i + 1; j < s.size(); ++j)
        dm.set(i, j, dist(c.point(s.indices()[static_cast<std::size_t>(i)]), c.point(s.indices()[static_cast<std::size_t>(j)])));
    return dm;
  }

  static DistanceMatrix from_config(const Configuration& c) {
    return from_config(c, SubsetIndex::full(c.size()));
  }

  int size() const { return n_; }
  double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }

  void set(int i, int j, double length) {
    if (i == j) throw std::invalid_argument("DistanceMatrix: diagonal is fixed at zero");
    if (!(length > 0.0) || !std::isfinite(length))
      throw std::invalid_argument("DistanceMatrix: lengths must be positive and finite");
    d_[static_cast<std::size_t>(i) * n_ + j] = length;
    d_[static_cast<std::size_t>(j) * n_ + i] = length;
  }

  DistanceMatrix scaled(double factor) const {
    DistanceMatrix out(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) out.set(i, j, factor * (*this)(i, j));
    return out;
  }

 private:
  int n_;
  std::vector<double> d_;
};

/// Circumradius of the simplex with the given pairwise lengths, computed
/// from two bordered squared-distance determinants. Works in any ambient
/// dimension; only the simplex itself must be nondegenerate.
inline double circumradius_from_lengths(const DistanceMatrix& dm, const Tolerance& tol = {}) {
  const int m = dm.size();
  double s = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) s = std::max(s, dm(i, j) * dm(i, j));

  const int nb = m + 1;
  std::vector<double> cm(static_cast<std::size_t>(nb) * nb, 0.0);
  for (int i = 1; i < nb; ++i) {
    cm[static_cast<std::size_t>(i)] = 1.0;
    cm[static_cast<std::size_t>(i) * nb] = 1.0;
  }
  std::vector<double> d2(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double q = dm(i, j) * dm(i, j);
      cm[static_cast<std::size_t>(i + 1) * nb + (j + 1)] = q;
      d2[static_cast<std::size_t>(i) * m + j] = q;
    }

  const double det_cm = detail::determinant(std::move(cm), nb);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  // Nondegenerate simplex iff sign * det_cm > 0; the determinant scales as
  // (max d^2)^(m-1), which sets the comparison scale.
  if (!(sign * det_cm > tol.pivot_floor() * std::pow(s, m - 1)))
    throw NotRealizable("lengths do not embed as a nondegenerate simplex");

  const double det_d2 = detail::determinant(std::move(d2), m);
  const double r2 = -0.5 * det_d2 / det_cm;
  return std::sqrt(std::max(0.0, r2));
}

enum class ViolationKind { affine_degenerate, circumcenter_on_face, equidistant_tie };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::affine_degenerate: return "affine-degenerate";
    case ViolationKind::circumcenter_on_face: return "circumcenter-on-face";
    case ViolationKind::equidistant_tie: return "equidistant-tie";
  }
  return "?";
}

// margin is the offending small quantity: the pivot ratio for affine
// degeneracy, the smallest |barycentric| for a center on a face, and the
// absolute sphere-distance gap for an equidistant tie.
struct GenericityViolation {
  SubsetIndex subset;
  ViolationKind kind;
  double margin;
};

struct GenericityReport {
  bool is_generic = true;
  std::vector<GenericityViolation> violations;
};

/// Diagnostic sweep over all subsets of size 2..dim+1: flags affinely
/// dependent subsets, circumcenters with a near-zero barycentric coordinate,
/// and non-member points within tolerance of a circumsphere. Never throws on
/// bad geometry; the report carries every violation found.
inline GenericityReport genericity_check(const Configuration& c, const Tolerance& tol = {}) {
  GenericityReport rep;
  const double dband = tol.distance_band(c.diameter());
  const double cband = tol.coefficient_band();

  detail::for_each_subset(c.size(), 2, c.dim() + 1, [&](const std::vector<int>& idx) {
    SubsetIndex s(idx);
    std::vector<std::span<const double>> pts;
    pts.reserve(idx.size());
    for (int i : idx) pts.push_back(c.point(i));
    auto sol = detail::circumball(pts, tol.pivot_floor());
    if (!sol.ok) {
      rep.violations.push_back({std::move(s), ViolationKind::affine_degenerate, sol.min_pivot_ratio});
      return;
    }
    double wmin = std::numeric_limits<double>::infinity();
    for (double w : sol.barycentric) wmin = std::min(wmin, std::abs(w));
    if (wmin <= cband)
      rep.violations.push_back({s, ViolationKind::circumcenter_on_face, wmin});
    for (int p = 0; p < c.size(); ++p) {
      if (s.contains(p)) continue;
      const double gap = std::abs(dist(c.point(p), sol.center) - sol.radius);
      if (gap <= dband)
        rep.violations.push_back({s, ViolationKind::equidistant_tie, gap});
    }
  });

  rep.is_generic = rep.violations.empty();
  return rep;
}

/// Deterministic uniform perturbation: every coordinate moves by a value in
/// [-delta, delta) derived from (seed, coordinate index). Degenerate inputs
/// are never perturbed implicitly; callers opt in with this.
inline Configuration jittered(const Configuration& c, double delta, std::uint64_t seed) {
  std::vector<double> out = c.coords();
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] += delta * (2.0 * stream_unit(seed, j) - 1.0);
  return Configuration(c.dim(), std::move(out));
}

/// Point-file style text dump, parseable back by the point-file reader.
inline std::string dump_configuration(const Configuration& c) {
  std::ostringstream os;
  os.precision(17);
  os << "dim " << c.dim() << "\n";
  for (int i = 0; i < c.size(); ++i) {
    auto p = c.point(i);
    for (int k = 0; k < c.dim(); ++k) {
      if (k) os << ' ';
      os << p[static_cast<std::size_t>(k)];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace morseposet
