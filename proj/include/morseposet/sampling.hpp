#pragma once

#include <array>
#include <cstdint>
#include <thread>
#include <vector>

#include "morseposet/classify.hpp"
#include "morseposet/rng.hpp"

namespace morseposet {

inline constexpr double kPi = 3.14159265358979323846;

/// Area-preserving map [0,1]^2 -> S^2: z = 2*a1 - 1 and the azimuth 2*pi*a2,
/// so uniform (a1, a2) induce the uniform measure on the sphere.
inline std::array<double, 3> sphere_point(double a1, double a2) {
  const double z = 2.0 * a1 - 1.0;
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));  // sin(arccos z)
  const double phi = 2.0 * kPi * a2;
  return {s * std::sin(phi), s * std::cos(phi), z};
}

/// Four independent uniform sphere points for sample `index` of `seed`.
/// Addressed through the counter stream, so identical for any worker split.
inline Configuration sample_sphere_tetrahedron(std::uint64_t seed, std::int64_t index) {
  std::vector<double> xyz(12);
  const std::uint64_t base = 8 * static_cast<std::uint64_t>(index);
  for (int k = 0; k < 4; ++k) {
    const double a1 = stream_unit(seed, base + 2 * static_cast<std::uint64_t>(k));
    const double a2 = stream_unit(seed, base + 2 * static_cast<std::uint64_t>(k) + 1);
    const auto p = sphere_point(a1, a2);
    xyz[static_cast<std::size_t>(3 * k) + 0] = p[0];
    xyz[static_cast<std::size_t>(3 * k) + 1] = p[1];
    xyz[static_cast<std::size_t>(3 * k) + 2] = p[2];
  }
  return Configuration(3, std::move(xyz));
}

struct SamplerConfig {
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct TypeHistogram {
  std::array<std::int64_t, kTypeLabelCount> counts{};
  std::int64_t nongeneric = 0;
  std::int64_t theorem_violations = 0;
  std::int64_t total = 0;

  std::int64_t count(TypeLabel t) const { return counts[static_cast<std::size_t>(t)]; }
  double frequency(TypeLabel t) const {
    return total > 0 ? static_cast<double>(count(t)) / static_cast<double>(total) : 0.0;
  }

  TypeHistogram& merge(const TypeHistogram& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    nongeneric += o.nongeneric;
    theorem_violations += o.theorem_violations;
    total += o.total;
    return *this;
  }

  friend bool operator==(const TypeHistogram&, const TypeHistogram&) = default;
};

namespace detail {

// Static split of [0, samples) into one contiguous range per worker.
// Callers must make per-sample work independent of the split.
template <typename Fn>
inline void parallel_sample_loop(std::int64_t samples, int workers, Fn&& body) {
  const int n = static_cast<int>(std::min<std::int64_t>(workers, samples));
  if (n <= 1) {
    body(0, std::int64_t{0}, samples);
    return;
  }
  const std::int64_t q = samples / n;
  const std::int64_t r = samples % n;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  std::int64_t lo = 0;
  for (int w = 0; w < n; ++w) {
    const std::int64_t hi = lo + q + (w < r ? 1 : 0);
    pool.emplace_back([&body, w, lo, hi] { body(w, lo, hi); });
    lo = hi;
  }
  for (auto& th : pool) th.join();
}

inline void tally_sample(std::uint64_t seed, std::int64_t index, const Tolerance& tol,
                         TypeHistogram& h) {
  const Configuration c = sample_sphere_tetrahedron(seed, index);
  try {
    ++h.counts[static_cast<std::size_t>(classify_tetrahedron(c, tol).label)];
  } catch (const NonGeneric&) {
    ++h.nongeneric;
  } catch (const EulerViolation&) {
    ++h.nongeneric;  // tolerance artifact; rejected, never coerced to a type
  } catch (const TheoremViolation&) {
    ++h.theorem_violations;
  }
  ++h.total;
}

}  // namespace detail

/// Classify `samples` independent random tetrahedra on the unit sphere and
/// histogram the results. Bit-identical for a fixed (seed, samples) no
/// matter how many workers run; samples on the discriminant band count as
/// nongeneric rather than being redrawn.
inline TypeHistogram run_statistics(const SamplerConfig& cfg, const Tolerance& tol = {}) {
  if (cfg.samples < 1) throw std::invalid_argument("run_statistics: samples must be positive");
  if (cfg.workers < 1) throw std::invalid_argument("run_statistics: workers must be positive");

  const int n = static_cast<int>(std::min<std::int64_t>(cfg.workers, cfg.samples));
  std::vector<TypeHistogram> parts(static_cast<std::size_t>(n));
  detail::parallel_sample_loop(cfg.samples, n, [&](int w, std::int64_t lo, std::int64_t hi) {
    TypeHistogram& h = parts[static_cast<std::size_t>(w)];
    for (std::int64_t i = lo; i < hi; ++i) detail::tally_sample(cfg.seed, i, tol, h);
  });

  TypeHistogram out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

struct MomentSummary {
  std::array<double, 3> mean{};
  std::array<std::array<double, 3>, 3> covariance{};
};

/// Empirical mean and covariance of the sphere sampler, for checking the
/// uniformity of the induced measure (mean 0, covariance I/3).
inline MomentSummary sphere_moment_check(std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sphere_moment_check: samples must be positive");
  std::array<double, 3> sum{};
  std::array<std::array<double, 3>, 3> outer{};
  for (std::int64_t i = 0; i < samples; ++i) {
    const double a1 = stream_unit(seed, 2 * static_cast<std::uint64_t>(i));
    const double a2 = stream_unit(seed, 2 * static_cast<std::uint64_t>(i) + 1);
    const auto p = sphere_point(a1, a2);
    for (int r = 0; r < 3; ++r) {
      sum[static_cast<std::size_t>(r)] += p[static_cast<std::size_t>(r)];
      for (int c = 0; c < 3; ++c)
        outer[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] +=
            p[static_cast<std::size_t>(r)] * p[static_cast<std::size_t>(c)];
    }
  }
  MomentSummary out;
  const double inv = 1.0 / static_cast<double>(samples);
  for (int r = 0; r < 3; ++r) out.mean[static_cast<std::size_t>(r)] = sum[static_cast<std::size_t>(r)] * inv;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out.covariance[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          outer[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * inv -
          out.mean[static_cast<std::size_t>(r)] * out.mean[static_cast<std::size_t>(c)];
  return out;
}

}  // namespace morseposet
