// Shared helpers for the unit and acceptance suites: random configurations,
// similarity transforms, and the frozen near-infimum witness table.
#pragma once

#include <cmath>
#include <vector>

#include "morseposet/morseposet.hpp"

namespace mptest {

using namespace morseposet;

// ---------------------------------------------------------------------------
// Random configurations

inline Configuration random_cube_config(CounterRng& rng, int dim, int count) {
  std::vector<double> x(static_cast<std::size_t>(dim) * count);
  for (auto& v : x) v = rng.unit();
  return Configuration(dim, std::move(x));
}

// Draw until the Morse poset evaluates cleanly; returns the poset alongside
// so callers do not pay for it twice.
inline std::pair<Configuration, MorsePoset> random_generic_config(CounterRng& rng, int dim,
                                                                  int count,
                                                                  const Tolerance& tol = {},
                                                                  int max_tries = 256) {
  for (int t = 0; t < max_tries; ++t) {
    Configuration c = random_cube_config(rng, dim, count);
    try {
      MorsePoset p = morse_poset(c, tol);
      return {std::move(c), std::move(p)};
    } catch (const NonGeneric&) {
    }
  }
  throw std::runtime_error("random_generic_config: no generic sample found");
}

// ---------------------------------------------------------------------------
// Similarity transforms

inline double gaussian(CounterRng& rng) {
  double u1 = rng.unit();
  while (u1 <= 0.0) u1 = rng.unit();
  const double u2 = rng.unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Random rotation in R^dim: Gram-Schmidt of a Gaussian matrix, determinant
// forced positive.
inline std::vector<double> random_rotation(CounterRng& rng, int dim) {
  const std::size_t d = static_cast<std::size_t>(dim);
  std::vector<double> m(d * d);
  while (true) {
    for (auto& v : m) v = gaussian(rng);
    bool ok = true;
    for (std::size_t r = 0; r < d && ok; ++r) {
      for (std::size_t p = 0; p < r; ++p) {
        double proj = 0.0;
        for (std::size_t c = 0; c < d; ++c) proj += m[r * d + c] * m[p * d + c];
        for (std::size_t c = 0; c < d; ++c) m[r * d + c] -= proj * m[p * d + c];
      }
      double norm = 0.0;
      for (std::size_t c = 0; c < d; ++c) norm += m[r * d + c] * m[r * d + c];
      norm = std::sqrt(norm);
      if (norm < 1e-8) {
        ok = false;
        break;
      }
      for (std::size_t c = 0; c < d; ++c) m[r * d + c] /= norm;
    }
    if (!ok) continue;
    // determinant sign via triple/pair product; flip one row if negative
    double det = 0.0;
    if (dim == 2) {
      det = m[0] * m[3] - m[1] * m[2];
    } else if (dim == 3) {
      det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
            m[2] * (m[3] * m[7] - m[4] * m[6]);
    } else {
      det = 1.0;  // orientation irrelevant for higher dims in these tests
    }
    if (det < 0.0)
      for (std::size_t c = 0; c < d; ++c) m[0 * d + c] = -m[0 * d + c];
    return m;
  }
}

inline Configuration transformed(const Configuration& c, const std::vector<double>& rot,
                                 double scale, const std::vector<double>& shift) {
  const std::size_t d = static_cast<std::size_t>(c.dim());
  std::vector<double> out(c.coords().size());
  for (int i = 0; i < c.size(); ++i) {
    auto p = c.point(i);
    for (std::size_t r = 0; r < d; ++r) {
      double v = 0.0;
      for (std::size_t k = 0; k < d; ++k) v += rot[r * d + k] * p[k];
      out[static_cast<std::size_t>(i) * d + r] = scale * v + shift[r];
    }
  }
  return Configuration(c.dim(), std::move(out));
}

inline Configuration random_similarity(CounterRng& rng, const Configuration& c) {
  const auto rot = random_rotation(rng, c.dim());
  const double scale = std::pow(10.0, rng.range(-2.0, 2.0));
  std::vector<double> shift(static_cast<std::size_t>(c.dim()));
  for (auto& v : shift) v = rng.range(-10.0, 10.0);
  return transformed(c, rot, scale, shift);
}

// ---------------------------------------------------------------------------
// Near-infimum witnesses, one per class.
//
// The first seven sit on the boundary of their class (the bound value is
// attained in the flat/tied limit) and enter it under jitter with the frozen
// seed; their ratio gap shrinks with the jitter size. The classes 4421O and
// 4531 meet their shared ratio infimum through a cusp that plain jitter of
// the boundary quadruples cannot enter, so those two carry interior
// representatives found by scanning, a few hundredths above the bound.

struct RatioWitness {
  TypeLabel label;
  std::vector<Vec> points;
  std::uint64_t jitter_seed;
  bool on_boundary;  // gap -> 0 as jitter -> 0
};

inline const std::vector<RatioWitness>& ratio_witnesses() {
  static const double s3 = std::sqrt(3.0);
  static const double s2 = std::sqrt(2.0);
  static const double a3 = 3.0 * kPi / 2.0 + 0.2;  // keeps the base triangle acute
  static const std::vector<RatioWitness> table = {
      {TypeLabel::T4300L, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}, 14, true},
      {TypeLabel::T4300T, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, 16, true},
      {TypeLabel::T4410P, {{s3 / 2, -0.5, 0}, {-s3 / 2, -0.5, 0}, {0, 1, 0}, {0, 1, s3}}, 12, true},
      {TypeLabel::T4410O, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, 18, true},
      {TypeLabel::T4520, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, 6, true},
      {TypeLabel::T4630,
       {{std::cos(kPi / 2), std::sin(kPi / 2), 0},
        {std::cos(kPi), std::sin(kPi), 0},
        {std::cos(a3), std::sin(a3), 0},
        {0, 0, 1}},
       1,
       true},
      {TypeLabel::T4421O,
       {{-0.145889, 0.175028, -0.973695},
        {0.226226, -0.195073, 0.954342},
        {0.372187, -0.879493, -0.296597},
        {-0.710881, 0.685868, 0.155668}},
       1,
       false},
      {TypeLabel::T4531,
       {{-0.354017, 0.509307, -0.784397},
        {0.898659, 0.164962, -0.406447},
        {-0.653587, 0.205703, 0.728362},
        {0.409726, -0.682621, 0.605106}},
       1,
       false},
      {TypeLabel::T4641, {{0, 1, 0}, {s3 / 2, -0.5, 0}, {-s3 / 2, -0.5, 0}, {0, 0, s2}}, 1, true},
  };
  return table;
}

// Reference type proportions for the sphere sampler, as counts out of 1e8.
struct ReferenceFrequency {
  TypeLabel label;
  std::int64_t count;
};

inline const std::vector<ReferenceFrequency>& reference_frequencies() {
  static const std::vector<ReferenceFrequency> table = {
      {TypeLabel::T4641, 6535095},   {TypeLabel::T4630, 1797721},
      {TypeLabel::T4531, 2697783},   {TypeLabel::T4520, 24350101},
      {TypeLabel::T4421O, 3266345},  {TypeLabel::T4410O, 26224574},
      {TypeLabel::T4410P, 16421773}, {TypeLabel::T4300L, 17807919},
      {TypeLabel::T4300T, 898689},
  };
  return table;
}

inline constexpr std::int64_t kReferenceTotal = 100000000;

}  // namespace mptest
