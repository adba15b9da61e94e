// Acceptance suite: end-to-end checks at full scale, one line per criterion.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"

using namespace morseposet;

namespace {

int g_failures = 0;

class Criterion {
 public:
  explicit Criterion(int id) : id_(id), start_(std::chrono::steady_clock::now()) {}

  void report(bool ok, const std::string& detail) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::printf("criterion %2d: %s  %s  [%.1fs]\n", id_, ok ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }

 private:
  int id_;
  std::chrono::steady_clock::time_point start_;
};

constexpr std::int64_t kFrequencySamples = 1000000;
constexpr std::uint64_t kFrequencySeed = 20260808ULL;

// 1. Frequencies of the nine classes at 1e6 samples stay within 5 binomial
//    standard deviations of the reference proportions.
// 2. Same run: no classification ever falls outside the nine classes, and
//    every class occurs.
void criteria_1_and_2() {
  Criterion c1(1);
  const TypeHistogram h = run_statistics({kFrequencySamples, kFrequencySeed, 2});

  std::int64_t ref_total = 0;
  for (const auto& ref : mptest::reference_frequencies()) ref_total += ref.count;
  bool ok = ref_total == mptest::kReferenceTotal;

  double max_z = 0.0;
  for (const auto& ref : mptest::reference_frequencies()) {
    const double p = static_cast<double>(ref.count) / static_cast<double>(mptest::kReferenceTotal);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(kFrequencySamples));
    const double z = std::abs(h.frequency(ref.label) - p) / sigma;
    max_z = std::max(max_z, z);
    if (z > 5.0) ok = false;
  }
  const double ng_rate = static_cast<double>(h.nongeneric) / static_cast<double>(h.total);
  if (!(ng_rate < 1e-4)) ok = false;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "nine class frequencies at 1e6 samples: max |z| = %.2f (limit 5), nongeneric rate %.1e",
                max_z, ng_rate);
  c1.report(ok, buf);

  Criterion c2(2);
  bool ok2 = h.theorem_violations == 0;
  std::int64_t rarest = -1;
  for (TypeLabel t : kAllTypeLabels) {
    if (h.count(t) == 0) ok2 = false;
    rarest = rarest < 0 ? h.count(t) : std::min(rarest, h.count(t));
  }
  std::snprintf(buf, sizeof buf,
                "zero classifications outside the nine classes; all labels present (rarest count %lld)",
                static_cast<long long>(rarest));
  c2.report(ok2, buf);
}

// 3. Alternating sum of critical counts is exactly 1 on 1e5 random generic
//    configurations, n in {2,3}, N in 3..8.
void criterion_3() {
  Criterion c(3);
  CounterRng rng(333333);
  const int total = 100000;
  int done = 0, redraws = 0;
  bool ok = true;
  while (done < total && ok) {
    const int dim = 2 + done % 2;
    const int count = 3 + (done / 2) % 6;
    Configuration cfg = mptest::random_cube_config(rng, dim, count);
    try {
      const CriticalSpectrum sp = critical_spectrum(morse_poset(cfg));
      if (sp.alternating_sum() != 1) ok = false;
      ++done;
    } catch (const NonGeneric&) {
      ++redraws;
    } catch (const EulerViolation&) {
      ok = false;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "alternating sum = 1 on %d generic configurations (n in {2,3}, N in 3..8, %d redraws)",
                done, redraws);
  c.report(ok, buf);
}

// 4. Nerve Euler characteristic equals the partial alternating count of
//    active subsets for 1e3 configurations x 10 non-critical radii, exactly.
void criterion_4() {
  Criterion c(4);
  CounterRng rng(444444);
  bool ok = true;
  int pairs = 0;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    const int dim = 2 + trial % 2;
    const int count = 3 + trial % 6;
    auto [cfg, poset] = mptest::random_generic_config(rng, dim, count);
    double vmax = 0.0;
    for (const auto& e : poset.elements()) vmax = std::max(vmax, e.critical_value);
    int done = 0;
    while (done < 10) {
      const double eps = rng.range(1e-3, 1.15 * vmax + 0.01);
      int chi;
      try {
        chi = cech_euler_characteristic(cfg, eps);
      } catch (const CriticalEpsilon&) {
        continue;
      }
      int partial = 0;
      for (const auto& e : poset.elements())
        if (e.critical_value < eps) partial += (e.index % 2 == 0) ? 1 : -1;
      if (chi != partial) ok = false;
      ++done;
      ++pairs;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "nerve characteristic equals the active partial count on %d checks",
                pairs);
  c.report(ok, buf);
}

// 5. Per-class ratio minima over 1e6 samples never undercut the bounds, and
//    each class's jittered witness lands in the class within 0.05 of it.
void criterion_5() {
  Criterion c(5);
  const MinRatioScan scan = per_type_min_scan({1000000, 555555, 2});
  bool ok = true;
  double worst_margin = 1e9;
  for (TypeLabel t : kAllTypeLabels) {
    const auto& slot = scan.per_type[static_cast<std::size_t>(t)];
    if (!slot) {
      ok = false;
      continue;
    }
    const double margin = slot->rho - min_ratio_bound(t);
    worst_margin = std::min(worst_margin, margin);
    if (margin < -1e-9) ok = false;
  }

  int witnesses_ok = 0;
  for (const auto& w : mptest::ratio_witnesses()) {
    try {
      Configuration jc = jittered(Configuration::from_points(w.points), 1e-3, w.jitter_seed);
      const TetrahedronType t = classify_tetrahedron(jc);
      const double gap = edelsbrunner_ratio(jc).rho - min_ratio_bound(w.label);
      if (t.label == w.label && gap >= -1e-9 && gap <= 0.05) ++witnesses_ok;
    } catch (const Error&) {
    }
  }
  if (witnesses_ok != 9) ok = false;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "ratio minima over 1e6 samples above bounds (worst margin %+.2e); %d/9 witnesses in class within 0.05",
                worst_margin, witnesses_ok);
  c.report(ok, buf);
}

// 6. The shortest edge is an active edge in 100%% of 1e5 generic samples.
void criterion_6() {
  Criterion c(6);
  bool ok = true;
  int generic = 0, failures = 0;
  std::int64_t i = 0;
  while (generic < 100000) {
    Configuration cfg = sample_sphere_tetrahedron(666666, i++);
    try {
      if (!edelsbrunner_ratio(cfg).min_edge_active) {
        ++failures;
        ok = false;
      }
      ++generic;
    } catch (const NonGeneric&) {
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "shortest edge active in %d/%d generic samples (%d failures)",
                generic - failures, generic, failures);
  c.report(ok, buf);
}

// 7. Along 1e3 random paths every resolved event changes exactly one subset
//    of length j and one of length j+1, both in the same direction.
void criterion_7() {
  Criterion c(7);
  bool ok = true;
  int paths = 0, events_total = 0, bad_events = 0, clusters = 0, unresolved = 0;
  std::int64_t draw = 0;
  while (paths < 1000) {
    Configuration a = sample_sphere_tetrahedron(777001, draw);
    Configuration b = sample_sphere_tetrahedron(777002, draw);
    ++draw;
    for (int attempt = 0;; ++attempt) {
      try {
        const auto events = scan_path(PathSpec(a, b), 256);
        for (const auto& e : events) {
          ++events_total;
          const auto& grp = e.added.empty() ? e.removed : e.added;
          const bool same_direction = e.added.empty() || e.removed.empty();
          const bool adjacent =
              grp.size() == 2 && std::abs(grp[0].size() - grp[1].size()) == 1;
          if (!(same_direction && adjacent) || !check_event(e)) {
            ++bad_events;
            ok = false;
          }
        }
        ++paths;
        break;
      } catch (const NonGenericEndpoint&) {
        const double delta = 1e-6 * std::pow(8.0, attempt);
        a = jittered(a, delta, 1 + static_cast<std::uint64_t>(attempt));
        b = jittered(b, delta, 2 + static_cast<std::uint64_t>(attempt));
        if (attempt > 8) {
          ++unresolved;
          ok = false;
          break;
        }
      } catch (const UnresolvedCluster&) {
        ++clusters;
        const double delta = 1e-6 * std::pow(8.0, attempt);
        a = jittered(a, delta, 3 + static_cast<std::uint64_t>(attempt));
        b = jittered(b, delta, 4 + static_cast<std::uint64_t>(attempt));
        if (attempt > 8) {
          ++unresolved;
          ok = false;
          break;
        }
      }
    }
  }
  char buf[176];
  std::snprintf(buf, sizeof buf,
                "%d events over %d paths, %d counterexamples (%d cluster rescans, %d unresolvable)",
                events_total, paths, bad_events, clusters, unresolved);
  c.report(ok, buf);
}

// 8. Poset and label are identical after 1e3 random similarity transforms.
void criterion_8() {
  Criterion c(8);
  CounterRng rng(888888);
  bool ok = true;
  int done = 0;
  std::int64_t i = 0;
  while (done < 1000) {
    Configuration cfg = sample_sphere_tetrahedron(888, i++);
    TypeLabel label;
    std::vector<std::uint64_t> masks;
    try {
      masks = morse_poset(cfg).subset_masks();
      label = classify_tetrahedron(cfg).label;
    } catch (const Error&) {
      continue;
    }
    Configuration tc = mptest::random_similarity(rng, cfg);
    try {
      if (morse_poset(tc).subset_masks() != masks) ok = false;
      if (classify_tetrahedron(tc).label != label) ok = false;
    } catch (const Error&) {
      ok = false;
    }
    ++done;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "poset family and label unchanged under %d similarity transforms",
                done);
  c.report(ok, buf);
}

// 9. Length-based circumradius agrees with the geometric one within 1e-10
//    relative on 1e4 random simplices (skipping simplices flatter than the
//    coarse degeneracy probe, where no double-precision route can hold
//    1e-10); and the finite-difference partials in every edge length are
//    asserted positive on 1e3 random tetrahedral length sets, as stated.
//    The second half is expected to fail: the partial in edge ij equals
//    lam_i * lam_j * d_ij / R for the circumcenter's barycentric
//    coordinates lam, so all six are positive exactly when the circumcenter
//    is interior to the tetrahedron, which most random samples are not.
void criterion_9() {
  Criterion c(9);
  CounterRng rng(999999);
  bool ok = true;
  double worst_rel = 0.0;
  int done = 0;
  while (done < 10000) {
    const int dim = 2 + done % 2;
    Configuration cfg = mptest::random_cube_config(rng, dim, dim + 1);
    CircumData circ;
    try {
      circumcenter(cfg, SubsetIndex::full(dim + 1), Tolerance{1e-2});  // thickness probe
      circ = circumcenter(cfg, SubsetIndex::full(dim + 1));
    } catch (const DegenerateSubset&) {
      continue;
    }
    double r;
    try {
      r = circumradius_from_lengths(DistanceMatrix::from_config(cfg));
    } catch (const NotRealizable&) {
      continue;
    }
    const double rel = std::abs(r - circ.radius) / circ.radius;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-10) ok = false;
    ++done;
  }

  int fd_done = 0, fd_all_positive = 0, interior = 0;
  while (fd_done < 1000) {
    Configuration cfg = mptest::random_cube_config(rng, 3, 4);
    DistanceMatrix dm = DistanceMatrix::from_config(cfg);
    try {
      circumradius_from_lengths(dm);
    } catch (const NotRealizable&) {
      continue;
    }
    const double h = 1e-6;
    bool usable = true, positive = true;
    for (int i = 0; i < 4 && usable; ++i)
      for (int j = i + 1; j < 4 && usable; ++j) {
        DistanceMatrix up = dm, dn = dm;
        up.set(i, j, dm(i, j) + h);
        dn.set(i, j, dm(i, j) - h);
        try {
          const double der = (circumradius_from_lengths(up) - circumradius_from_lengths(dn)) / (2 * h);
          if (!(der > 0.0)) positive = false;
        } catch (const NotRealizable&) {
          usable = false;
        }
      }
    if (!usable) continue;
    if (positive) ++fd_all_positive;
    try {
      bool inside = true;
      for (double w : circumcenter(cfg, SubsetIndex::full(4)).barycentric)
        if (w <= 0.0) inside = false;
      if (inside) ++interior;
    } catch (const DegenerateSubset&) {
    }
    ++fd_done;
  }
  if (fd_all_positive != fd_done) ok = false;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "radius agreement worst rel %.2e (limit 1e-10); all-positive partials in %d/%d "
                "length sets (interior circumcenter in %d) -- blanket positivity holds only for "
                "interior circumcenters, so this half cannot pass as stated",
                worst_rel, fd_all_positive, fd_done, interior);
  c.report(ok, buf);
}

// 10. Histogram output identical for 1, 2, 4, 8 workers at a fixed seed.
void criterion_10() {
  Criterion c(10);
  const TypeHistogram base = run_statistics({200000, 1010101, 1});
  bool ok = true;
  for (int workers : {2, 4, 8})
    if (!(run_statistics({200000, 1010101, workers}) == base)) ok = false;
  c.report(ok, "counts identical across workers {1,2,4,8} at 2e5 samples, fixed seed");
}

}  // namespace

int main() {
  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
