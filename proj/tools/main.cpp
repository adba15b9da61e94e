// Command-line driver: poset / classify / stats / path / minratio.
//
// Exit codes: 0 success, 1 I/O or parse failure, 2 non-generic input,
// 3 classification outside the nine admissible classes (prints the
// offending configuration so it can be reported).

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "morseposet/morseposet.hpp"

namespace mp = morseposet;
using nlohmann::json;

namespace {

json subset_json(const mp::SubsetIndex& s) { return json(s.indices()); }

json vec_json(const mp::Vec& v) { return json(v); }

json point_list_json(const mp::Configuration& c) {
  json pts = json::array();
  for (int i = 0; i < c.size(); ++i) {
    auto p = c.point(i);
    pts.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return pts;
}

int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

struct CommonArgs {
  double tol = mp::Tolerance{}.rel;
  mp::Tolerance tolerance() const { return mp::Tolerance{tol}; }
};

void add_tol_flag(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--tol", args.tol, "relative tolerance for genericity predicates")
      ->check(CLI::Range(1e-15, 1e-2))
      ->capture_default_str();
}

int emit_nongeneric(const std::string& detail, const mp::Configuration* c, const mp::Tolerance& tol) {
  json out;
  out["error"] = "non-generic";
  out["detail"] = detail;
  if (c != nullptr) {
    json viols = json::array();
    for (const auto& v : mp::genericity_check(*c, tol).violations)
      viols.push_back({{"subset", subset_json(v.subset)},
                       {"kind", mp::to_string(v.kind)},
                       {"margin", v.margin}});
    out["violations"] = viols;
  }
  std::cout << out.dump(2) << "\n";
  return 2;
}

int emit_theorem_violation(const mp::TheoremViolation& e) {
  json out;
  out["error"] = "theorem-violation";
  out["detail"] = e.what();
  out["configuration"] = e.config;
  std::cout << out.dump(2) << "\n";
  return 3;
}

int cmd_poset(const std::string& file, const CommonArgs& args) {
  const mp::Configuration c = mp::to_configuration(mp::load_point_file(file));
  const mp::Tolerance tol = args.tolerance();

  const mp::GenericityReport rep = mp::genericity_check(c, tol);
  if (!rep.is_generic) return emit_nongeneric("configuration fails genericity check", &c, tol);

  mp::MorsePoset poset(0, 0, {});
  mp::CriticalSpectrum sp;
  try {
    poset = mp::morse_poset(c, tol);
    sp = mp::critical_spectrum(poset);
  } catch (const mp::Error& e) {
    return emit_nongeneric(e.what(), &c, tol);
  }

  json out;
  out["dim"] = c.dim();
  out["point_count"] = c.size();
  out["tolerance"] = tol.rel;
  out["points"] = point_list_json(c);
  out["spectrum"] = sp.counts;
  json elems = json::array();
  for (const auto& e : poset.elements())
    elems.push_back({{"subset", subset_json(e.subset)},
                     {"index", e.index},
                     {"critical_value", e.critical_value},
                     {"center", vec_json(e.center)}});
  out["elements"] = elems;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_classify(const std::string& file, const CommonArgs& args) {
  const mp::Configuration c = mp::to_configuration(mp::load_point_file(file));
  const mp::Tolerance tol = args.tolerance();

  try {
    const mp::TetrahedronType t = mp::classify_tetrahedron(c, tol);
    const mp::RatioReport r = mp::edelsbrunner_ratio(c, tol);
    json out;
    out["type"] = mp::to_string(t.label);
    out["spectrum"] = t.spectrum;
    out["shape_letter"] = t.shape_letter ? std::string(1, t.shape_letter) : std::string();
    out["rho"] = r.rho;
    out["circumradius"] = r.circumradius;
    out["min_edge"] = r.min_edge;
    out["min_edge_subset"] = subset_json(r.min_edge_subset);
    out["min_edge_active"] = r.min_edge_active;
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const mp::TheoremViolation& e) {
    return emit_theorem_violation(e);
  } catch (const mp::NonGeneric& e) {
    return emit_nongeneric(e.what(), &c, tol);
  } catch (const mp::EulerViolation& e) {
    return emit_nongeneric(e.what(), &c, tol);
  }
}

void print_stats_csv(const mp::TypeHistogram& h) {
  std::printf("label,count,frequency\n");
  for (mp::TypeLabel t : mp::kAllTypeLabels)
    std::printf("%s,%lld,%.17g\n", mp::to_string(t), static_cast<long long>(h.count(t)),
                h.frequency(t));
  std::printf("nongeneric,%lld,%.17g\n", static_cast<long long>(h.nongeneric),
              h.total ? static_cast<double>(h.nongeneric) / static_cast<double>(h.total) : 0.0);
  std::printf("theorem-violation,%lld,%.17g\n", static_cast<long long>(h.theorem_violations),
              h.total ? static_cast<double>(h.theorem_violations) / static_cast<double>(h.total) : 0.0);
}

int cmd_stats(const mp::SamplerConfig& cfg, const std::string& format, const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const mp::TypeHistogram h = mp::run_statistics(cfg, args.tolerance());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (format == "csv") {
    print_stats_csv(h);
    return 0;
  }
  json types;
  for (mp::TypeLabel t : mp::kAllTypeLabels)
    types[mp::to_string(t)] = {{"count", h.count(t)}, {"frequency", h.frequency(t)}};
  json out;
  out["samples"] = cfg.samples;
  out["seed"] = cfg.seed;
  out["workers"] = cfg.workers;
  out["wall_time_s"] = secs;
  out["total"] = h.total;
  out["nongeneric"] = h.nongeneric;
  out["theorem_violations"] = h.theorem_violations;
  out["types"] = types;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_path(const std::string& file_a, const std::string& file_b, int steps,
             const CommonArgs& args) {
  const mp::Configuration a = mp::to_configuration(mp::load_point_file(file_a));
  const mp::Configuration b = mp::to_configuration(mp::load_point_file(file_b));
  const mp::PathSpec path(a, b);
  const auto events = mp::scan_path(path, steps, args.tolerance());

  json evs = json::array();
  for (const auto& e : events) {
    json added = json::array(), removed = json::array();
    for (const auto& s : e.added) added.push_back(subset_json(s));
    for (const auto& s : e.removed) removed.push_back(subset_json(s));
    evs.push_back({{"t_low", e.t_low},
                   {"t_high", e.t_high},
                   {"added", added},
                   {"removed", removed},
                   {"valid", mp::check_event(e)}});
  }
  json out;
  out["steps"] = steps;
  out["events"] = evs;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_minratio(const mp::SamplerConfig& cfg, const std::string& format, const CommonArgs& args) {
  const mp::MinRatioScan scan = mp::per_type_min_scan(cfg, args.tolerance());

  if (format == "csv") {
    std::printf("label,min_rho,sample_index\n");
    for (mp::TypeLabel t : mp::kAllTypeLabels) {
      const auto& slot = scan.per_type[static_cast<std::size_t>(t)];
      if (slot)
        std::printf("%s,%.17g,%lld\n", mp::to_string(t), slot->rho,
                    static_cast<long long>(slot->sample_index));
      else
        std::printf("%s,,\n", mp::to_string(t));
    }
    return 0;
  }
  json types;
  for (mp::TypeLabel t : mp::kAllTypeLabels) {
    const auto& slot = scan.per_type[static_cast<std::size_t>(t)];
    if (slot)
      types[mp::to_string(t)] = {{"min_rho", slot->rho},
                                 {"sample_index", slot->sample_index},
                                 {"points", point_list_json(slot->config)}};
    else
      types[mp::to_string(t)] = nullptr;
  }
  json out;
  out["samples"] = cfg.samples;
  out["seed"] = cfg.seed;
  out["nongeneric"] = scan.nongeneric;
  out["theorem_violations"] = scan.theorem_violations;
  out["types"] = types;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morse posets of minimum-distance functions: poset construction, "
               "tetrahedron classification, Monte Carlo statistics, ratio bounds, "
               "and discriminant-crossing scans"};
  app.require_subcommand(1);

  CommonArgs common;

  std::string file, file_a, file_b;
  std::string format = "json";
  int steps = 256;
  mp::SamplerConfig sampler;
  sampler.workers = default_workers();

  auto* poset = app.add_subcommand("poset", "Morse poset of a point file");
  poset->add_option("file", file, "point file")->required();
  add_tol_flag(poset, common);

  auto* classify = app.add_subcommand("classify", "classify 4 points in R^3");
  classify->add_option("file", file, "point file")->required();
  add_tol_flag(classify, common);

  auto* stats = app.add_subcommand("stats", "Monte Carlo type frequencies");
  stats->add_option("--samples", sampler.samples, "number of random tetrahedra")->required();
  stats->add_option("--seed", sampler.seed, "RNG seed")->capture_default_str();
  stats->add_option("--workers", sampler.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  stats->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_tol_flag(stats, common);

  auto* pathc = app.add_subcommand("path", "scan a straight-line path for poset changes");
  pathc->add_option("fileA", file_a, "start point file")->required();
  pathc->add_option("fileB", file_b, "end point file")->required();
  pathc->add_option("--steps", steps, "initial grid steps")->check(CLI::Range(2, 100000000))->capture_default_str();
  add_tol_flag(pathc, common);

  auto* minratio = app.add_subcommand("minratio", "per-class minimum ratio over a sampled stream");
  minratio->add_option("--samples", sampler.samples, "number of random tetrahedra")->required();
  minratio->add_option("--seed", sampler.seed, "RNG seed")->capture_default_str();
  minratio->add_option("--workers", sampler.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  minratio->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_tol_flag(minratio, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (poset->parsed()) return cmd_poset(file, common);
    if (classify->parsed()) return cmd_classify(file, common);
    if (stats->parsed()) return cmd_stats(sampler, format, common);
    if (pathc->parsed()) return cmd_path(file_a, file_b, steps, common);
    if (minratio->parsed()) return cmd_minratio(sampler, format, common);
  } catch (const mp::TheoremViolation& e) {
    return emit_theorem_violation(e);
  } catch (const mp::NonGenericEndpoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mp::UnresolvedCluster& e) {
    std::cerr << "error: " << e.what() << " (jitter the endpoints and rescan)\n";
    return 2;
  } catch (const mp::NonGeneric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mp::DegenerateSubset& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
