#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "morseposet/geometry.hpp"

namespace morseposet {

// Plain text point format:
//   # comment (anywhere; rest of line ignored)
//   dim <n>
//   [label] x1 ... xn        one point per line, optional leading label
struct PointFile {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<std::string> labels;  // empty, or one per point
};

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace detail

inline PointFile parse_point_text(std::istream& in) {
  PointFile pf;
  std::string line;
  int lineno = 0;
  bool have_dim = false;
  bool any_label = false;

  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(std::move(t));
    if (tok.empty()) continue;

    if (!have_dim) {
      if (tok[0] != "dim" || tok.size() != 2) fail("expected 'dim <n>' header");
      int d = 0;
      auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), d);
      if (ec != std::errc{} || ptr != tok[1].data() + tok[1].size() || d < 1)
        fail("bad dimension '" + tok[1] + "'");
      pf.dim = d;
      have_dim = true;
      continue;
    }

    std::size_t k = 0;
    std::string label;
    double probe = 0.0;
    if (!detail::parse_double(tok[0], probe)) {
      label = tok[0];
      any_label = true;
      k = 1;
    }
    if (tok.size() - k != static_cast<std::size_t>(pf.dim))
      fail("expected " + std::to_string(pf.dim) + " coordinates, got " +
           std::to_string(tok.size() - k));
    Vec p(static_cast<std::size_t>(pf.dim));
    for (int c = 0; c < pf.dim; ++c) {
      if (!detail::parse_double(tok[k + static_cast<std::size_t>(c)], p[static_cast<std::size_t>(c)]))
        fail("bad coordinate '" + tok[k + static_cast<std::size_t>(c)] + "'");
    }
    pf.points.push_back(std::move(p));
    pf.labels.push_back(std::move(label));
  }

  if (!have_dim) throw ParseError("missing 'dim <n>' header");
  if (pf.points.size() < 2) throw ParseError("need at least two points");
  if (!any_label) pf.labels.clear();
  return pf;
}

inline PointFile load_point_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(path + ": cannot open");
  try {
    return parse_point_text(f);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Configuration to_configuration(const PointFile& pf) {
  std::vector<double> flat;
  flat.reserve(pf.points.size() * static_cast<std::size_t>(pf.dim));
  for (const Vec& p : pf.points) flat.insert(flat.end(), p.begin(), p.end());
  return Configuration(pf.dim, std::move(flat));
}

inline void write_point_text(std::ostream& os, const Configuration& c,
                             const std::vector<std::string>& labels = {}) {
  os.precision(17);
  os << "dim " << c.dim() << "\n";
  for (int i = 0; i < c.size(); ++i) {
    if (!labels.empty()) os << labels[static_cast<std::size_t>(i)] << ' ';
    auto p = c.point(i);
    for (int k = 0; k < c.dim(); ++k) {
      if (k) os << ' ';
      os << p[static_cast<std::size_t>(k)];
    }
    os << "\n";
  }
}

}  // namespace morseposet
