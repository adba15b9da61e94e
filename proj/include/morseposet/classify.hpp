#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morseposet/morse.hpp"

namespace morseposet {

// The nine combinatorial classes of a generic 4-point configuration in R^3,
// keyed by critical spectrum (a0,a1,a2,a3) plus, where the spectrum alone is
// ambiguous, the shape letter of the 4-vertex edge graph.
enum class TypeLabel : int {
  T4641 = 0,
  T4630,
  T4531,
  T4520,
  T4421O,
  T4410O,
  T4410P,
  T4300L,
  T4300T,
};

inline constexpr int kTypeLabelCount = 9;

inline constexpr std::array<TypeLabel, kTypeLabelCount> kAllTypeLabels = {
    TypeLabel::T4641,  TypeLabel::T4630,  TypeLabel::T4531,
    TypeLabel::T4520,  TypeLabel::T4421O, TypeLabel::T4410O,
    TypeLabel::T4410P, TypeLabel::T4300L, TypeLabel::T4300T,
};

inline const char* to_string(TypeLabel t) {
  switch (t) {
    case TypeLabel::T4641: return "4641";
    case TypeLabel::T4630: return "4630";
    case TypeLabel::T4531: return "4531";
    case TypeLabel::T4520: return "4520";
    case TypeLabel::T4421O: return "4421O";
    case TypeLabel::T4410O: return "4410O";
    case TypeLabel::T4410P: return "4410P";
    case TypeLabel::T4300L: return "4300L";
    case TypeLabel::T4300T: return "4300T";
  }
  return "?";
}

inline std::optional<TypeLabel> parse_type_label(std::string_view s) {
  for (TypeLabel t : kAllTypeLabels)
    if (s == to_string(t)) return t;
  return std::nullopt;
}

/// Shape of a connected graph on the four vertices 0..3. Letters identify
/// the two connected graphs at each of 3 and 4 edges by degree sequence:
///   3 edges: (1,1,2,2) = L (path), (1,1,1,3) = T (star)
///   4 edges: (2,2,2,2) = O (cycle), (1,2,2,3) = P (triangle + pendant)
/// 5 and 6 edges have a unique connected graph and carry no letter.
struct GraphShape {
  int edge_count = 0;
  std::array<int, 4> degrees{};  // sorted ascending
  char letter = 0;               // 'L','T','O','P' or 0 when unique
};

inline GraphShape graph_shape(const std::vector<SubsetIndex>& edges) {
  GraphShape shape;
  shape.edge_count = static_cast<int>(edges.size());
  if (shape.edge_count < 3)
    throw BadEdgeCount("graph has " + std::to_string(shape.edge_count) +
                       " edges; a connected graph on 4 vertices needs at least 3");
  if (shape.edge_count > 6) throw std::invalid_argument("more than 6 distinct edges on 4 vertices");

  std::array<int, 4> parent = {0, 1, 2, 3};
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  std::uint64_t seen = 0;
  for (const SubsetIndex& e : edges) {
    if (e.size() != 2 || e.indices()[1] > 3)
      throw std::invalid_argument("edges must be pairs on vertices 0..3");
    if (seen & (std::uint64_t{1} << (e.indices()[0] * 4 + e.indices()[1])))
      throw std::invalid_argument("duplicate edge " + subset_str(e));
    seen |= std::uint64_t{1} << (e.indices()[0] * 4 + e.indices()[1]);
    ++shape.degrees[static_cast<std::size_t>(e.indices()[0])];
    ++shape.degrees[static_cast<std::size_t>(e.indices()[1])];
    parent[static_cast<std::size_t>(find(e.indices()[0]))] = find(e.indices()[1]);
  }
  for (int v = 1; v < 4; ++v)
    if (find(v) != find(0)) throw Disconnected("edge graph does not connect all four vertices");

  std::sort(shape.degrees.begin(), shape.degrees.end());
  if (shape.edge_count == 3)
    shape.letter = (shape.degrees == std::array<int, 4>{1, 1, 2, 2}) ? 'L' : 'T';
  else if (shape.edge_count == 4)
    shape.letter = (shape.degrees == std::array<int, 4>{2, 2, 2, 2}) ? 'O' : 'P';
  return shape;
}

enum class CountsVerdict { allowed, excluded, unknown };

namespace detail {

struct TypeRow {
  std::array<int, 4> spectrum;
  char letter;  // 0 = any letter
  TypeLabel label;
};

inline constexpr std::array<TypeRow, 9> kTypeRows = {{
    {{4, 6, 4, 1}, 0, TypeLabel::T4641},
    {{4, 6, 3, 0}, 0, TypeLabel::T4630},
    {{4, 5, 3, 1}, 0, TypeLabel::T4531},
    {{4, 5, 2, 0}, 0, TypeLabel::T4520},
    {{4, 4, 2, 1}, 'O', TypeLabel::T4421O},
    {{4, 4, 1, 0}, 'O', TypeLabel::T4410O},
    {{4, 4, 1, 0}, 'P', TypeLabel::T4410P},
    {{4, 3, 0, 0}, 'L', TypeLabel::T4300L},
    {{4, 3, 0, 0}, 'T', TypeLabel::T4300T},
}};

struct ExcludedRow {
  std::array<int, 4> spectrum;
  char letter;  // 0 = any letter
};

// Spectra that pass the Euler count but provably never occur.
inline constexpr std::array<ExcludedRow, 4> kExcludedRows = {{
    {{4, 2, 0, 1}, 0},
    {{4, 3, 1, 1}, 'L'},
    {{4, 3, 1, 1}, 'T'},
    {{4, 4, 2, 1}, 'P'},
}};

}  // namespace detail

/// Check a (spectrum, letter) pair against the admissible classes.
inline CountsVerdict validate_counts(const std::array<int, 4>& spectrum, char letter) {
  if (spectrum[0] != 4) throw std::invalid_argument("spectrum must count four minima");
  for (const auto& row : detail::kTypeRows)
    if (row.spectrum == spectrum && (row.letter == 0 || row.letter == letter))
      return CountsVerdict::allowed;
  for (const auto& row : detail::kExcludedRows)
    if (row.spectrum == spectrum && (row.letter == 0 || row.letter == letter))
      return CountsVerdict::excluded;
  return CountsVerdict::unknown;
}

struct TetrahedronType {
  TypeLabel label;
  std::array<int, 4> spectrum;
  char shape_letter;  // 0 when the spectrum already fixes the graph
};

/// Classify a generic 4-point configuration in R^3 into one of the nine
/// classes. Throws NonGeneric on tolerance-band hits and TheoremViolation
/// (with a dump of the configuration) if the computed poset matches an
/// excluded or unlisted class.
inline TetrahedronType classify_tetrahedron(const Configuration& c, const Tolerance& tol = {}) {
  if (c.dim() != 3 || c.size() != 4)
    throw std::invalid_argument("classify_tetrahedron expects 4 points in R^3");

  const MorsePoset poset = morse_poset(c, tol);
  const CriticalSpectrum sp = critical_spectrum(poset);
  const std::array<int, 4> a = {sp.counts[0], sp.counts[1], sp.counts[2], sp.counts[3]};

  std::vector<SubsetIndex> edges;
  for (const auto& e : poset.elements())
    if (e.index == 1) edges.push_back(e.subset);

  GraphShape shape;
  try {
    shape = graph_shape(edges);
  } catch (const Error& err) {
    throw TheoremViolation("inadmissible edge graph for spectrum (" + std::to_string(a[0]) + "," +
                               std::to_string(a[1]) + "," + std::to_string(a[2]) + "," +
                               std::to_string(a[3]) + "): " + err.what(),
                           dump_configuration(c));
  }

  const CountsVerdict verdict = validate_counts(a, shape.letter);
  if (verdict != CountsVerdict::allowed) {
    std::string what = "spectrum (" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," +
                       std::to_string(a[2]) + "," + std::to_string(a[3]) + ")";
    if (shape.letter) what += std::string(" with graph ") + shape.letter;
    what += verdict == CountsVerdict::excluded ? " is an excluded class" : " matches no known class";
    throw TheoremViolation(what, dump_configuration(c));
  }

  for (const auto& row : detail::kTypeRows)
    if (row.spectrum == a && (row.letter == 0 || row.letter == shape.letter))
      return TetrahedronType{row.label, a, row.letter == 0 ? char{0} : shape.letter};
  throw TheoremViolation("unreachable: allowed spectrum without a row", dump_configuration(c));
}

}  // namespace morseposet
