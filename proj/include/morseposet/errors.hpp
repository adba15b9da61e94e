#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace morseposet {

// Base class for every failure this library reports on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subset points are affinely dependent at the pivot cutoff; no circumcenter.
struct DegenerateSubset : Error {
  using Error::Error;
};

// A genericity predicate landed inside the tolerance band, or the
// configuration violates the general-position requirements outright.
struct NonGeneric : Error {
  using Error::Error;
};

// Pairwise lengths do not embed as a nondegenerate simplex.
struct NotRealizable : Error {
  using Error::Error;
};

// Alternating count of active subsets differs from 1; signals a tolerance
// or genericity failure upstream rather than valid geometry.
struct EulerViolation : Error {
  using Error::Error;
};

// Requested sublevel radius sits within tolerance of a critical value.
struct CriticalEpsilon : Error {
  using Error::Error;
};

struct Disconnected : Error {
  using Error::Error;
};

struct BadEdgeCount : Error {
  using Error::Error;
};

struct NonGenericEndpoint : Error {
  using Error::Error;
};

// A bracket at the time tolerance still contains two or more distinct
// poset changes; the scanned path is not generic.
struct UnresolvedCluster : Error {
  using Error::Error;
};

// A (spectrum, graph) pair outside the nine admissible classes. Carries the
// offending configuration in point-file form so it can be reported.
struct TheoremViolation : Error {
  explicit TheoremViolation(const std::string& what, std::string config_dump = {})
      : Error(what), config(std::move(config_dump)) {}
  std::string config;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace morseposet
