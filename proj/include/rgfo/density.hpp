#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgfo/graph.hpp"

namespace rgfo {

using Rational = boost::rational<std::int64_t>;

// Accepts "p/q" or an integer.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

// Largest pattern (or extension part of a pattern) handled by exhaustive
// subset enumeration.
inline constexpr std::size_t kMaxSubsetVertices = 20;

Rational max_density(const Graph& h);
Rational rel_density(const PatternPair& pp);
bool is_safe(const PatternPair& pp, const Rational& alpha);
bool is_rigid(const PatternPair& pp, const Rational& alpha);

// True when alpha differs from every fraction a/b with a <= a_max.
bool avoids_small_numerators(const Rational& alpha, std::int64_t a_max);

struct Subextension {
  std::vector<Vertex> vertices;  // pattern vertices of S, roots included, sorted
  PatternPair pair;              // S relabelled, roots first in their original order
};

// Absent iff (G,H) is alpha-safe; otherwise a cardinality-minimal S with
// relative density at least 1/alpha, which is alpha-rigid over H.
std::optional<Subextension> find_rigid_subextension(const PatternPair& pp, const Rational& alpha);

// Rigidity of the step current -> current ∪ step inside a host graph.
bool is_rigid_step(const Graph& g, const std::vector<bool>& current, const std::vector<Vertex>& step,
                   const Rational& alpha);

// Connected vertex sets of size <= t outside `current`, ordered by size then
// lexicographically. Every connected component of a rigid step is itself a
// rigid step, so this family suffices for closure searches. Sets with no
// edge to `current` are included only when such a set could be dense enough.
std::vector<std::vector<Vertex>> rigid_step_candidates(const Graph& g, const std::vector<bool>& current, unsigned t,
                                                       const Rational& alpha);

struct RigidChain {
  std::vector<Vertex> base;
  std::vector<std::vector<Vertex>> steps;
  Rational alpha;
  unsigned t = 1;
  std::vector<Vertex> closure;  // sorted
};

struct ClosureOptions {
  std::size_t vertex_budget = 4096;
  // When set, candidate steps are examined in an order drawn from this seed
  // instead of (size, lexicographic).
  std::optional<std::uint64_t> shuffle_seed;
};

RigidChain closure(const Graph& g, const std::vector<Vertex>& base, unsigned t, const Rational& alpha,
                   const ClosureOptions& opts = {});

// Grows the base by a smallest set W of at most r new vertices with
// (e(W ∪ Y) - e(Y)) / |W| > 1/alpha until none exists. Returns the final
// vertex set, sorted.
std::vector<Vertex> dense_neighbourhood(const Graph& g, const std::vector<Vertex>& base, unsigned r,
                                        const Rational& alpha, std::size_t vertex_budget = 4096);

// Every fraction a/b in [lo, hi) has numerator a > t.
bool numerator_hypothesis(const Rational& lo, const Rational& hi, std::int64_t t);

// eps = lo - max{a/b : a <= t, a/b < lo}.
Rational closure_bound_epsilon(const Rational& lo, std::int64_t t);

// C + tC/eps.
Rational closure_size_bound(std::int64_t c, std::int64_t t, const Rational& eps);

}  // namespace rgfo
