#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <vector>

#include "rgfo/density.hpp"
#include "rgfo/formula.hpp"
#include "rgfo/graph.hpp"

namespace rgfo {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Compiled sentence for repeated evaluation. Quantifiers range over all
// vertices; distinctness is only what the eq/neq atoms state.
class Evaluator {
 public:
  explicit Evaluator(const Formula& f);
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;

  // Throws TimeoutError when the deadline passes.
  bool eval(const Graph& g, Deadline deadline = std::nullopt) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool models(const Graph& g, const Formula& f, Deadline deadline = std::nullopt);

struct NeighborStats {
  std::vector<Vertex> common;     // N(x1,x2)
  std::vector<Vertex> childless;  // members x3 of N(x1,x2) with N(x1,x2,x3) empty
  std::size_t adjacent_pairs = 0; // adjacent unordered pairs inside N(x1,x2)
};

NeighborStats common_neighbor_stats(const Graph& g, Vertex x1, Vertex x2);

// Positivity of the counts of common neighbours of (x1,x3) outside N(x2),
// and of (x2,x3) outside N(x1). The triple's own vertices never count.
struct TripleType {
  bool first = false;
  bool second = false;

  int rank() const { return (first ? 2 : 0) + (second ? 1 : 0); }
  bool operator==(const TripleType&) const = default;
  auto operator<=>(const TripleType& o) const { return rank() <=> o.rank(); }
};

TripleType triple_type(const Graph& g, Vertex x1, Vertex x2, Vertex x3);

bool has_extension_property(const Graph& host, const PatternPair& pp);

// Outer graph W over a middle layer G and an inner layer H. Vertex order in
// `outer`: inner roots are `inner`, middle roots `mid` (containing inner as a
// prefix), the rest are the z-vertices.
struct TriplePattern {
  Graph outer;
  std::vector<Vertex> mid;
  std::vector<Vertex> inner;
};

void validate_triple_family(const std::vector<TriplePattern>& family);

bool has_double_extension_property(const Graph& host, const std::vector<TriplePattern>& family);

std::optional<std::vector<Vertex>> find_generic_extension(const Graph& host, const std::vector<Vertex>& anchors,
                                                          const PatternPair& pp, unsigned t,
                                                          const Rational& alpha);

struct Case1Result {
  bool triangle = false;
  bool sparse_extension = false;
  bool sparse_subgraph = false;
  // False when sparse_extension was only checked for tuples up to m_cap.
  bool sparse_extension_complete = true;
};

Case1Result case1_properties(const Graph& g, unsigned m_cap = 3);

}  // namespace rgfo
