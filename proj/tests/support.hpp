#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rgfo/formula.hpp"
#include "rgfo/graph.hpp"

namespace testsupport {

// Plain recursive evaluator over the AST: every quantifier tries every
// vertex, no scoping or pruning. Handles Not nodes and constants.
bool oracle_models(const rgfo::Graph& g, const rgfo::Formula& f);

// Same, with free variables bound by name.
bool oracle_models_at(const rgfo::Graph& g, const rgfo::Formula& f,
                      const std::map<std::string, rgfo::Vertex>& binding);

// All 2^(n(n-1)/2) labelled graphs on n vertices, edge set encoded by the
// bits of the index in lexicographic pair order.
std::vector<rgfo::Graph> labelled_graphs(std::size_t n);

// One representative per isomorphism class for orders lo..hi, found by
// minimising the edge mask over all vertex permutations.
std::vector<rgfo::Graph> iso_classes(std::size_t lo, std::size_t hi);

// Twenty sentences with at most four quantifier occurrences each, every
// one starting with a quantifier once negations are pushed inward.
const std::vector<std::string>& small_corpus();

rgfo::Graph graph_of(std::size_t n, const std::vector<std::pair<rgfo::Vertex, rgfo::Vertex>>& edges);

}  // namespace testsupport
