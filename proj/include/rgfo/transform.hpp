#pragma once

#include <vector>

#include "rgfo/formula.hpp"

namespace rgfo {

struct PrefixEntry {
  Quant quant;
  VarId var;
  bool operator==(const PrefixEntry&) const = default;
};

// Quantifier prefix over a quantifier-free matrix. `names` is the variable
// table of the formula the ids belong to.
struct PrenexFormula {
  std::vector<PrefixEntry> prefix;
  NodePtr matrix;
  std::vector<std::string> names;

  Formula assemble() const;
  std::vector<Quant> quantifiers() const;
};

// Splits a formula whose nesting forest is a path. Throws PreconditionError
// when the formula is not prenex.
PrenexFormula as_prenex(const Formula& f);

enum class Connective { And, Or };

// Joins two prenex formulas whose prefixes each use a single quantifier
// symbol. Bound variables of f2 are renamed apart from f1 when the inputs
// come from different variable tables.
PrenexFormula merge_prenex(const PrenexFormula& f1, const PrenexFormula& f2, Connective c);

// Outward quantifier extraction, left operand first.
PrenexFormula to_pnf(const Formula& f);

inline constexpr std::size_t kMaxNepnfQuantifiers = 10;

// Equality case split followed by the distinctness guards. Agreement with the
// input is only claimed on graphs with at least as many vertices as the
// prefix has quantifiers.
PrenexFormula to_nepnf(const PrenexFormula& f);

// Eq/neq-free core and quantifier string of an NEPNF formula produced by
// to_nepnf (the guards are stripped back off).
struct NEBasis {
  NodePtr core;
  std::vector<Quant> quantifiers;
};
NEBasis ne_basis(const PrenexFormula& nepnf);

unsigned mu_measure(const NestingForest& tree);

struct AlternationPnfResult {
  PrenexFormula result;
  // mu of the working formula before the first merge pass and after each
  // pass at the outermost level.
  std::vector<unsigned> mu_trace;
};

AlternationPnfResult to_pnf_alternation_preserving_traced(const Formula& f);
PrenexFormula to_pnf_alternation_preserving(const Formula& f);

// Number of nodes of the tree expansion (shared subterms counted each time).
std::size_t tree_size(const NodePtr& n);

}  // namespace rgfo
