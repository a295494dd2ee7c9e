#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rgfo {

using VarId = std::uint32_t;

enum class Rel : std::uint8_t { Adj, NotAdj, Eq, NotEq };

enum class Kind : std::uint8_t { Atom, And, Or, Exists, Forall, Not, True, False };

enum class Quant : std::uint8_t { Exists, Forall };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Immutable AST node. True/False only appear transiently inside the
// transform module and are never returned from public operations.
struct Node {
  Kind kind;
  Rel rel = Rel::Adj;
  VarId a = 0;
  VarId b = 0;
  VarId var = 0;
  std::vector<NodePtr> kids;
};

NodePtr make_atom(Rel rel, VarId a, VarId b);
NodePtr make_and(std::vector<NodePtr> kids);
NodePtr make_or(std::vector<NodePtr> kids);
NodePtr make_quant(Quant q, VarId var, NodePtr body);
NodePtr make_not(NodePtr child);
NodePtr make_const(bool value);

inline bool is_quant(const Node& n) { return n.kind == Kind::Exists || n.kind == Kind::Forall; }
inline Quant quant_of(const Node& n) { return n.kind == Kind::Exists ? Quant::Exists : Quant::Forall; }
inline Quant dual(Quant q) { return q == Quant::Exists ? Quant::Forall : Quant::Exists; }
Rel negate(Rel r);

// A formula together with the surface names of its variables. Every
// quantifier binds its own id; names[id] is unique within the formula.
class Formula {
 public:
  Formula() = default;
  Formula(NodePtr root, std::vector<std::string> names);

  const NodePtr& root() const { return root_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(VarId v) const { return names_.at(v); }
  std::size_t var_count() const { return names_.size(); }

  // Ids occurring free, in increasing order.
  std::vector<VarId> free_vars() const;
  bool is_sentence() const { return free_vars().empty(); }

  Formula with_root(NodePtr root) const { return Formula(std::move(root), names_); }

 private:
  NodePtr root_;
  std::vector<std::string> names_;
};

struct ParseOptions {
  // Names permitted to occur free. Empty means the input must be a sentence.
  std::vector<std::string> free_vars;
};

Formula parse(std::string_view text, const ParseOptions& opts = {});

// Canonical, fully parenthesised rendering in the input grammar.
std::string to_string(const Formula& f);
std::string to_string(const NodePtr& n, const std::vector<std::string>& names);

// Pushes negations to atoms and removes Not nodes. Throws PreconditionError
// on atoms relating a variable to itself.
Formula normalize(const Formula& f);

bool is_negation_free(const Formula& f);
bool structurally_equal(const NodePtr& a, const NodePtr& b);

struct NestingForest {
  struct Item {
    Quant label;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
  };
  std::vector<Item> nodes;
  std::vector<std::size_t> roots;
};

NestingForest nesting_forest(const Formula& f);

struct FormulaMetrics {
  unsigned depth = 0;
  unsigned alternations = 0;
  bool operator==(const FormulaMetrics&) const = default;
};

FormulaMetrics metrics(const NestingForest& forest);
FormulaMetrics metrics(const Formula& f);

// Quantifier labels in the order they are met by a pre-order walk.
std::vector<Quant> quantifier_sequence(const Formula& f);

std::size_t node_count(const Formula& f);

namespace corpus {
const std::vector<std::string>& names();
std::string text(std::string_view name);
Formula get(std::string_view name);
}  // namespace corpus

}  // namespace rgfo
