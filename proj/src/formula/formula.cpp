#include "rgfo/formula.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "rgfo/error.hpp"

namespace rgfo {

NodePtr make_atom(Rel rel, VarId a, VarId b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->rel = rel;
  n->a = a;
  n->b = b;
  return n;
}

NodePtr make_and(std::vector<NodePtr> kids) {
  if (kids.empty()) throw PreconditionError("empty conjunction");
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->kids = std::move(kids);
  return n;
}

NodePtr make_or(std::vector<NodePtr> kids) {
  if (kids.empty()) throw PreconditionError("empty disjunction");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->kids = std::move(kids);
  return n;
}

NodePtr make_quant(Quant q, VarId var, NodePtr body) {
  auto n = std::make_shared<Node>();
  n->kind = q == Quant::Exists ? Kind::Exists : Kind::Forall;
  n->var = var;
  n->kids.push_back(std::move(body));
  return n;
}

NodePtr make_not(NodePtr child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->kids.push_back(std::move(child));
  return n;
}

NodePtr make_const(bool value) {
  static const NodePtr t = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::True;
    return NodePtr(n);
  }();
  static const NodePtr f = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::False;
    return NodePtr(n);
  }();
  return value ? t : f;
}

Rel negate(Rel r) {
  switch (r) {
    case Rel::Adj: return Rel::NotAdj;
    case Rel::NotAdj: return Rel::Adj;
    case Rel::Eq: return Rel::NotEq;
    case Rel::NotEq: return Rel::Eq;
  }
  return r;
}

Formula::Formula(NodePtr root, std::vector<std::string> names)
    : root_(std::move(root)), names_(std::move(names)) {}

std::vector<VarId> Formula::free_vars() const {
  std::set<VarId> out;
  std::vector<VarId> bound;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    auto is_bound = [&](VarId v) { return std::find(bound.begin(), bound.end(), v) != bound.end(); };
    switch (n.kind) {
      case Kind::Atom:
        if (!is_bound(n.a)) out.insert(n.a);
        if (!is_bound(n.b)) out.insert(n.b);
        break;
      case Kind::Exists:
      case Kind::Forall:
        bound.push_back(n.var);
        walk(*n.kids[0]);
        bound.pop_back();
        break;
      default:
        for (const auto& k : n.kids) walk(*k);
    }
  };
  if (root_) walk(*root_);
  return {out.begin(), out.end()};
}

namespace {

const char* rel_token(Rel r) {
  switch (r) {
    case Rel::Adj: return " ~ ";
    case Rel::NotAdj: return " !~ ";
    case Rel::Eq: return " = ";
    case Rel::NotEq: return " != ";
  }
  return "?";
}

void print(const Node& n, const std::vector<std::string>& names, std::string& out) {
  switch (n.kind) {
    case Kind::Atom:
      out += '(';
      out += names.at(n.a);
      out += rel_token(n.rel);
      out += names.at(n.b);
      out += ')';
      break;
    case Kind::And:
    case Kind::Or: {
      if (n.kids.size() == 1) {
        print(*n.kids[0], names, out);
        break;
      }
      out += '(';
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += n.kind == Kind::And ? " & " : " | ";
        print(*n.kids[i], names, out);
      }
      out += ')';
      break;
    }
    case Kind::Exists:
    case Kind::Forall:
      out += n.kind == Kind::Exists ? "Ex " : "Ax ";
      out += names.at(n.var);
      out += ' ';
      print(*n.kids[0], names, out);
      break;
    case Kind::Not:
      out += '!';
      print(*n.kids[0], names, out);
      break;
    case Kind::True:
    case Kind::False:
      throw PreconditionError("constant node cannot be printed");
  }
}

NodePtr push_negations(const NodePtr& n, bool negated) {
  switch (n->kind) {
    case Kind::Atom:
      if (n->a == n->b) throw PreconditionError("atom relates a variable to itself");
      return negated ? make_atom(negate(n->rel), n->a, n->b) : n;
    case Kind::And:
    case Kind::Or: {
      std::vector<NodePtr> kids;
      kids.reserve(n->kids.size());
      bool same = !negated;
      for (const auto& k : n->kids) {
        kids.push_back(push_negations(k, negated));
        same = same && kids.back() == k;
      }
      if (same) return n;
      bool conj = (n->kind == Kind::And) != negated;
      return conj ? make_and(std::move(kids)) : make_or(std::move(kids));
    }
    case Kind::Exists:
    case Kind::Forall: {
      NodePtr body = push_negations(n->kids[0], negated);
      if (!negated && body == n->kids[0]) return n;
      Quant q = quant_of(*n);
      return make_quant(negated ? dual(q) : q, n->var, std::move(body));
    }
    case Kind::Not:
      return push_negations(n->kids[0], !negated);
    case Kind::True:
    case Kind::False:
      return make_const((n->kind == Kind::True) != negated);
  }
  return n;
}

}  // namespace

std::string to_string(const NodePtr& n, const std::vector<std::string>& names) {
  std::string out;
  print(*n, names, out);
  return out;
}

std::string to_string(const Formula& f) { return to_string(f.root(), f.names()); }

Formula normalize(const Formula& f) { return f.with_root(push_negations(f.root(), false)); }

bool is_negation_free(const Formula& f) {
  std::function<bool(const Node&)> ok = [&](const Node& n) {
    if (n.kind == Kind::Not) return false;
    return std::all_of(n.kids.begin(), n.kids.end(), [&](const NodePtr& k) { return ok(*k); });
  };
  return ok(*f.root());
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
  switch (a->kind) {
    case Kind::Atom:
      return a->rel == b->rel && a->a == b->a && a->b == b->b;
    case Kind::Exists:
    case Kind::Forall:
      if (a->var != b->var) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structurally_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

NestingForest nesting_forest(const Formula& f) {
  NestingForest forest;
  std::function<void(const Node&, std::optional<std::size_t>)> walk =
      [&](const Node& n, std::optional<std::size_t> parent) {
        if (is_quant(n)) {
          std::size_t id = forest.nodes.size();
          forest.nodes.push_back({quant_of(n), parent, {}});
          if (parent)
            forest.nodes[*parent].children.push_back(id);
          else
            forest.roots.push_back(id);
          walk(*n.kids[0], id);
          return;
        }
        for (const auto& k : n.kids) walk(*k, parent);
      };
  walk(*f.root(), std::nullopt);
  return forest;
}

FormulaMetrics metrics(const NestingForest& forest) {
  FormulaMetrics m;
  std::function<void(std::size_t, unsigned, unsigned)> walk = [&](std::size_t v, unsigned len,
                                                                  unsigned changes) {
    m.depth = std::max(m.depth, len);
    m.alternations = std::max(m.alternations, changes);
    for (std::size_t c : forest.nodes[v].children)
      walk(c, len + 1, changes + (forest.nodes[c].label != forest.nodes[v].label ? 1 : 0));
  };
  for (std::size_t r : forest.roots) walk(r, 1, 0);
  return m;
}

FormulaMetrics metrics(const Formula& f) { return metrics(nesting_forest(f)); }

std::vector<Quant> quantifier_sequence(const Formula& f) {
  std::vector<Quant> out;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    if (is_quant(n)) out.push_back(quant_of(n));
    for (const auto& k : n.kids) walk(*k);
  };
  walk(*f.root());
  return out;
}

std::size_t node_count(const Formula& f) {
  std::function<std::size_t(const Node&)> count = [&](const Node& n) {
    std::size_t c = 1;
    for (const auto& k : n.kids) c += count(*k);
    return c;
  };
  return count(*f.root());
}

}  // namespace rgfo
