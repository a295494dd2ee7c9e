#include "rgfo/transform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "rgfo/error.hpp"

namespace rgfo {

Formula PrenexFormula::assemble() const {
  NodePtr body = matrix;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) body = make_quant(it->quant, it->var, body);
  return Formula(body, names);
}

std::vector<Quant> PrenexFormula::quantifiers() const {
  std::vector<Quant> out;
  for (const auto& e : prefix) out.push_back(e.quant);
  return out;
}

namespace {

bool quantifier_free(const NodePtr& n) {
  if (is_quant(*n)) return false;
  return std::all_of(n->kids.begin(), n->kids.end(), quantifier_free);
}

void require_negation_free(const NodePtr& n) {
  if (n->kind == Kind::Not) throw PreconditionError("formula must be negation-free; normalize it first");
  for (const auto& k : n->kids) require_negation_free(k);
}

std::set<VarId> bound_vars(const PrenexFormula& f) {
  std::set<VarId> s;
  for (const auto& e : f.prefix) s.insert(e.var);
  return s;
}

// Variables of the (quantifier-free) matrix that the prefix does not bind.
std::set<VarId> free_in(const NodePtr& matrix, const std::vector<PrefixEntry>& prefix) {
  std::set<VarId> s;
  std::function<void(const NodePtr&)> walk = [&](const NodePtr& n) {
    if (n->kind == Kind::Atom) {
      s.insert(n->a);
      s.insert(n->b);
    }
    for (const auto& k : n->kids) walk(k);
  };
  walk(matrix);
  for (const auto& e : prefix) s.erase(e.var);
  return s;
}

bool uniform(const std::vector<PrefixEntry>& prefix) {
  return std::all_of(prefix.begin(), prefix.end(), [&](const PrefixEntry& e) { return e.quant == prefix[0].quant; });
}

NodePtr rename(const NodePtr& n, const std::map<VarId, VarId>& sub) {
  auto map = [&](VarId v) {
    auto it = sub.find(v);
    return it == sub.end() ? v : it->second;
  };
  switch (n->kind) {
    case Kind::Atom:
      return make_atom(n->rel, map(n->a), map(n->b));
    case Kind::Exists:
    case Kind::Forall:
      return make_quant(quant_of(*n), map(n->var), rename(n->kids[0], sub));
    case Kind::And:
    case Kind::Or:
    case Kind::Not: {
      std::vector<NodePtr> kids;
      for (const auto& k : n->kids) kids.push_back(rename(k, sub));
      if (n->kind == Kind::Not) return make_not(kids[0]);
      return n->kind == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
    }
    default:
      return n;
  }
}

}  // namespace

PrenexFormula as_prenex(const Formula& f) {
  PrenexFormula out;
  out.names = f.names();
  NodePtr n = f.root();
  while (is_quant(*n)) {
    out.prefix.push_back({quant_of(*n), n->var});
    n = n->kids[0];
  }
  if (!quantifier_free(n)) throw PreconditionError("formula is not in prenex normal form");
  out.matrix = n;
  return out;
}

PrenexFormula merge_prenex(const PrenexFormula& f1, const PrenexFormula& f2, Connective c) {
  if (!uniform(f1.prefix) || !uniform(f2.prefix))
    throw PreconditionError("merge_prenex needs prefixes that use a single quantifier symbol each");
  PrenexFormula g2 = f2;
  PrenexFormula out;
  out.names = f1.names;
  std::set<VarId> b1 = bound_vars(f1);
  bool clash = f1.names != f2.names;
  for (VarId v : bound_vars(f2)) clash = clash || b1.count(v);
  if (clash) {
    // Bring f2 into f1's table: free variables by name, bound ones fresh.
    std::set<VarId> b2 = bound_vars(f2);
    std::map<VarId, VarId> sub;
    std::set<std::string> taken(out.names.begin(), out.names.end());
    std::function<void(const NodePtr&)> collect = [&](const NodePtr& n) {
      auto place = [&](VarId v) {
        if (sub.count(v)) return;
        const std::string& name = f2.names.at(v);
        if (!b2.count(v)) {
          auto it = std::find(out.names.begin(), out.names.end(), name);
          if (it != out.names.end()) {
            sub[v] = static_cast<VarId>(it - out.names.begin());
            if (b1.count(sub[v])) throw PreconditionError("merge_prenex would capture free variable '" + name + "'");
            return;
          }
        }
        std::string fresh = name;
        for (unsigned k = 2; taken.count(fresh); ++k) fresh = name + "_" + std::to_string(k);
        taken.insert(fresh);
        out.names.push_back(fresh);
        sub[v] = static_cast<VarId>(out.names.size() - 1);
      };
      if (n->kind == Kind::Atom) {
        place(n->a);
        place(n->b);
      }
      for (const auto& k : n->kids) collect(k);
    };
    for (const auto& e : f2.prefix) {
      if (!sub.count(e.var)) {
        const std::string& name = f2.names.at(e.var);
        std::string fresh = name;
        for (unsigned k = 2; taken.count(fresh); ++k) fresh = name + "_" + std::to_string(k);
        taken.insert(fresh);
        out.names.push_back(fresh);
        sub[e.var] = static_cast<VarId>(out.names.size() - 1);
      }
    }
    collect(f2.matrix);
    g2.matrix = rename(f2.matrix, sub);
    for (auto& e : g2.prefix) e.var = sub.at(e.var);
  } else {
    for (VarId v : free_in(f2.matrix, f2.prefix))
      if (b1.count(v)) throw PreconditionError("merge_prenex would capture free variable '" + f2.names.at(v) + "'");
  }
  out.prefix = f1.prefix;
  out.prefix.insert(out.prefix.end(), g2.prefix.begin(), g2.prefix.end());
  std::vector<NodePtr> kids{f1.matrix, g2.matrix};
  out.matrix = c == Connective::And ? make_and(std::move(kids)) : make_or(std::move(kids));
  return out;
}

PrenexFormula to_pnf(const Formula& f) {
  require_negation_free(f.root());
  PrenexFormula out;
  out.names = f.names();
  std::function<NodePtr(const NodePtr&)> pull = [&](const NodePtr& n) -> NodePtr {
    switch (n->kind) {
      case Kind::Exists:
      case Kind::Forall:
        out.prefix.push_back({quant_of(*n), n->var});
        return pull(n->kids[0]);
      case Kind::And:
      case Kind::Or: {
        std::vector<NodePtr> kids;
        bool same = true;
        for (const auto& k : n->kids) {
          kids.push_back(pull(k));
          same = same && kids.back() == k;
        }
        if (same) return n;
        return n->kind == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
      }
      default:
        return n;
    }
  };
  out.matrix = pull(f.root());
  return out;
}

std::size_t tree_size(const NodePtr& n) {
  std::unordered_map<const Node*, std::size_t> memo;
  constexpr std::size_t kSat = std::size_t{1} << 62;
  std::function<std::size_t(const Node*)> size = [&](const Node* p) -> std::size_t {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    std::size_t s = 1;
    for (const auto& k : p->kids) s = std::min(kSat, s + size(k.get()));
    memo[p] = s;
    return s;
  };
  return size(n.get());
}

namespace {

// Hash-consing constructor with constant folding for quantifier-free
// matrices. Identical subterms become the same pointer.
class Interner {
 public:
  NodePtr atom(Rel rel, VarId a, VarId b) {
    Key k{Kind::Atom, rel, a, b, {}};
    return lookup(k, [&] { return make_atom(rel, a, b); });
  }

  NodePtr junction(Kind kind, const std::vector<NodePtr>& in) {
    Kind absorbing = kind == Kind::And ? Kind::False : Kind::True;
    std::vector<NodePtr> kids;
    std::set<const Node*> seen;
    std::function<void(const NodePtr&)> add = [&](const NodePtr& k) {
      if (k->kind == kind) {
        for (const auto& c : k->kids) add(c);
        return;
      }
      if (seen.insert(k.get()).second) kids.push_back(k);
    };
    for (const auto& k : in) {
      if (k->kind == absorbing) return make_const(absorbing == Kind::True);
      if (k->kind == Kind::True || k->kind == Kind::False) continue;
      add(k);
    }
    for (const auto& k : kids)
      if (k->kind == absorbing) return make_const(absorbing == Kind::True);
    if (kids.empty()) return make_const(kind == Kind::And);
    if (kids.size() == 1) return kids[0];
    Key key{kind, Rel::Adj, 0, 0, {}};
    for (const auto& k : kids) key.kids.push_back(k.get());
    return lookup(key, [&] { return kind == Kind::And ? make_and(kids) : make_or(kids); });
  }

  NodePtr intern(const NodePtr& n) {
    switch (n->kind) {
      case Kind::Atom:
        return atom(n->rel, n->a, n->b);
      case Kind::And:
      case Kind::Or: {
        std::vector<NodePtr> kids;
        for (const auto& k : n->kids) kids.push_back(intern(k));
        return junction(n->kind, kids);
      }
      case Kind::True:
      case Kind::False:
        return make_const(n->kind == Kind::True);
      default:
        throw PreconditionError("matrix must be quantifier-free and negation-free");
    }
  }

 private:
  struct Key {
    Kind kind;
    Rel rel;
    VarId a, b;
    std::vector<const Node*> kids;
    bool operator<(const Key& o) const {
      return std::tie(kind, rel, a, b, kids) < std::tie(o.kind, o.rel, o.a, o.b, o.kids);
    }
  };
  std::map<Key, NodePtr> table_;

  template <class F>
  NodePtr lookup(const Key& k, F make) {
    auto it = table_.find(k);
    if (it != table_.end()) return it->second;
    NodePtr n = make();
    table_.emplace(k, n);
    return n;
  }
};

}  // namespace

PrenexFormula to_nepnf(const PrenexFormula& f) {
  const std::size_t m = f.prefix.size();
  if (m > kMaxNepnfQuantifiers)
    throw LimitError("NEPNF construction is capped at " + std::to_string(kMaxNepnfQuantifiers) + " quantifiers");
  if (!quantifier_free(f.matrix)) throw PreconditionError("matrix must be quantifier-free");
  std::vector<VarId> x;
  for (const auto& e : f.prefix) x.push_back(e.var);
  if (!f.assemble().is_sentence()) throw PreconditionError("NEPNF construction needs a sentence");
  std::map<VarId, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index[x[i]] = i;

  Interner in;
  NodePtr cur = in.intern(f.matrix);
  for (std::size_t j = 1; j < m; ++j) {
    // case -1: x_j differs from every earlier variable; case i: x_j = x_i.
    auto split = [&](long i) {
      std::unordered_map<const Node*, NodePtr> memo;
      std::function<NodePtr(const NodePtr&)> go = [&](const NodePtr& n) -> NodePtr {
        auto it = memo.find(n.get());
        if (it != memo.end()) return it->second;
        NodePtr out;
        if (n->kind == Kind::Atom) {
          VarId a = n->a, b = n->b;
          bool eq = n->rel == Rel::Eq || n->rel == Rel::NotEq;
          VarId other = a == x[j] ? b : a;
          if (eq && (a == x[j] || b == x[j]) && index.count(other) && index[other] < j) {
            bool same = i >= 0 && index[other] == static_cast<std::size_t>(i);
            out = make_const(n->rel == Rel::Eq ? same : !same);
          } else if (i >= 0 && (a == x[j] || b == x[j])) {
            if (a == x[j]) a = x[static_cast<std::size_t>(i)];
            if (b == x[j]) b = x[static_cast<std::size_t>(i)];
            if (a == b)
              out = make_const(n->rel == Rel::NotAdj || n->rel == Rel::Eq);
            else
              out = in.atom(n->rel, a, b);
          } else {
            out = n;
          }
        } else if (n->kind == Kind::And || n->kind == Kind::Or) {
          std::vector<NodePtr> kids;
          for (const auto& k : n->kids) kids.push_back(go(k));
          out = in.junction(n->kind, kids);
        } else {
          out = n;
        }
        memo[n.get()] = out;
        return out;
      };
      return go(cur);
    };
    std::vector<NodePtr> parts{split(-1)};
    for (std::size_t i = 0; i < j; ++i) parts.push_back(split(static_cast<long>(i)));
    cur = in.junction(f.prefix[j].quant == Quant::Exists ? Kind::Or : Kind::And, parts);
  }

  NodePtr core = cur;
  if (core->kind == Kind::True || core->kind == Kind::False) {
    if (m < 2) throw PreconditionError("cannot express a constant core with fewer than two variables");
    NodePtr adj = make_atom(Rel::Adj, x[0], x[1]), nadj = make_atom(Rel::NotAdj, x[0], x[1]);
    core = core->kind == Kind::True ? make_or({adj, nadj}) : make_and({adj, nadj});
  }
  NodePtr body = core;
  for (std::size_t j = 1; j < m; ++j) {
    bool ex = f.prefix[j].quant == Quant::Exists;
    std::vector<NodePtr> kids;
    for (std::size_t l = j; l-- > 0;) kids.push_back(make_atom(ex ? Rel::NotEq : Rel::Eq, x[j], x[l]));
    kids.push_back(body);
    body = ex ? make_and(std::move(kids)) : make_or(std::move(kids));
  }
  PrenexFormula out;
  out.prefix = f.prefix;
  out.matrix = body;
  out.names = f.names;
  return out;
}

NEBasis ne_basis(const PrenexFormula& nepnf) {
  NEBasis b;
  b.quantifiers = nepnf.quantifiers();
  NodePtr n = nepnf.matrix;
  for (std::size_t j = nepnf.prefix.size(); j-- > 1;) {
    if ((n->kind != Kind::And && n->kind != Kind::Or) || n->kids.size() != j + 1)
      throw PreconditionError("formula does not have the NEPNF guard structure");
    n = n->kids.back();
  }
  b.core = n;
  return b;
}

unsigned mu_measure(const NestingForest& tree) {
  if (tree.roots.size() != 1) throw PreconditionError("mu is defined for a single rooted tree");
  std::vector<std::size_t> level{tree.roots[0]};
  unsigned depth = 0;
  std::optional<unsigned> r;
  while (!level.empty()) {
    ++depth;
    if (!r && level.size() > 1) r = depth;
    std::vector<std::size_t> next;
    for (std::size_t v : level)
      next.insert(next.end(), tree.nodes[v].children.begin(), tree.nodes[v].children.end());
    level = std::move(next);
  }
  unsigned q = depth;
  return q + 1 - r.value_or(q + 1);
}

namespace {

struct Pre {
  std::vector<PrefixEntry> prefix;
  NodePtr matrix;
};

class AltPnf {
 public:
  explicit AltPnf(const Formula& f) : names_(f.names()) {}

  std::vector<unsigned> trace;

  Pre run(const NodePtr& n, bool outermost) {
    Pre out;
    NodePtr body = n;
    while (is_quant(*body)) {
      out.prefix.push_back({quant_of(*body), body->var});
      body = body->kids[0];
    }
    // Children: maximal quantified subformulas of the connective skeleton.
    std::vector<Pre> kids;
    std::vector<std::size_t> offset;
    std::function<void(const NodePtr&)> collect = [&](const NodePtr& k) {
      if (is_quant(*k)) {
        kids.push_back(run(k, false));
        offset.push_back(0);
        return;
      }
      for (const auto& c : k->kids) collect(c);
    };
    collect(body);

    auto remaining = [&](std::size_t c) { return kids[c].prefix.size() - offset[c]; };
    auto quantified_kids = [&] {
      std::size_t cnt = 0;
      for (std::size_t c = 0; c < kids.size(); ++c) cnt += remaining(c) > 0;
      return cnt;
    };
    auto record = [&] {
      if (outermost) trace.push_back(working_mu(out.prefix, body, kids, offset));
    };

    record();
    while (quantified_kids() > 1) {
      Quant k = out.prefix.back().quant;
      for (Quant phase : {k, dual(k)})
        for (std::size_t c = 0; c < kids.size(); ++c)
          while (remaining(c) > 0 && kids[c].prefix[offset[c]].quant == phase)
            out.prefix.push_back(kids[c].prefix[offset[c]++]);
      record();
    }
    for (std::size_t c = 0; c < kids.size(); ++c)
      while (remaining(c) > 0) out.prefix.push_back(kids[c].prefix[offset[c]++]);

    std::size_t next = 0;
    out.matrix = rebuild(body, kids, next);
    return out;
  }

 private:
  std::vector<std::string> names_;

  static NodePtr rebuild(const NodePtr& n, const std::vector<Pre>& kids, std::size_t& next) {
    if (is_quant(*n)) return kids[next++].matrix;
    if (n->kind != Kind::And && n->kind != Kind::Or) return n;
    std::vector<NodePtr> out;
    for (const auto& c : n->kids) out.push_back(rebuild(c, kids, next));
    return n->kind == Kind::And ? make_and(std::move(out)) : make_or(std::move(out));
  }

  // mu of prefix + skeleton whose children keep their unpulled quantifiers.
  unsigned working_mu(const std::vector<PrefixEntry>& prefix, const NodePtr& body, const std::vector<Pre>& kids,
                      const std::vector<std::size_t>& offset) const {
    std::vector<Pre> partial;
    for (std::size_t c = 0; c < kids.size(); ++c) {
      Pre p;
      p.prefix.assign(kids[c].prefix.begin() + static_cast<long>(offset[c]), kids[c].prefix.end());
      NodePtr m = kids[c].matrix;
      for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) m = make_quant(it->quant, it->var, m);
      p.matrix = m;
      partial.push_back(p);
    }
    std::size_t next = 0;
    NodePtr root = rebuild(body, partial, next);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) root = make_quant(it->quant, it->var, root);
    return mu_measure(nesting_forest(Formula(root, names_)));
  }
};

}  // namespace

AlternationPnfResult to_pnf_alternation_preserving_traced(const Formula& f) {
  require_negation_free(f.root());
  if (!is_quant(*f.root())) throw PreconditionError("formula must begin with a quantifier");
  AltPnf alt(f);
  Pre p = alt.run(f.root(), true);
  AlternationPnfResult r;
  r.result.prefix = std::move(p.prefix);
  r.result.matrix = std::move(p.matrix);
  r.result.names = f.names();
  r.mu_trace = std::move(alt.trace);
  return r;
}

PrenexFormula to_pnf_alternation_preserving(const Formula& f) {
  return to_pnf_alternation_preserving_traced(f).result;
}

}  // namespace rgfo
