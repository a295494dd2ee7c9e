#include <algorithm>
#include <bit>
#include <set>
#include <unordered_map>

#include "rgfo/error.hpp"
#include "rgfo/modelcheck.hpp"

namespace rgfo {
namespace {

using VarSet = std::set<VarId>;

VarSet free_of(const NodePtr& n) {
  switch (n->kind) {
    case Kind::Atom:
      return {n->a, n->b};
    case Kind::Exists:
    case Kind::Forall: {
      VarSet s = free_of(n->kids[0]);
      s.erase(n->var);
      return s;
    }
    default: {
      VarSet s;
      for (const auto& k : n->kids) {
        VarSet t = free_of(k);
        s.insert(t.begin(), t.end());
      }
      return s;
    }
  }
}

bool mentions(const NodePtr& n, VarId v) { return free_of(n).count(v) > 0; }

NodePtr flatten(Kind kind, std::vector<NodePtr> kids) {
  std::vector<NodePtr> flat;
  for (auto& k : kids) {
    if (k->kind == kind)
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    else
      flat.push_back(std::move(k));
  }
  if (flat.size() == 1) return flat[0];
  return kind == Kind::And ? make_and(std::move(flat)) : make_or(std::move(flat));
}

NodePtr miniscope(const NodePtr& n);

// Quantifier over an already miniscoped body: distribute over the matching
// connective and hoist operands that do not mention the variable.
NodePtr scope(Quant q, VarId x, const NodePtr& body) {
  if (!mentions(body, x)) return body;
  Kind distribute = q == Quant::Exists ? Kind::Or : Kind::And;
  Kind split = q == Quant::Exists ? Kind::And : Kind::Or;
  if (body->kind == distribute) {
    std::vector<NodePtr> kids;
    for (const auto& k : body->kids) kids.push_back(scope(q, x, k));
    return flatten(distribute, std::move(kids));
  }
  if (body->kind == split) {
    std::vector<NodePtr> dep, indep;
    for (const auto& k : body->kids) (mentions(k, x) ? dep : indep).push_back(k);
    if (!indep.empty()) {
      NodePtr inner = dep.size() == 1 ? dep[0] : flatten(split, dep);
      indep.push_back(scope(q, x, inner));
      return flatten(split, std::move(indep));
    }
  }
  return make_quant(q, x, body);
}

NodePtr miniscope(const NodePtr& n) {
  switch (n->kind) {
    case Kind::And:
    case Kind::Or: {
      std::vector<NodePtr> kids;
      for (const auto& k : n->kids) kids.push_back(miniscope(k));
      return flatten(n->kind, std::move(kids));
    }
    case Kind::Exists:
    case Kind::Forall:
      return scope(quant_of(*n), n->var, miniscope(n->kids[0]));
    case Kind::Not:
      throw PreconditionError("model checking requires a negation-free formula");
    default:
      return n;
  }
}

struct Plan {
  Kind kind;
  Rel rel = Rel::Adj;
  VarId a = 0, b = 0, var = 0;
  std::vector<int> kids;
  std::vector<VarId> free;  // for quantifier memo keys
  // For quantifiers: atoms relating the bound variable to an outer one that
  // restrict the range (conjuncts under ∃, disjuncts under ∀).
  std::vector<std::pair<Rel, VarId>> filters;
  bool memo = false;
};

}  // namespace

struct Evaluator::Impl {
  NodePtr original;
  std::vector<Plan> plan;
  int root = 0;
  std::size_t vars = 0;

  int build(const NodePtr& n) {
    Plan p;
    p.kind = n->kind;
    switch (n->kind) {
      case Kind::Atom:
        p.rel = n->rel;
        p.a = n->a;
        p.b = n->b;
        break;
      case Kind::And:
      case Kind::Or: {
        // Atoms first: they are cheap and often decide the connective.
        std::vector<NodePtr> kids = n->kids;
        std::stable_partition(kids.begin(), kids.end(), [](const NodePtr& k) { return k->kind == Kind::Atom; });
        for (const auto& k : kids) p.kids.push_back(build(k));
        break;
      }
      case Kind::Exists:
      case Kind::Forall: {
        p.var = n->var;
        const NodePtr& body = n->kids[0];
        Kind filter_kind = n->kind == Kind::Exists ? Kind::And : Kind::Or;
        auto consider = [&](const NodePtr& k) {
          if (k->kind != Kind::Atom) return;
          if (k->a == n->var && k->b != n->var) p.filters.emplace_back(k->rel, k->b);
          if (k->b == n->var && k->a != n->var) p.filters.emplace_back(k->rel, k->a);
        };
        if (body->kind == filter_kind)
          for (const auto& k : body->kids) consider(k);
        else
          consider(body);
        VarSet fv = free_of(n);
        p.free.assign(fv.begin(), fv.end());
        p.memo = p.free.size() <= 4;
        p.kids.push_back(build(body));
        break;
      }
      default:
        break;
    }
    plan.push_back(std::move(p));
    return static_cast<int>(plan.size() - 1);
  }
};

namespace {

struct State {
  const Graph& g;
  const std::vector<Plan>& plan;
  std::vector<Vertex> env;
  std::vector<std::unordered_map<std::uint64_t, bool>> memo;
  Deadline deadline;
  std::size_t ticks = 0;
  std::size_t memo_entries = 0;
  std::vector<std::vector<std::uint64_t>> scratch;  // candidate bitsets per depth
  std::size_t depth = 0;
  bool memo_ok;

  static constexpr std::size_t kMemoCap = std::size_t{1} << 22;

  bool atom(Rel rel, VarId a, VarId b) const {
    Vertex u = env[a], v = env[b];
    switch (rel) {
      case Rel::Adj: return g.adj(u, v);
      case Rel::NotAdj: return !g.adj(u, v);
      case Rel::Eq: return u == v;
      case Rel::NotEq: return u != v;
    }
    return false;
  }

  void tick() {
    if (deadline && (++ticks & 1023) == 0 && std::chrono::steady_clock::now() > *deadline)
      throw TimeoutError("model checking exceeded its time budget");
  }

  bool eval(int id) {
    const Plan& p = plan[id];
    switch (p.kind) {
      case Kind::Atom:
        return atom(p.rel, p.a, p.b);
      case Kind::And:
        for (int k : p.kids)
          if (!eval(k)) return false;
        return true;
      case Kind::Or:
        for (int k : p.kids)
          if (eval(k)) return true;
        return false;
      case Kind::True:
        return true;
      case Kind::False:
        return false;
      case Kind::Exists:
      case Kind::Forall:
        return quant(id, p);
      default:
        throw PreconditionError("unexpected node in evaluation plan");
    }
  }

  bool quant(int id, const Plan& p) {
    std::uint64_t key = 0;
    bool use_memo = memo_ok && p.memo;
    if (use_memo) {
      for (VarId v : p.free) key = (key << 16) | env[v];
      auto it = memo[id].find(key);
      if (it != memo[id].end()) return it->second;
    }
    bool exists = p.kind == Kind::Exists;
    std::size_t W = g.words();
    if (scratch.size() <= depth) scratch.emplace_back();
    std::vector<std::uint64_t>& cand = scratch[depth];
    cand.assign(W, ~std::uint64_t{0});
    if (W && g.order() % 64) cand[W - 1] = (std::uint64_t{1} << (g.order() % 64)) - 1;
    for (auto [rel, other] : p.filters) {
      // Under ∀ the disjunct atom already makes the body true, so only the
      // complementary vertices need checking.
      Rel need = exists ? rel : negate(rel);
      Vertex o = env[other];
      const std::uint64_t* row = g.row(o);
      switch (need) {
        case Rel::Adj:
          for (std::size_t w = 0; w < W; ++w) cand[w] &= row[w];
          break;
        case Rel::NotAdj:
          for (std::size_t w = 0; w < W; ++w) cand[w] &= ~row[w];
          break;
        case Rel::Eq: {
          bool keep = (cand[o >> 6] >> (o & 63)) & 1u;
          std::fill(cand.begin(), cand.end(), 0);
          if (keep) cand[o >> 6] |= std::uint64_t{1} << (o & 63);
          break;
        }
        case Rel::NotEq:
          cand[o >> 6] &= ~(std::uint64_t{1} << (o & 63));
          break;
      }
    }
    bool result = !exists;
    ++depth;
    Vertex saved = env[p.var];
    for (std::size_t w = 0; w < W && result == !exists; ++w) {
      std::uint64_t bits = scratch[depth - 1][w];
      while (bits) {
        tick();
        env[p.var] = static_cast<Vertex>(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
        if (eval(p.kids[0]) == exists) {
          result = exists;
          break;
        }
      }
    }
    env[p.var] = saved;
    --depth;
    if (use_memo && memo_entries < kMemoCap) {
      memo[id].emplace(key, result);
      ++memo_entries;
    }
    return result;
  }
};

// Direct evaluation used only for the empty graph, where miniscoping would
// drop vacuous quantifiers.
bool eval_empty_domain(const NodePtr& n) {
  switch (n->kind) {
    case Kind::Exists: return false;
    case Kind::Forall: return true;
    case Kind::And:
      return std::all_of(n->kids.begin(), n->kids.end(), eval_empty_domain);
    case Kind::Or:
      return std::any_of(n->kids.begin(), n->kids.end(), eval_empty_domain);
    case Kind::True: return true;
    case Kind::False: return false;
    default:
      throw PreconditionError("free variable in sentence");
  }
}

}  // namespace

Evaluator::Evaluator(const Formula& f) : impl_(std::make_unique<Impl>()) {
  if (!f.is_sentence()) throw PreconditionError("model checking requires a sentence");
  if (!is_negation_free(f)) throw PreconditionError("model checking requires a negation-free formula");
  impl_->original = f.root();
  impl_->vars = f.var_count();
  impl_->root = impl_->build(miniscope(f.root()));
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

bool Evaluator::eval(const Graph& g, Deadline deadline) const {
  if (g.order() == 0) return eval_empty_domain(impl_->original);
  State s{g, impl_->plan, std::vector<Vertex>(impl_->vars, 0), {}, deadline, 0, 0, {}, 0, g.order() <= 65536};
  s.memo.resize(impl_->plan.size());
  return s.eval(impl_->root);
}

bool models(const Graph& g, const Formula& f, Deadline deadline) { return Evaluator(f).eval(g, deadline); }

}  // namespace rgfo
