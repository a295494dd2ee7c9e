#include "rgfo/efgame.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rgfo/error.hpp"

namespace rgfo {

void GameSpec::validate() const {
  if (rounds == 0) throw PreconditionError("a game needs at least one round");
  if (mode != AltMode::Plain && k + 1 > rounds)
    throw PreconditionError("alternation bound k must be at most rounds - 1");
}

GameSpec parse_game_spec(unsigned rounds, const std::string& mode) {
  GameSpec s;
  s.rounds = rounds;
  auto bound = [&](std::size_t prefix) {
    std::string digits = mode.substr(prefix);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw PreconditionError("bad alternation mode '" + mode + "'");
    return static_cast<unsigned>(std::stoul(digits));
  };
  if (mode == "plain") {
    s.mode = AltMode::Plain;
  } else if (mode.rfind("atmost:", 0) == 0) {
    s.mode = AltMode::AtMost;
    s.k = bound(7);
  } else if (mode.rfind("exact:", 0) == 0) {
    s.mode = AltMode::Exactly;
    s.k = bound(6);
  } else {
    throw PreconditionError("bad alternation mode '" + mode + "'");
  }
  s.validate();
  return s;
}

std::string format_alt_mode(const GameSpec& spec) {
  switch (spec.mode) {
    case AltMode::Plain: return "plain";
    case AltMode::AtMost: return "atmost:" + std::to_string(spec.k);
    case AltMode::Exactly: return "exact:" + std::to_string(spec.k);
  }
  return "plain";
}

namespace {

constexpr int kNone = -1;

class Solver {
 public:
  Solver(const Graph& g, const Graph& h, const GameSpec& spec) : g_(g), h_(h), spec_(spec) {}

  std::vector<Vertex> gx, hy;
  unsigned alt = 0;
  int last = kNone;

  bool consistent() const {
    for (std::size_t i = 0; i < gx.size(); ++i)
      for (std::size_t j = i + 1; j < gx.size(); ++j)
        if (g_.adj(gx[i], gx[j]) != h_.adj(hy[i], hy[j])) return false;
    return true;
  }

  // Whether the newest pair keeps the map a partial isomorphism.
  bool last_pair_ok() const {
    std::size_t m = gx.size() - 1;
    for (std::size_t i = 0; i < m; ++i)
      if (g_.adj(gx[i], gx[m]) != h_.adj(hy[i], hy[m])) return false;
    return true;
  }

  struct Move {
    Side side;
    Vertex vertex;
  };

  // Spoiler wins from the current (consistent) position.
  bool spoiler_wins() { return find_move().has_value(); }

  std::optional<Move> find_move() {
    if (gx.size() >= spec_.rounds) return std::nullopt;
    auto key = memo_key();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::optional<Move> found;
    for (Side side : {Side::G, Side::H}) {
      auto [ok, next_alt] = legal(side);
      if (!ok) continue;
      const Graph& own = side == Side::G ? g_ : h_;
      for (Vertex v = 0; v < own.order() && !found; ++v) {
        if (taken(side, v)) continue;
        if (move_wins(side, v, next_alt)) found = Move{side, v};
      }
      if (found) break;
    }
    memo_.emplace(std::move(key), found);
    return found;
  }

  // Plays Spoiler's move and every Duplicator reply; calls `reply` with the
  // position extended and whether it is already broken.
  template <class F>
  void for_each_reply(Side side, Vertex v, F reply) {
    auto [ok, next_alt] = legal(side);
    (void)ok;
    const Graph& other = side == Side::G ? h_ : g_;
    Side other_side = side == Side::G ? Side::H : Side::G;
    unsigned saved_alt = alt;
    int saved_last = last;
    alt = next_alt;
    last = static_cast<int>(side);
    for (Vertex u = 0; u < other.order(); ++u) {
      if (taken(other_side, u)) continue;
      push(side, v, u);
      bool cont = reply(u, !last_pair_ok());
      pop();
      if (!cont) break;
    }
    alt = saved_alt;
    last = saved_last;
  }

  std::shared_ptr<const StrategyNode> strategy() {
    auto move = find_move();
    if (!move) return nullptr;
    auto node = std::make_shared<StrategyNode>();
    node->side = move->side;
    node->vertex = move->vertex;
    for_each_reply(move->side, move->vertex, [&](Vertex u, bool broken) {
      node->replies.emplace_back(u, broken ? nullptr : strategy());
      return true;
    });
    return node;
  }

  const Graph& graph(Side s) const { return s == Side::G ? g_ : h_; }

 private:
  const Graph& g_;
  const Graph& h_;
  GameSpec spec_;
  std::map<std::vector<std::uint32_t>, std::optional<Move>> memo_;

  bool taken(Side side, Vertex v) const {
    const auto& chosen = side == Side::G ? gx : hy;
    return std::find(chosen.begin(), chosen.end(), v) != chosen.end();
  }

  void push(Side side, Vertex v, Vertex u) {
    gx.push_back(side == Side::G ? v : u);
    hy.push_back(side == Side::G ? u : v);
  }
  void pop() {
    gx.pop_back();
    hy.pop_back();
  }

  std::pair<bool, unsigned> legal(Side side) const {
    unsigned next = alt + (last != kNone && last != static_cast<int>(side) ? 1 : 0);
    unsigned remaining = spec_.rounds - static_cast<unsigned>(gx.size()) - 1;
    switch (spec_.mode) {
      case AltMode::Plain: return {true, next};
      case AltMode::AtMost: return {next <= spec_.k, next};
      case AltMode::Exactly: return {next <= spec_.k && spec_.k - next <= remaining, next};
    }
    return {false, next};
  }

  bool move_wins(Side side, Vertex v, unsigned next_alt) {
    (void)next_alt;
    bool wins = true;
    for_each_reply(side, v, [&](Vertex, bool broken) {
      if (!broken && !spoiler_wins()) wins = false;
      return wins;
    });
    return wins;
  }

  std::vector<std::uint32_t> memo_key() const {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t i = 0; i < gx.size(); ++i) pairs.emplace_back(gx[i], hy[i]);
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::uint32_t> key{alt, static_cast<std::uint32_t>(last + 1)};
    for (auto [a, b] : pairs) {
      key.push_back(a);
      key.push_back(b);
    }
    return key;
  }
};

void check_tuple(const Graph& g, const std::vector<Vertex>& xs) {
  std::set<Vertex> seen;
  for (Vertex v : xs) {
    if (v >= g.order()) throw PreconditionError("preset vertex out of range");
    if (!seen.insert(v).second) throw PreconditionError("preset vertices must be distinct");
  }
}

void check_orders(const Graph& g, const Graph& h, unsigned q) {
  if (q > g.order() || q > h.order())
    throw PreconditionError("rounds must not exceed the order of either graph");
}

}  // namespace

GameOutcome solve(const Graph& g, const Graph& h, const GameSpec& spec) {
  spec.validate();
  check_orders(g, h, spec.rounds);
  Solver s(g, h, spec);
  GameOutcome out;
  if (auto strat = s.strategy()) {
    out.winner = Winner::Spoiler;
    out.strategy = std::move(strat);
  }
  return out;
}

GameOutcome solve_prefixed(const Graph& g, const std::vector<Vertex>& gx, const Graph& h,
                           const std::vector<Vertex>& hy, unsigned q) {
  if (gx.size() != hy.size()) throw PreconditionError("preset tuples differ in length");
  if (gx.size() > q) throw PreconditionError("more preset moves than rounds");
  check_tuple(g, gx);
  check_tuple(h, hy);
  GameSpec spec;
  spec.rounds = q;
  GameOutcome out;
  if (q == 0) return out;
  Solver s(g, h, spec);
  s.gx = gx;
  s.hy = hy;
  if (!s.consistent()) {
    out.winner = Winner::Spoiler;
    return out;
  }
  if (auto strat = s.strategy()) {
    out.winner = Winner::Spoiler;
    out.strategy = std::move(strat);
  }
  return out;
}

bool equivalent_k(const Graph& g, const std::vector<Vertex>& gx, const Graph& h, const std::vector<Vertex>& hy,
                  unsigned k) {
  return solve_prefixed(g, gx, h, hy, k).winner == Winner::Duplicator;
}

namespace {

class Synthesizer {
 public:
  Synthesizer(Solver& s, unsigned q) : s_(s) {
    for (unsigned i = 1; i <= q; ++i) names_.push_back("x" + std::to_string(i));
  }

  // Formula in x1..xm true at (G;gx) and false at (H;hy).
  NodePtr build() {
    const std::size_t m = s_.gx.size();
    const Graph& g = s_.graph(Side::G);
    const Graph& h = s_.graph(Side::H);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (g.adj(s_.gx[i], s_.gx[j]) != h.adj(s_.hy[i], s_.hy[j]))
          return make_atom(g.adj(s_.gx[i], s_.gx[j]) ? Rel::Adj : Rel::NotAdj, static_cast<VarId>(i),
                           static_cast<VarId>(j));
    auto move = s_.find_move();
    if (!move) throw PreconditionError("synthesis reached a position Spoiler does not win");
    bool on_g = move->side == Side::G;
    const VarId x = static_cast<VarId>(m);
    std::vector<NodePtr> kids;
    for (std::size_t l = m; l-- > 0;) kids.push_back(make_atom(on_g ? Rel::NotEq : Rel::Eq, x, static_cast<VarId>(l)));
    std::set<std::string> seen;
    s_.for_each_reply(move->side, move->vertex, [&](Vertex, bool) {
      NodePtr sub = build();
      if (seen.insert(to_string(sub, names_)).second) kids.push_back(sub);
      return true;
    });
    if (kids.empty()) throw PreconditionError("no Duplicator reply and no earlier vertex to guard against");
    NodePtr body = on_g ? make_and(std::move(kids)) : make_or(std::move(kids));
    return make_quant(on_g ? Quant::Exists : Quant::Forall, x, body);
  }

  // Gives every binder its own id; the first binder at depth d keeps the
  // name xd, later ones become xd_2, xd_3, ...
  Formula finish(const NodePtr& root) {
    std::vector<std::string> names;
    std::map<std::string, unsigned> uses;
    std::vector<VarId> current;
    std::function<NodePtr(const NodePtr&)> go = [&](const NodePtr& n) -> NodePtr {
      switch (n->kind) {
        case Kind::Atom:
          return make_atom(n->rel, current.at(n->a), current.at(n->b));
        case Kind::And:
        case Kind::Or: {
          std::vector<NodePtr> kids;
          for (const auto& k : n->kids) kids.push_back(go(k));
          return n->kind == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
        }
        default: {
          const std::string& base = names_.at(n->var);
          unsigned use = ++uses[base];
          names.push_back(use == 1 ? base : base + "_" + std::to_string(use));
          VarId id = static_cast<VarId>(names.size() - 1);
          if (current.size() <= n->var) current.resize(n->var + 1);
          current[n->var] = id;
          return make_quant(quant_of(*n), id, go(n->kids[0]));
        }
      }
    };
    NodePtr r = go(root);
    return Formula(r, names);
  }

 private:
  Solver& s_;
  std::vector<std::string> names_;
};

}  // namespace

std::optional<Formula> synthesize_distinguishing(const Graph& g, const Graph& h, const GameSpec& spec) {
  spec.validate();
  check_orders(g, h, spec.rounds);
  Solver s(g, h, spec);
  if (!s.spoiler_wins()) return std::nullopt;
  Synthesizer syn(s, spec.rounds);
  return syn.finish(syn.build());
}

}  // namespace rgfo
