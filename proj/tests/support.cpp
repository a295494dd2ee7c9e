#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace testsupport {

using rgfo::Graph;
using rgfo::Kind;
using rgfo::Node;
using rgfo::Rel;
using rgfo::Vertex;

namespace {

bool eval(const Graph& g, const Node& n, std::vector<Vertex>& env) {
  switch (n.kind) {
    case Kind::Atom: {
      Vertex u = env.at(n.a), v = env.at(n.b);
      switch (n.rel) {
        case Rel::Adj: return u != v && g.adj(u, v);
        case Rel::NotAdj: return u == v || !g.adj(u, v);
        case Rel::Eq: return u == v;
        case Rel::NotEq: return u != v;
      }
      return false;
    }
    case Kind::And:
      for (const auto& k : n.kids)
        if (!eval(g, *k, env)) return false;
      return true;
    case Kind::Or:
      for (const auto& k : n.kids)
        if (eval(g, *k, env)) return true;
      return false;
    case Kind::Not:
      return !eval(g, *n.kids[0], env);
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Exists:
    case Kind::Forall: {
      bool exists = n.kind == Kind::Exists;
      Vertex saved = env.at(n.var);
      bool result = !exists;
      for (Vertex v = 0; v < g.order(); ++v) {
        env[n.var] = v;
        if (eval(g, *n.kids[0], env) == exists) {
          result = exists;
          break;
        }
      }
      env[n.var] = saved;
      return result;
    }
  }
  throw std::logic_error("unknown node");
}

}  // namespace

bool oracle_models(const Graph& g, const rgfo::Formula& f) {
  std::vector<Vertex> env(f.var_count(), 0);
  return eval(g, *f.root(), env);
}

bool oracle_models_at(const Graph& g, const rgfo::Formula& f, const std::map<std::string, Vertex>& binding) {
  std::vector<Vertex> env(f.var_count(), 0);
  for (rgfo::VarId v : f.free_vars()) env[v] = binding.at(f.name(v));
  return eval(g, *f.root(), env);
}

std::vector<Graph> labelled_graphs(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    Graph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1u) g.add_edge(pairs[i].first, pairs[i].second);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Graph> iso_classes(std::size_t lo, std::size_t hi) {
  std::vector<Graph> out;
  for (std::size_t n = lo; n <= hi; ++n) {
    std::set<std::uint64_t> seen;
    for (const Graph& g : labelled_graphs(n)) {
      std::vector<Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::uint64_t best = ~std::uint64_t{0};
      do {
        std::uint64_t mask = 0;
        std::size_t bit = 0;
        for (Vertex u = 0; u < n; ++u)
          for (Vertex v = u + 1; v < n; ++v, ++bit)
            if (g.adj(perm[u], perm[v])) mask |= std::uint64_t{1} << bit;
        best = std::min(best, mask);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (seen.insert(best).second) out.push_back(g);
    }
  }
  return out;
}

const std::vector<std::string>& small_corpus() {
  static const std::vector<std::string> corpus = {
      "Ex x Ey (x ~ y)",
      "Ax x Ey (x ~ y)",
      "Ex x Ay (x = y | x ~ y)",
      "Ax x Ay (x = y | x !~ y)",
      "Ax x (Ey (x ~ y) -> Ez Ew (x ~ z & z ~ w & w != x))",
      "!(Ex x Ey Ez (x ~ y & y ~ z & x ~ z))",
      "Ex x (Ay (y = x | x ~ y) | Az (x !~ z))",
      "Ax x Ay (x ~ y -> Ez (z ~ x & z ~ y))",
      "Ex x Ey (x != y & Az (z ~ x <-> z ~ y))",
      "Ax x (Ey (x ~ y) | Ez (x != z & Aw (w = z | w ~ z)))",
      "Ex x Ey Ez Ew (x ~ y & y ~ z & z ~ w & w ~ x & x !~ z & y !~ w)",
      "Ax x Ay Az ((x ~ y & y ~ z) -> (x ~ z | x = z))",
      "Ex x (Ay (x ~ y | x = y) & Ez (z != x & Aw (w ~ z -> w = x)))",
      "Ax x (Ey (x ~ y) & Ez (x != z & x !~ z))",
      "Ex x Ay (x = y | Ez (z ~ y & z != x))",
      "!(Ax x Ay (x = y | x ~ y))",
      "Ex x Ey (x ~ y & Az (z = x | z = y | (z !~ x & z !~ y)))",
      "Ax x (Ey (y ~ x & Az (z ~ x -> z = y)) | Aw (w !~ x))",
      "Ex x Ay Ez Aw ((x ~ y | x = y) & (z ~ w | z = w | y ~ w))",
      "Ax x (Ey (x ~ y & Ez (z ~ y & z != x)) | Ew (w != x & w !~ x))",
  };
  return corpus;
}

Graph graph_of(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) { return Graph(n, edges); }

}  // namespace testsupport
