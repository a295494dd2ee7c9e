#include <algorithm>
#include <bit>
#include <functional>

#include "rgfo/error.hpp"
#include "rgfo/modelcheck.hpp"

namespace rgfo {
namespace {

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.order()) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
}

std::vector<std::uint64_t> row_and(const Graph& g, Vertex a, Vertex b) {
  std::vector<std::uint64_t> out(g.words());
  for (std::size_t w = 0; w < g.words(); ++w) out[w] = g.row(a)[w] & g.row(b)[w];
  return out;
}

std::vector<Vertex> bits_to_vertices(const std::vector<std::uint64_t>& bits) {
  std::vector<Vertex> out;
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t b = bits[w];
    while (b) {
      out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(b)));
      b &= b - 1;
    }
  }
  return out;
}

// Ordered tuples of distinct vertices of length k; `visit` returns true to stop.
bool for_each_tuple(std::size_t n, std::size_t k, std::vector<Vertex>& tuple, std::vector<bool>& used,
                    const std::function<bool(const std::vector<Vertex>&)>& visit) {
  if (tuple.size() == k) return visit(tuple);
  for (Vertex v = 0; v < n; ++v) {
    if (used[v]) continue;
    used[v] = true;
    tuple.push_back(v);
    bool stop = for_each_tuple(n, k, tuple, used, visit);
    tuple.pop_back();
    used[v] = false;
    if (stop) return true;
  }
  return false;
}

bool for_each_tuple(std::size_t n, std::size_t k, const std::function<bool(const std::vector<Vertex>&)>& visit) {
  std::vector<Vertex> tuple;
  std::vector<bool> used(n, false);
  return for_each_tuple(n, k, tuple, used, visit);
}

}  // namespace

NeighborStats common_neighbor_stats(const Graph& g, Vertex x1, Vertex x2) {
  check_vertex(g, x1);
  check_vertex(g, x2);
  if (x1 == x2) throw PreconditionError("common_neighbor_stats needs two distinct vertices");
  NeighborStats s;
  auto common = row_and(g, x1, x2);
  s.common = bits_to_vertices(common);
  for (std::size_t i = 0; i < s.common.size(); ++i) {
    Vertex x3 = s.common[i];
    bool any = false;
    for (std::size_t w = 0; w < g.words() && !any; ++w) any = (common[w] & g.row(x3)[w]) != 0;
    if (!any) s.childless.push_back(x3);
    for (std::size_t j = i + 1; j < s.common.size(); ++j) s.adjacent_pairs += g.adj(x3, s.common[j]);
  }
  return s;
}

TripleType triple_type(const Graph& g, Vertex x1, Vertex x2, Vertex x3) {
  check_vertex(g, x1);
  check_vertex(g, x2);
  check_vertex(g, x3);
  if (x1 == x2 || x1 == x3 || x2 == x3) throw PreconditionError("triple_type needs three distinct vertices");
  auto witness = [&](Vertex a, Vertex c, Vertex excluded) {
    for (std::size_t w = 0; w < g.words(); ++w) {
      std::uint64_t bits = g.row(a)[w] & g.row(c)[w] & ~g.row(excluded)[w];
      for (Vertex skip : {x1, x2, x3})
        if ((skip >> 6) == w) bits &= ~(std::uint64_t{1} << (skip & 63));
      if (bits) return true;
    }
    return false;
  };
  return {witness(x1, x3, x2), witness(x2, x3, x1)};
}

bool has_extension_property(const Graph& host, const PatternPair& pp) {
  pp.validate();
  if (pp.roots.empty() || pp.roots.size() == pp.pattern.order())
    throw PreconditionError("extension property needs at least one root and one extension vertex");
  bool failed = for_each_tuple(host.order(), pp.roots.size(), [&](const std::vector<Vertex>& ys) {
    return !find_rooted_embedding(host, ys, pp, false).has_value();
  });
  return !failed;
}

void validate_triple_family(const std::vector<TriplePattern>& family) {
  if (family.empty()) return;
  const TriplePattern& first = family.front();
  for (const auto& tp : family) {
    const Graph& w = tp.outer;
    std::vector<bool> in_mid(w.order(), false);
    for (Vertex v : tp.mid) {
      if (v >= w.order() || in_mid[v]) throw PreconditionError("triple pattern: bad middle root list");
      in_mid[v] = true;
    }
    if (tp.inner.size() > tp.mid.size() || !std::equal(tp.inner.begin(), tp.inner.end(), tp.mid.begin()))
      throw PreconditionError("triple pattern: inner roots must be a prefix of the middle roots");
    if (tp.mid.size() == tp.inner.size()) throw PreconditionError("triple pattern: middle layer adds no vertex");
    if (tp.mid.size() == w.order()) throw PreconditionError("triple pattern: outer layer adds no vertex");
    if (tp.mid.size() != first.mid.size() || tp.inner.size() != first.inner.size())
      throw PreconditionError("triple patterns must share their middle and inner layers");
    for (std::size_t i = 0; i < tp.mid.size(); ++i)
      for (std::size_t j = i + 1; j < tp.mid.size(); ++j)
        if (w.adj(tp.mid[i], tp.mid[j]) != first.outer.adj(first.mid[i], first.mid[j]))
          throw PreconditionError("triple patterns must share their middle and inner layers");
    // Every component of the outer layer must touch the middle extension vertices.
    std::vector<Vertex> outer;
    for (Vertex v = 0; v < w.order(); ++v)
      if (!in_mid[v]) outer.push_back(v);
    std::vector<int> comp(w.order(), -1);
    for (Vertex s : outer) {
      if (comp[s] >= 0) continue;
      std::vector<Vertex> stack{s}, members;
      comp[s] = static_cast<int>(s);
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        members.push_back(v);
        for (Vertex u : w.neighbors(v))
          if (!in_mid[u] && comp[u] < 0) {
            comp[u] = static_cast<int>(s);
            stack.push_back(u);
          }
      }
      bool touches = false;
      for (Vertex v : members)
        for (std::size_t j = tp.inner.size(); j < tp.mid.size(); ++j) touches = touches || w.adj(v, tp.mid[j]);
      if (!touches)
        throw PreconditionError("triple pattern: an outer component has no edge to the middle extension vertices");
    }
  }
}

bool has_double_extension_property(const Graph& host, const std::vector<TriplePattern>& family) {
  validate_triple_family(family);
  if (family.empty()) throw PreconditionError("double extension needs a nonempty pattern family");
  const TriplePattern& base = family.front();
  const std::size_t s = base.inner.size();
  const std::size_t m = base.mid.size() - s;
  const std::size_t n = host.order();
  const Graph& w0 = base.outer;

  struct Outer {
    const TriplePattern* tp;
    std::vector<Vertex> c;  // z-pattern vertices in increasing order
  };
  std::vector<Outer> outers;
  for (const auto& tp : family) {
    std::vector<bool> in_mid(tp.outer.order(), false);
    for (Vertex v : tp.mid) in_mid[v] = true;
    Outer o{&tp, {}};
    for (Vertex v = 0; v < tp.outer.order(); ++v)
      if (!in_mid[v]) o.c.push_back(v);
    outers.push_back(std::move(o));
  }

  auto escapes = [&](const Outer& o, const std::vector<Vertex>& ys, const std::vector<Vertex>& xs,
                     const std::vector<Vertex>& zs) {
    const Graph& w = o.tp->outer;
    for (std::size_t h = 0; h < zs.size(); ++h) {
      for (std::size_t i = 0; i < s; ++i)
        if (zs[h] == ys[i] || (!host.adj(zs[h], ys[i]) && w.adj(o.c[h], o.tp->mid[i]))) return true;
      for (std::size_t j = 0; j < m; ++j)
        if (zs[h] == xs[j] || (!host.adj(zs[h], xs[j]) && w.adj(o.c[h], o.tp->mid[s + j]))) return true;
    }
    return false;
  };

  bool failed = for_each_tuple(n, s, [&](const std::vector<Vertex>& ys) {
    std::vector<bool> is_y(n, false);
    for (Vertex y : ys) is_y[y] = true;
    bool found = false;
    // x-tuples range over distinct vertices different from every y.
    std::vector<Vertex> xs;
    std::vector<bool> used = is_y;
    std::function<bool()> choose = [&]() -> bool {
      if (xs.size() == m) {
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = 0; j < m; ++j)
            if (w0.adj(base.mid[i], base.mid[s + j]) && !host.adj(ys[i], xs[j])) return false;
        for (const auto& o : outers) {
          bool bad = for_each_tuple(n, o.c.size(), [&](const std::vector<Vertex>& zs) {
            return !escapes(o, ys, xs, zs);
          });
          if (bad) return false;
        }
        return true;
      }
      for (Vertex v = 0; v < n; ++v) {
        if (used[v]) continue;
        used[v] = true;
        xs.push_back(v);
        bool ok = choose();
        xs.pop_back();
        used[v] = false;
        if (ok) return true;
      }
      return false;
    };
    found = choose();
    return !found;
  });
  return !failed;
}

std::optional<std::vector<Vertex>> find_generic_extension(const Graph& host, const std::vector<Vertex>& anchors,
                                                          const PatternPair& pp, unsigned t,
                                                          const Rational& alpha) {
  pp.validate();
  if (anchors.size() != pp.roots.size()) throw PreconditionError("anchor count does not match pattern roots");
  if (!is_safe(pp, alpha)) throw PreconditionError("generic extension needs an alpha-safe pattern pair");
  std::optional<std::vector<Vertex>> result;
  for_each_rooted_embedding(host, anchors, pp, true, [&](const std::vector<Vertex>& ys) {
    if (t == 0) {
      result = ys;
      return true;
    }
    std::vector<bool> current(host.order(), false), is_y(host.order(), false);
    for (Vertex a : anchors) current[a] = true;
    for (Vertex y : ys) current[y] = is_y[y] = true;
    // A rigid z-tuple touching a y exists iff a connected one does, since
    // every component of a rigid step is a rigid step.
    for (const auto& zs : rigid_step_candidates(host, current, t, alpha)) {
      bool touches = false;
      for (Vertex z : zs)
        for (Vertex y : ys) touches = touches || host.adj(z, y);
      if (touches && is_rigid_step(host, current, zs, alpha)) return false;
    }
    result = ys;
    return true;
  });
  return result;
}

namespace {

struct PairInfo {
  bool adjacent = false;
  bool admissible = false;  // n <= 1 and no K4 through the pair
  std::size_t n = 0;
  std::size_t u = 0;
  // Bit k set when some x3 of the corresponding set has triple type rank k.
  unsigned u_types = 0;
  unsigned rest_types = 0;
};

}  // namespace

Case1Result case1_properties(const Graph& g, unsigned m_cap) {
  const std::size_t n = g.order();
  Case1Result res;
  std::vector<std::vector<PairInfo>> info(n, std::vector<PairInfo>(n));
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) {
      if (a == b) continue;
      PairInfo& pi = info[a][b];
      NeighborStats st = common_neighbor_stats(g, a, b);
      pi.adjacent = g.adj(a, b);
      pi.n = st.adjacent_pairs;
      pi.u = st.childless.size();
      bool k4 = pi.adjacent && st.adjacent_pairs > 0;
      pi.admissible = pi.n <= 1 && !k4;
      for (Vertex x3 : st.common) {
        unsigned bit = 1u << triple_type(g, a, b, x3).rank();
        bool childless = std::find(st.childless.begin(), st.childless.end(), x3) != st.childless.end();
        (childless ? pi.u_types : pi.rest_types) |= bit;
      }
    }

  // Triangle property: every (s, x, y, delta) must be met for every x1.
  res.triangle = true;
  for (Vertex x1 = 0; x1 < n && res.triangle; ++x1) {
    // covered[s][x][y][delta]
    bool covered[3][4][4][2] = {};
    for (Vertex x2 = 0; x2 < n; ++x2) {
      if (x2 == x1) continue;
      const PairInfo& pi = info[x1][x2];
      if (!pi.admissible) continue;
      int delta = pi.adjacent ? 0 : 1;
      for (int s = 0; s < 3; ++s) {
        std::size_t want = pi.n == 1 ? std::min(s, 1) : static_cast<std::size_t>(s);
        if (pi.u != want) continue;
        for (int x = 0; x < 4; ++x) {
          if (pi.u_types & ~(1u << x)) continue;
          for (int y = 0; y < 4; ++y) {
            if (pi.rest_types & ~(1u << y)) continue;
            covered[s][x][y][delta] = true;
          }
        }
      }
    }
    for (int s = 0; s < 3; ++s)
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          for (int d = 0; d < 2; ++d)
            if (!covered[s][x][y][d]) res.triangle = false;
  }

  // Sparse extension property, checked for tuple sizes up to m_cap.
  const std::size_t W = g.words();
  std::vector<std::vector<std::uint64_t>> apart(n, std::vector<std::uint64_t>(W, 0));
  for (Vertex v = 0; v < n; ++v)
    for (Vertex z = 0; z < n; ++z) {
      if (z == v) continue;
      bool share = false;
      for (std::size_t w = 0; w < W && !share; ++w) share = (g.row(v)[w] & g.row(z)[w]) != 0;
      if (!share) apart[v][z >> 6] |= std::uint64_t{1} << (z & 63);
    }
  std::vector<std::uint64_t> all(W, ~std::uint64_t{0});
  if (W && n % 64) all[W - 1] = (std::uint64_t{1} << (n % 64)) - 1;
  res.sparse_extension = true;
  res.sparse_extension_complete = m_cap >= n;
  std::size_t max_m = std::min<std::size_t>(m_cap, n);
  // z2-candidates and z1-candidates (before the N(v1) restriction) over the
  // rest of the tuple, grown as a combination.
  std::function<bool(Vertex, std::size_t, Vertex, std::vector<std::uint64_t>, std::vector<std::uint64_t>)> rest;
  rest = [&](Vertex v1, std::size_t remaining, Vertex next, std::vector<std::uint64_t> z1,
             std::vector<std::uint64_t> z2) -> bool {
    bool z1_any = false, z2_any = false;
    for (std::size_t w = 0; w < W; ++w) {
      z1_any = z1_any || z1[w];
      z2_any = z2_any || z2[w];
    }
    if (!z1_any || !z2_any) return false;
    if (remaining == 0) return true;
    for (Vertex v = next; v < n; ++v) {
      if (v == v1) continue;
      auto a = z1, b = z2;
      for (std::size_t w = 0; w < W; ++w) {
        a[w] &= ~g.row(v)[w] & apart[v][w];
        b[w] &= ~g.row(v)[w] & apart[v][w];
      }
      if (!rest(v1, remaining - 1, v + 1, std::move(a), std::move(b))) return false;
    }
    return true;
  };
  for (Vertex v1 = 0; v1 < n && res.sparse_extension; ++v1) {
    std::vector<std::uint64_t> z1(W), z2(W);
    for (std::size_t w = 0; w < W; ++w) {
      z1[w] = g.row(v1)[w] & apart[v1][w];
      z2[w] = ~g.row(v1)[w] & apart[v1][w] & all[w];
    }
    for (std::size_t m = 1; m <= max_m && res.sparse_extension; ++m)
      if (!rest(v1, m - 1, 0, z1, z2)) res.sparse_extension = false;
  }

  // Sparse subgraph property.
  res.sparse_subgraph = false;
  for (Vertex x1 = 0; x1 < n && !res.sparse_subgraph; ++x1) {
    bool ok = true;
    for (Vertex x2 = 0; x2 < n && ok; ++x2) {
      if (x2 == x1) continue;
      const PairInfo& pi = info[x1][x2];
      if (pi.n > 1) ok = false;
      if (pi.adjacent && pi.n > 0) ok = false;  // K4 through x1 and x2
    }
    res.sparse_subgraph = ok;
  }
  return res;
}

}  // namespace rgfo
