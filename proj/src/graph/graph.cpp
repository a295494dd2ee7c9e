#include "rgfo/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "rgfo/error.hpp"

namespace rgfo {

Graph::Graph(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * ((n + 63) / 64), 0) {}

Graph::Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) throw PreconditionError("edge endpoint out of range");
  if (u == v) throw PreconditionError("self-loop in simple graph");
  rows_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
}

void Graph::remove_edge(Vertex u, Vertex v) {
  rows_[u * words_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
  rows_[v * words_ + (u >> 6)] &= ~(std::uint64_t{1} << (u & 63));
}

std::size_t Graph::degree(Vertex u) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(rows_[u * words_ + w]);
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (auto w : rows_) total += std::popcount(w);
  return total / 2;
}

std::vector<Vertex> Graph::neighbors(Vertex u) const {
  std::vector<Vertex> out;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = rows_[u * words_ + w];
    while (bits) {
      out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) g.add_edge(u, static_cast<Vertex>((u + 1) % n));
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

Graph induced(const Graph& g, const std::vector<Vertex>& vs) {
  std::vector<bool> seen(g.order(), false);
  for (Vertex v : vs) {
    if (v >= g.order()) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    if (seen[v]) throw PreconditionError("duplicate vertex " + std::to_string(v));
    seen[v] = true;
  }
  Graph out(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.adj(vs[i], vs[j])) out.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return out;
}

Counts count_edges_vertices(const Graph& g) { return {g.edge_count(), g.order()}; }

namespace {

bool iso_extend(const Graph& g, const Graph& h, const std::vector<Vertex>& order, std::size_t k,
                std::vector<Vertex>& map, std::vector<bool>& used, const std::vector<std::size_t>& dg,
                const std::vector<std::size_t>& dh) {
  if (k == order.size()) return true;
  Vertex v = order[k];
  for (Vertex w = 0; w < h.order(); ++w) {
    if (used[w] || dh[w] != dg[v]) continue;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = g.adj(order[i], v) == h.adj(map[order[i]], w);
    if (!ok) continue;
    map[v] = w;
    used[w] = true;
    if (iso_extend(g, h, order, k + 1, map, used, dg, dh)) return true;
    used[w] = false;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.edge_count() != h.edge_count()) return false;
  std::size_t n = g.order();
  std::vector<std::size_t> dg(n), dh(n);
  for (Vertex v = 0; v < n; ++v) {
    dg[v] = g.degree(v);
    dh[v] = h.degree(v);
  }
  auto sg = dg, sh = dh;
  std::sort(sg.begin(), sg.end());
  std::sort(sh.begin(), sh.end());
  if (sg != sh) return false;
  // Visit vertices so that each one (after the first of its component) has
  // an already-placed neighbour, preferring high degree.
  std::vector<Vertex> order;
  std::vector<bool> placed(n, false);
  while (order.size() < n) {
    Vertex best = 0;
    long best_score = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (placed[v]) continue;
      long links = 0;
      for (Vertex u : order) links += g.adj(u, v);
      long score = links * 1000 + static_cast<long>(dg[v]);
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }
  std::vector<Vertex> map(n);
  std::vector<bool> used(n, false);
  return iso_extend(g, h, order, 0, map, used, dg, dh);
}

std::vector<Vertex> PatternPair::extension_vertices() const {
  std::vector<bool> is_root(pattern.order(), false);
  for (Vertex r : roots) is_root[r] = true;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < pattern.order(); ++v)
    if (!is_root[v]) out.push_back(v);
  return out;
}

void PatternPair::validate() const {
  std::vector<bool> seen(pattern.order(), false);
  for (Vertex r : roots) {
    if (r >= pattern.order()) throw PreconditionError("pattern root out of range");
    if (seen[r]) throw PreconditionError("duplicate pattern root");
    seen[r] = true;
  }
}

namespace {

struct Embedder {
  const Graph& host;
  const Graph& pat;
  bool induced_copy;
  const std::function<bool(const std::vector<std::int64_t>&)>& visit;
  std::vector<Vertex> order;          // pattern vertices to place
  std::vector<std::int64_t> image;    // pattern vertex -> host vertex or -1
  std::vector<std::uint64_t> blocked; // host vertices already used

  // Returns true when the visitor asked to stop.
  bool place(std::size_t k) {
    if (k == order.size()) return visit(image);
    Vertex pv = order[k];
    std::size_t W = host.words();
    std::vector<std::uint64_t> cand(W, ~std::uint64_t{0});
    if (W && host.order() % 64) cand[W - 1] = (std::uint64_t{1} << (host.order() % 64)) - 1;
    for (std::size_t w = 0; w < W; ++w) cand[w] &= ~blocked[w];
    for (Vertex q = 0; q < pat.order(); ++q) {
      if (image[q] < 0) continue;
      const std::uint64_t* r = host.row(static_cast<Vertex>(image[q]));
      if (pat.adj(pv, q)) {
        for (std::size_t w = 0; w < W; ++w) cand[w] &= r[w];
      } else if (induced_copy) {
        for (std::size_t w = 0; w < W; ++w) cand[w] &= ~r[w];
      }
    }
    for (std::size_t w = 0; w < W; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        Vertex hv = static_cast<Vertex>(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
        image[pv] = hv;
        blocked[hv >> 6] |= std::uint64_t{1} << (hv & 63);
        bool stop = place(k + 1);
        blocked[hv >> 6] &= ~(std::uint64_t{1} << (hv & 63));
        image[pv] = -1;
        if (stop) return true;
      }
    }
    return false;
  }
};

}  // namespace

void for_each_rooted_embedding(const Graph& host, const std::vector<Vertex>& anchors, const PatternPair& pp,
                               bool induced_copy, const std::function<bool(const std::vector<Vertex>&)>& visit) {
  pp.validate();
  if (anchors.size() != pp.roots.size()) throw PreconditionError("anchor count does not match pattern roots");
  std::vector<bool> seen(host.order(), false);
  for (Vertex a : anchors) {
    if (a >= host.order()) throw PreconditionError("anchor out of range");
    if (seen[a]) throw PreconditionError("anchors must be distinct");
    seen[a] = true;
  }
  const Graph& pat = pp.pattern;
  for (std::size_t i = 0; i < pp.roots.size(); ++i)
    for (std::size_t j = i + 1; j < pp.roots.size(); ++j)
      if (induced_copy && pat.adj(pp.roots[i], pp.roots[j]) != host.adj(anchors[i], anchors[j])) return;
  std::vector<Vertex> ext = pp.extension_vertices();
  std::vector<Vertex> out(ext.size());
  std::function<bool(const std::vector<std::int64_t>&)> adapter = [&](const std::vector<std::int64_t>& image) {
    for (std::size_t i = 0; i < ext.size(); ++i) out[i] = static_cast<Vertex>(image[ext[i]]);
    return visit(out);
  };
  Embedder e{host, pat, induced_copy, adapter, {}, std::vector<std::int64_t>(pat.order(), -1),
             std::vector<std::uint64_t>(host.words(), 0)};
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    e.image[pp.roots[i]] = anchors[i];
    e.blocked[anchors[i] >> 6] |= std::uint64_t{1} << (anchors[i] & 63);
  }
  // Place extension vertices with the most already-placed neighbours first.
  std::vector<bool> placed(pat.order(), false);
  for (Vertex r : pp.roots) placed[r] = true;
  while (e.order.size() < ext.size()) {
    Vertex best = 0;
    long best_score = -1;
    for (Vertex v : ext) {
      if (placed[v]) continue;
      long links = 0;
      for (Vertex u = 0; u < pat.order(); ++u) links += placed[u] && pat.adj(u, v);
      long score = links * 1000 + static_cast<long>(pat.degree(v));
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    placed[best] = true;
    e.order.push_back(best);
  }
  e.place(0);
}

std::optional<std::vector<Vertex>> find_rooted_embedding(const Graph& host, const std::vector<Vertex>& anchors,
                                                         const PatternPair& pp, bool induced_copy) {
  std::optional<std::vector<Vertex>> found;
  for_each_rooted_embedding(host, anchors, pp, induced_copy, [&](const std::vector<Vertex>& xs) {
    found = xs;
    return true;
  });
  return found;
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<Graph> g;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto bad = [&](const std::string& what) {
      return IoError("graph line " + std::to_string(lineno) + ": " + what);
    };
    if (!g) {
      long long n;
      if (first != "n" || !(ls >> n) || n < 0) throw bad("expected 'n <count>'");
      std::string extra;
      if (ls >> extra) throw bad("trailing text");
      g.emplace(static_cast<std::size_t>(n));
      continue;
    }
    long long u, v;
    try {
      std::size_t used = 0;
      u = std::stoll(first, &used);
      if (used != first.size()) throw bad("bad vertex '" + first + "'");
    } catch (const std::logic_error&) {
      throw bad("bad vertex '" + first + "'");
    }
    std::string extra;
    if (!(ls >> v) || (ls >> extra)) throw bad("expected 'u v'");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= g->order() || static_cast<std::size_t>(v) >= g->order())
      throw bad("vertex out of range");
    if (u >= v) throw bad("edge must satisfy u < v");
    g->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (!g) throw IoError("graph input is missing the 'n <count>' header");
  return *g;
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "n " << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string graph_to_string(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace rgfo
