#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace rgfo {

using Vertex = std::uint32_t;

// Finite simple undirected graph on 0..n-1, stored as adjacency bitsets.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges);

  std::size_t order() const { return n_; }
  std::size_t words() const { return words_; }

  bool adj(Vertex u, Vertex v) const {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  const std::uint64_t* row(Vertex u) const { return rows_.data() + u * words_; }
  std::size_t degree(Vertex u) const;
  std::size_t edge_count() const;
  std::vector<Vertex> neighbors(Vertex u) const;
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);

// Induced subgraph, vertices relabelled 0..|vs|-1 in the given order.
Graph induced(const Graph& g, const std::vector<Vertex>& vs);

struct Counts {
  std::size_t edges;
  std::size_t vertices;
};
Counts count_edges_vertices(const Graph& g);

bool is_isomorphic(const Graph& g, const Graph& h);

// Pattern graph with an ordered list of root vertices spanning H.
struct PatternPair {
  Graph pattern;
  std::vector<Vertex> roots;

  std::vector<Vertex> extension_vertices() const;
  void validate() const;
};

// Maps the non-root pattern vertices (in increasing order) to distinct host
// vertices outside `anchors`. Without `induced_copy` a pattern edge only
// needs to be present in the host; with it, non-edges must be preserved too.
std::optional<std::vector<Vertex>> find_rooted_embedding(const Graph& host, const std::vector<Vertex>& anchors,
                                                         const PatternPair& pp, bool induced_copy);

// Calls `visit` for every such embedding until it returns true.
void for_each_rooted_embedding(const Graph& host, const std::vector<Vertex>& anchors, const PatternPair& pp,
                               bool induced_copy, const std::function<bool(const std::vector<Vertex>&)>& visit);

Graph read_graph(std::istream& in);
Graph parse_graph(const std::string& text);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
std::string graph_to_string(const Graph& g);

}  // namespace rgfo
