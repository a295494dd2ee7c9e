#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "rgfo/error.hpp"
#include "rgfo/graph.hpp"
#include "rgfo/randexp.hpp"
#include "support.hpp"

using namespace rgfo;
using testsupport::graph_of;

TEST(Graph, Induced) {
  EXPECT_EQ(induced(complete_graph(4), {0, 1, 2}), complete_graph(3));
  EXPECT_EQ(induced(cycle_graph(5), {}).order(), 0u);
  Graph two = induced(path_graph(3), {0, 2});
  EXPECT_EQ(two.order(), 2u);
  EXPECT_EQ(two.edge_count(), 0u);
}

TEST(Graph, Counts) {
  auto c = count_edges_vertices(complete_graph(4));
  EXPECT_EQ(c.edges, 6u);
  EXPECT_EQ(c.vertices, 4u);
  c = count_edges_vertices(Graph(3));
  EXPECT_EQ(c.edges, 0u);
  EXPECT_EQ(c.vertices, 3u);
  c = count_edges_vertices(cycle_graph(5));
  EXPECT_EQ(c.edges, 5u);
  EXPECT_EQ(c.vertices, 5u);
}

TEST(Graph, InducedCountMatchesMatrixSum) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    Graph g = sample_gnp(70, 0.2, rng);
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < 70; v += 1 + i % 3) vs.push_back(v);
    std::size_t direct = 0;
    for (auto u : vs)
      for (auto v : vs)
        if (u < v && g.adj(u, v)) ++direct;
    EXPECT_EQ(induced(g, vs).edge_count(), direct);
  }
}

TEST(Graph, RejectsLoops) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(1, 1), Error);
}

TEST(Isomorphism, Examples) {
  EXPECT_TRUE(is_isomorphic(complete_graph(3), cycle_graph(3)));
  EXPECT_FALSE(is_isomorphic(complete_graph(3), path_graph(3)));
  EXPECT_FALSE(is_isomorphic(Graph(3), Graph(4)));
}

TEST(Isomorphism, RelabellingAndEquivalence) {
  std::mt19937_64 rng(4);
  std::vector<Graph> sample;
  for (int i = 0; i < 40; ++i) sample.push_back(sample_gnp(5 + i % 3, 0.5, rng));
  for (const auto& g : sample) {
    std::vector<Vertex> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(g.order());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    EXPECT_TRUE(is_isomorphic(g, g));
    EXPECT_TRUE(is_isomorphic(g, h));
    EXPECT_TRUE(is_isomorphic(h, g));
  }
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = 0; j < sample.size(); ++j) {
      EXPECT_EQ(is_isomorphic(sample[i], sample[j]), is_isomorphic(sample[j], sample[i]));
      for (std::size_t k = 0; k < sample.size(); k += 7)
        if (is_isomorphic(sample[i], sample[j]) && is_isomorphic(sample[j], sample[k]))
          EXPECT_TRUE(is_isomorphic(sample[i], sample[k]));
    }
}

TEST(Isomorphism, SmallClassCounts) {
  // Non-isomorphic graphs on 1..5 vertices: 1, 2, 4, 11, 34.
  EXPECT_EQ(testsupport::iso_classes(5, 5).size(), 34u);
  auto reps = testsupport::iso_classes(4, 4);
  ASSERT_EQ(reps.size(), 11u);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) EXPECT_EQ(is_isomorphic(reps[i], reps[j]), i == j);
}

TEST(Embedding, Examples) {
  PatternPair edge{graph_of(2, {{0, 1}}), {0}};
  auto x = find_rooted_embedding(complete_graph(3), {0}, edge, false);
  ASSERT_TRUE(x);
  ASSERT_EQ(x->size(), 1u);
  EXPECT_TRUE((*x)[0] == 1 || (*x)[0] == 2);
  EXPECT_FALSE(find_rooted_embedding(graph_of(3, {{1, 2}}), {0}, edge, false));

  PatternPair common{graph_of(3, {{0, 2}, {1, 2}}), {0, 1}};
  x = find_rooted_embedding(path_graph(3), {0, 2}, common, false);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, std::vector<Vertex>{1});
  EXPECT_THROW(find_rooted_embedding(path_graph(3), {0}, common, false), Error);
}

TEST(Embedding, InducedRespectsNonEdges) {
  // Pattern: two roots and a vertex adjacent to the first only.
  PatternPair pp{graph_of(3, {{0, 2}}), {0, 1}};
  Graph host = complete_graph(3);
  EXPECT_TRUE(find_rooted_embedding(host, {0, 1}, pp, false));
  EXPECT_FALSE(find_rooted_embedding(host, {0, 1}, pp, true));
}

TEST(Embedding, VisitsEveryEmbedding) {
  PatternPair pp{graph_of(3, {{0, 1}, {0, 2}}), {0}};
  std::size_t count = 0;
  for_each_rooted_embedding(complete_graph(5), {0}, pp, false, [&](const std::vector<Vertex>& xs) {
    EXPECT_NE(xs[0], xs[1]);
    ++count;
    return false;
  });
  EXPECT_EQ(count, 12u);
}

TEST(GraphText, RoundTrip) {
  Graph g = graph_of(5, {{0, 1}, {1, 4}, {2, 3}});
  EXPECT_EQ(parse_graph(graph_to_string(g)), g);
  EXPECT_EQ(parse_graph("# comment\nn 3\n0 2  # trailing\n"), graph_of(3, {{0, 2}}));
}

TEST(GraphText, Errors) {
  EXPECT_THROW(parse_graph(""), IoError);
  EXPECT_THROW(parse_graph("n 3\n0 3\n"), IoError);
  EXPECT_THROW(parse_graph("n 3\n1 0\n"), IoError);
  EXPECT_THROW(parse_graph("n 3\n0 1 2\n"), IoError);
  EXPECT_THROW(read_graph_file("/nonexistent/graph.g"), IoError);
}
