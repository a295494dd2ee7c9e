#include <gtest/gtest.h>

#include <random>

#include "rgfo/error.hpp"
#include "rgfo/modelcheck.hpp"
#include "rgfo/randexp.hpp"
#include "rgfo/transform.hpp"
#include "support.hpp"

using namespace rgfo;
using testsupport::oracle_models;

namespace {

std::string letters(const std::vector<Quant>& qs) {
  std::string s;
  for (auto q : qs) s += q == Quant::Exists ? 'E' : 'A';
  return s;
}

// Compares a and b under every assignment of the free variable u.
bool same_truth_everywhere(const Graph& g, const Formula& a, const Formula& b) {
  for (Vertex u = 0; u < g.order(); ++u)
    if (testsupport::oracle_models_at(g, a, {{"u", u}}) != testsupport::oracle_models_at(g, b, {{"u", u}}))
      return false;
  return true;
}

}  // namespace

TEST(MergePrenex, ExistsAndExistsRenamesApart) {
  ParseOptions opts;
  opts.free_vars = {"u"};
  auto f1 = as_prenex(parse("Ex (x ~ u)", opts));
  auto f2 = as_prenex(parse("Ex (x !~ u & x != u)", opts));
  auto m = merge_prenex(f1, f2, Connective::And);
  ASSERT_EQ(m.prefix.size(), 2u);
  EXPECT_EQ(letters(m.quantifiers()), "EE");
  EXPECT_NE(m.prefix[0].var, m.prefix[1].var);
  Formula merged = m.assemble();
  // The two witnesses must be allowed to differ: a vertex with one
  // neighbour and one non-neighbour other than itself.
  Graph g = testsupport::graph_of(3, {{0, 1}});
  EXPECT_TRUE(testsupport::oracle_models_at(g, merged, {{"u", 0}}));
  EXPECT_FALSE(testsupport::oracle_models_at(g, merged, {{"u", 2}}));
}

TEST(MergePrenex, ForallOrForall) {
  ParseOptions opts;
  opts.free_vars = {"u"};
  auto f1 = as_prenex(parse("Ax (x ~ u | x = u)", opts));
  auto f2 = as_prenex(parse("Ay (y !~ u)", opts));
  auto m = merge_prenex(f1, f2, Connective::Or);
  EXPECT_EQ(letters(m.quantifiers()), "AA");
  EXPECT_EQ(m.matrix->kind, Kind::Or);
  Formula orig = parse("(Ax (x ~ u | x = u)) | (Ay (y !~ u))", opts);
  for (const auto& g : testsupport::labelled_graphs(4)) EXPECT_TRUE(same_truth_everywhere(g, orig, m.assemble()));
}

TEST(MergePrenex, EmptyPrefixKeepsOther) {
  ParseOptions opts;
  opts.free_vars = {"u", "v"};
  auto f1 = as_prenex(parse("Ex (x ~ u)", opts));
  auto f2 = as_prenex(parse("u ~ v", opts));
  auto m = merge_prenex(f1, f2, Connective::And);
  EXPECT_EQ(m.prefix, f1.prefix);
  EXPECT_EQ(m.matrix->kind, Kind::And);
}

TEST(MergePrenex, RejectsNonUniformPrefix) {
  ParseOptions opts;
  opts.free_vars = {"u"};
  auto f1 = as_prenex(parse("Ex Ay (x ~ y | y = u)", opts));
  auto f2 = as_prenex(parse("Ex (x ~ u)", opts));
  EXPECT_THROW(merge_prenex(f1, f2, Connective::And), Error);
}

TEST(Pnf, CorpusSentencePrefix) {
  auto p = to_pnf(corpus::get("theorem1"));
  EXPECT_EQ(letters(p.quantifiers()), "EEEEAAEA");
  EXPECT_EQ(metrics(p.assemble()).depth, 8u);
}

TEST(Pnf, AlreadyPrenexKeepsShape) {
  Formula f = parse("Ax Ey Az (x ~ z | y = z)");
  auto p = to_pnf(f);
  EXPECT_EQ(letters(p.quantifiers()), "AEA");
  EXPECT_EQ(metrics(p.assemble()), metrics(f));
}

TEST(Pnf, MixedConjunctionTruthOnAllFourVertexGraphs) {
  Formula f = parse("(Ex Ey (x ~ y)) & (Az Aw (z = w | z ~ w | Eu (u ~ z)))");
  f = normalize(f);
  auto p = to_pnf(f).assemble();
  for (const auto& g : testsupport::labelled_graphs(4)) EXPECT_EQ(oracle_models(g, f), oracle_models(g, p));
}

TEST(Pnf, RejectsNegation) { EXPECT_THROW(to_pnf(parse("!(Ex Ey (x ~ y))")), Error); }

TEST(Nepnf, ExistentialExample) {
  auto ne = to_nepnf(to_pnf(parse("Ex Ey (x ~ y)")));
  EXPECT_EQ(to_string(ne.assemble()), "Ex x Ex y ((y != x) & (x ~ y))");
}

// The input fails on every graph (take y = x). The commonly quoted dual
// Ax Ay ((y = x) | (x ~ y)) holds on K2, so it is not equivalent; the
// construction pairs the y = x guard with the substituted core x ~ x,
// which folds to a contradiction.
TEST(Nepnf, UniversalExampleIsTruthPreserving) {
  Formula f = parse("Ax Ay (x ~ y)");
  Formula ne = to_nepnf(to_pnf(f)).assemble();
  EXPECT_EQ(letters(quantifier_sequence(ne)), "AA");
  Formula quoted = parse("Ax Ay ((y = x) | (x ~ y))");
  Graph k2 = complete_graph(2);
  EXPECT_FALSE(oracle_models(k2, f));
  EXPECT_FALSE(oracle_models(k2, ne));
  EXPECT_TRUE(oracle_models(k2, quoted));
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& g : testsupport::labelled_graphs(n)) EXPECT_EQ(oracle_models(g, f), oracle_models(g, ne));
}

TEST(Nepnf, QuantifierSequencePreserved) {
  for (const auto& text : testsupport::small_corpus()) {
    auto p = to_pnf(normalize(parse(text)));
    auto ne = to_nepnf(p);
    EXPECT_EQ(letters(ne.quantifiers()), letters(p.quantifiers())) << text;
    auto basis = ne_basis(ne);
    EXPECT_EQ(letters(basis.quantifiers), letters(p.quantifiers())) << text;
  }
}

// Agreement on every graph with at least as many vertices as quantifiers,
// for the corpus items where the case split is sound.
TEST(Nepnf, AgreesOnGraphsUpToFiveVertices) {
  auto graphs = testsupport::iso_classes(1, 5);
  const auto& corpus = testsupport::small_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (i == 12) continue;
    Formula f = normalize(parse(corpus[i]));
    auto p = to_pnf(f);
    Formula ne = to_nepnf(p).assemble();
    for (const auto& g : graphs) {
      if (g.order() < p.prefix.size()) continue;
      EXPECT_EQ(oracle_models(g, f), oracle_models(g, ne)) << corpus[i] << " on " << graph_to_string(g);
    }
  }
}

// The case split re-uses the later quantifiers across the disjuncts
// x_j = x_i, which distributes a quantifier over a connective. For this
// sentence it changes the truth value on K4 minus an edge, where no vertex
// z has all its neighbours inside {x}.
TEST(Nepnf, CaseSplitCounterexample) {
  Formula f = normalize(parse(testsupport::small_corpus()[12]));
  Formula ne = to_nepnf(to_pnf(f)).assemble();
  Graph g = testsupport::graph_of(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_FALSE(oracle_models(g, f));
  EXPECT_TRUE(oracle_models(g, ne));
}

TEST(Nepnf, QuantifierCap) {
  std::string text;
  std::string body;
  for (std::size_t i = 0; i <= kMaxNepnfQuantifiers; ++i) {
    text += "Ex v" + std::to_string(i) + " ";
    if (i) body += (i > 1 ? " & " : "") + std::string("v0 != v") + std::to_string(i);
  }
  EXPECT_THROW(to_nepnf(to_pnf(parse(text + "(" + body + ")"))), LimitError);
}

TEST(Mu, PathIsZero) {
  NestingForest t;
  t.nodes = {{Quant::Exists, std::nullopt, {1}}, {Quant::Forall, 0, {2}}, {Quant::Exists, 1, {}}};
  t.roots = {0};
  EXPECT_EQ(mu_measure(t), 0u);
}

TEST(Mu, RootWithTwoChildren) {
  NestingForest t;
  t.nodes = {{Quant::Exists, std::nullopt, {1, 2}}, {Quant::Exists, 0, {}}, {Quant::Forall, 0, {}}};
  t.roots = {0};
  EXPECT_EQ(mu_measure(t), 1u);
}

TEST(Mu, StarWithThreeChildren) {
  NestingForest t;
  t.nodes = {{Quant::Exists, std::nullopt, {1, 2, 3}},
             {Quant::Exists, 0, {}},
             {Quant::Forall, 0, {}},
             {Quant::Forall, 0, {}}};
  t.roots = {0};
  EXPECT_EQ(mu_measure(t), 1u);
}

TEST(Mu, BranchDeepInTree) {
  NestingForest t = nesting_forest(parse("Ex Ay ((Ez (z ~ x)) | (Aw (w ~ y)))"));
  EXPECT_EQ(mu_measure(t), 1u);
  t = nesting_forest(parse("Ex ((Ay Az (y ~ z | y = x)) | (Aw (w ~ x)))"));
  EXPECT_EQ(mu_measure(t), 2u);
}

TEST(Mu, RejectsForest) {
  NestingForest t;
  t.nodes = {{Quant::Exists, std::nullopt, {}}, {Quant::Forall, std::nullopt, {}}};
  t.roots = {0, 1};
  EXPECT_THROW(mu_measure(t), Error);
}

TEST(AltPnf, CorpusSentenceKeepsThreeAlternations) {
  Formula f = corpus::get("theorem1");
  auto r = to_pnf_alternation_preserving_traced(f);
  Formula out = r.result.assemble();
  EXPECT_EQ(metrics(out).alternations, 3u);
  ASSERT_FALSE(r.mu_trace.empty());
  EXPECT_EQ(r.mu_trace.back(), 0u);
  for (std::size_t i = 1; i < r.mu_trace.size(); ++i) EXPECT_LT(r.mu_trace[i], r.mu_trace[i - 1]);
  std::mt19937_64 rng(404);
  for (int i = 0; i < 30; ++i) {
    Graph g = sample_gnp(6 + i % 4, 0.5, rng);
    EXPECT_EQ(models(g, f), oracle_models(g, out));
  }
}

TEST(AltPnf, AlreadyPrenexUnchangedMetrics) {
  Formula f = parse("Ex Ay Ez (x ~ y | y = z)");
  EXPECT_EQ(metrics(to_pnf_alternation_preserving(f).assemble()), metrics(f));
}

TEST(AltPnf, TwoExistentialBranches) {
  Formula f = parse("Ex ((Ey (x ~ y)) & (Ez (x !~ z & x != z)))");
  Formula out = to_pnf_alternation_preserving(f).assemble();
  EXPECT_EQ(letters(quantifier_sequence(out)), "EEE");
  EXPECT_EQ(metrics(out).alternations, 0u);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& g : testsupport::labelled_graphs(n)) EXPECT_EQ(oracle_models(g, f), oracle_models(g, out));
}

TEST(AltPnf, CorpusAlternationsAndTruth) {
  auto graphs = testsupport::iso_classes(1, 5);
  for (const auto& text : testsupport::small_corpus()) {
    Formula f = normalize(parse(text));
    Formula out = to_pnf_alternation_preserving(f).assemble();
    EXPECT_EQ(metrics(out).alternations, metrics(f).alternations) << text;
    for (const auto& g : graphs) EXPECT_EQ(oracle_models(g, f), oracle_models(g, out)) << text;
  }
}

TEST(AltPnf, RejectsQuantifierFree) {
  ParseOptions opts;
  opts.free_vars = {"x", "y"};
  EXPECT_THROW(to_pnf_alternation_preserving(parse("x ~ y", opts)), Error);
}
