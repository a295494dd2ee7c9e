#include <gtest/gtest.h>

#include "rgfo/error.hpp"
#include "rgfo/formula.hpp"
#include "rgfo/modelcheck.hpp"
#include "support.hpp"

using namespace rgfo;

namespace {

bool has_self_atom(const Node& n) {
  if (n.kind == Kind::Atom) return n.a == n.b;
  for (const auto& k : n.kids)
    if (has_self_atom(*k)) return true;
  return false;
}

}  // namespace

TEST(Parse, NestedExistentials) {
  Formula f = parse("Ex Ey (x ~ y)");
  const Node& r = *f.root();
  ASSERT_EQ(r.kind, Kind::Exists);
  EXPECT_EQ(f.name(r.var), "x");
  const Node& inner = *r.kids[0];
  ASSERT_EQ(inner.kind, Kind::Exists);
  EXPECT_EQ(f.name(inner.var), "y");
  const Node& atom = *inner.kids[0];
  ASSERT_EQ(atom.kind, Kind::Atom);
  EXPECT_EQ(atom.rel, Rel::Adj);
  EXPECT_EQ(f.name(atom.a), "x");
  EXPECT_EQ(f.name(atom.b), "y");
  EXPECT_TRUE(f.is_sentence());
}

TEST(Parse, SelfAdjacencyRejected) { EXPECT_THROW(parse("Ax (x ~ x)"), SyntaxError); }

TEST(Parse, SelfEqualityAfterNormalisation) {
  Formula f = parse("Ex !(x = x)");
  EXPECT_EQ(f.root()->kids[0]->kind, Kind::Not);
  EXPECT_THROW(normalize(f), Error);
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse("Ex x (x ~ y");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_GT(e.column(), 0u);
  } catch (const UnboundVariableError&) {
  }
}

TEST(Parse, UnboundVariable) {
  EXPECT_THROW(parse("Ex (x ~ y)"), UnboundVariableError);
  ParseOptions opts;
  opts.free_vars = {"y"};
  Formula f = parse("Ex (x ~ y)", opts);
  ASSERT_EQ(f.free_vars().size(), 1u);
  EXPECT_EQ(f.name(f.free_vars()[0]), "y");
}

TEST(Parse, RoundTripThroughPrinter) {
  for (const auto& text : testsupport::small_corpus()) {
    Formula f = parse(text);
    Formula g = parse(to_string(f));
    EXPECT_TRUE(structurally_equal(f.root(), g.root())) << text;
  }
}

TEST(Normalize, QuantifierDuality) {
  ParseOptions opts;
  opts.free_vars = {"y"};
  Formula f = normalize(parse("!(Ex (x ~ y))", opts));
  const Node& r = *f.root();
  ASSERT_EQ(r.kind, Kind::Forall);
  ASSERT_EQ(r.kids[0]->kind, Kind::Atom);
  EXPECT_EQ(r.kids[0]->rel, Rel::NotAdj);
}

TEST(Normalize, DeMorgan) {
  ParseOptions opts;
  opts.free_vars = {"x", "y"};
  Formula f = normalize(parse("!((x ~ y) & (x = y))", opts));
  const Node& r = *f.root();
  ASSERT_EQ(r.kind, Kind::Or);
  ASSERT_EQ(r.kids.size(), 2u);
  EXPECT_EQ(r.kids[0]->rel, Rel::NotAdj);
  EXPECT_EQ(r.kids[1]->rel, Rel::NotEq);
}

TEST(Normalize, NegationFreeUnchanged) {
  Formula f = parse("Ax Ey (x ~ y | x = y)");
  ASSERT_TRUE(is_negation_free(f));
  EXPECT_TRUE(structurally_equal(normalize(f).root(), f.root()));
}

TEST(Normalize, IdempotentAndTruthPreserving) {
  auto graphs = testsupport::labelled_graphs(4);
  for (const auto& text : testsupport::small_corpus()) {
    Formula f = parse(text);
    Formula n1 = normalize(f);
    EXPECT_TRUE(is_negation_free(n1));
    EXPECT_TRUE(structurally_equal(normalize(n1).root(), n1.root())) << text;
    EXPECT_FALSE(has_self_atom(*n1.root()));
    for (const auto& g : graphs) EXPECT_EQ(testsupport::oracle_models(g, f), models(g, n1)) << text;
  }
}

TEST(NestingForest, AtomIsEmpty) {
  ParseOptions opts;
  opts.free_vars = {"x", "y"};
  EXPECT_TRUE(nesting_forest(parse("x ~ y", opts)).nodes.empty());
}

TEST(NestingForest, SingleQuantifier) {
  ParseOptions opts;
  opts.free_vars = {"y"};
  auto nf = nesting_forest(parse("Ex (x ~ y)", opts));
  ASSERT_EQ(nf.nodes.size(), 1u);
  ASSERT_EQ(nf.roots.size(), 1u);
  EXPECT_EQ(nf.nodes[nf.roots[0]].label, Quant::Exists);
}

TEST(NestingForest, ConjunctionIsDisjointUnion) {
  ParseOptions opts;
  opts.free_vars = {"u"};
  auto nf = nesting_forest(parse("(Ex (x ~ u)) & (Ay (y ~ u))", opts));
  ASSERT_EQ(nf.roots.size(), 2u);
  EXPECT_EQ(nf.nodes[nf.roots[0]].label, Quant::Exists);
  EXPECT_EQ(nf.nodes[nf.roots[1]].label, Quant::Forall);
}

TEST(Metrics, Corpus) {
  EXPECT_EQ(metrics(corpus::get("theorem1")), (FormulaMetrics{5, 3}));
  EXPECT_EQ(metrics(corpus::get("theorem1-pnf")), (FormulaMetrics{8, 3}));
  EXPECT_EQ(metrics(parse("Ax Ey Az (x ~ z | y = z)")), (FormulaMetrics{3, 2}));
}

TEST(Metrics, PathWithThreeChanges) {
  auto f = parse("Ex Ay Az Eu Ev Aw (x ~ y | z ~ u | v ~ w)");
  EXPECT_EQ(metrics(f), (FormulaMetrics{6, 3}));
}

TEST(Metrics, BranchesTakeTheMaximum) {
  auto f = parse("Ex ((Ay (x ~ y)) & (Ez Aw Eu (z ~ w | u ~ x)))");
  EXPECT_EQ(metrics(f), (FormulaMetrics{4, 2}));
}

TEST(Corpus, PnfPrefix) {
  auto q = quantifier_sequence(corpus::get("theorem1-pnf"));
  std::string s;
  for (auto x : q) s += x == Quant::Exists ? 'E' : 'A';
  EXPECT_EQ(s, "EEEEAAEA");
}

TEST(Corpus, UnknownName) { EXPECT_THROW(corpus::get("nope"), Error); }
