#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "rgfo/error.hpp"
#include "rgfo/randexp.hpp"
#include "support.hpp"

using namespace rgfo;

namespace {

// Textbook score interval, written out directly.
WilsonInterval reference_wilson(double k, double n) {
  const double z = 1.959963984540054;
  double ph = k / n;
  double denom = 1 + z * z / n;
  double centre = (ph + z * z / (2 * n)) / denom;
  double half = z / denom * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace

TEST(Sampler, Extremes) {
  TrialRng rng(1);
  EXPECT_EQ(sample_gnp(30, 1.0, rng), complete_graph(30));
  EXPECT_EQ(sample_gnp(30, 0.0, rng).edge_count(), 0u);
  EXPECT_THROW(sample_gnp(0, 0.5, rng), Error);
}

TEST(Sampler, EdgeCountConcentration) {
  const double mean = 1000.0 * 999 / 4;
  const double sigma = std::sqrt(1000.0 * 999 / 2 * 0.25);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TrialRng rng(substream_seed(seed, 1000, 0));
    double e = static_cast<double>(sample_gnp(1000, 0.5, rng).edge_count());
    EXPECT_LT(std::abs(e - mean), 5 * sigma) << seed;
  }
}

TEST(Sampler, SparseEdgeCount) {
  TrialRng rng(77);
  double total = 0;
  for (int i = 0; i < 50; ++i) total += static_cast<double>(sample_gnp(2000, 0.002, rng).edge_count());
  double mean = 2000.0 * 1999 / 2 * 0.002;
  double sigma = std::sqrt(50 * mean);
  EXPECT_LT(std::abs(total - 50 * mean), 5 * sigma);
}

TEST(Sampler, UniformOverLabelledGraphs) {
  TrialRng rng(2024);
  std::map<std::string, int> freq;
  const int trials = 40000;
  for (int i = 0; i < trials; ++i) ++freq[graph_to_string(sample_gnp(4, 0.5, rng))];
  ASSERT_EQ(freq.size(), 64u);
  const double p = 1.0 / 64, sd = std::sqrt(trials * p * (1 - p));
  for (const auto& [g, c] : freq) EXPECT_LT(std::abs(c - trials * p), 5 * sd) << g;
}

TEST(Sampler, SeedDeterminism) {
  TrialRng a(substream_seed(5, 100, 3)), b(substream_seed(5, 100, 3));
  EXPECT_EQ(sample_gnp(100, 0.1, a), sample_gnp(100, 0.1, b));
  EXPECT_NE(substream_seed(5, 100, 3), substream_seed(5, 100, 4));
  EXPECT_NE(substream_seed(5, 100, 3), substream_seed(5, 200, 3));
}

TEST(Uniform01, Range) {
  TrialRng rng(3);
  for (int i = 0; i < 10000; ++i) {
    double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(AlphaToP, Examples) {
  EXPECT_NEAR(alpha_to_p(100, Rational(1, 2)), 0.1, 1e-12);
  EXPECT_NEAR(alpha_to_p(16, Rational(3, 4)), 0.125, 1e-12);
  for (std::size_t n : {2u, 10u, 1000u}) {
    double p = alpha_to_p(n, Rational(7, 10));
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
  }
  EXPECT_THROW(alpha_to_p(1, Rational(1, 2)), Error);
}

TEST(Wilson, ReferenceValues) {
  for (auto [k, n] : {std::pair{0, 10}, std::pair{5, 10}, std::pair{10, 10}, std::pair{37, 200}}) {
    auto got = wilson(k, n);
    auto ref = reference_wilson(k, n);
    EXPECT_NEAR(got.lo, ref.lo, 1e-12);
    EXPECT_NEAR(got.hi, ref.hi, 1e-12);
  }
  // Published values for 0/10 and 5/10.
  EXPECT_NEAR(wilson(0, 10).hi, 0.2775, 5e-5);
  EXPECT_NEAR(wilson(5, 10).lo, 0.2366, 5e-5);
  EXPECT_NEAR(wilson(5, 10).hi, 0.7634, 5e-5);
  EXPECT_NEAR(wilson(10, 10).lo, 0.7225, 5e-5);
}

TEST(Estimate, TautologyAndContradiction) {
  ExperimentConfig cfg;
  cfg.ns = {20, 40};
  cfg.alpha = Rational(1, 2);
  cfg.trials = 12;
  cfg.seed = 9;
  cfg.property = SentenceProperty{parse("Ax Ey (x = y)")};
  for (const auto& row : estimate(cfg).rows) EXPECT_EQ(row.phat, 1.0);
  cfg.property = SentenceProperty{parse("Ex Ey (x ~ y & x !~ y)")};
  for (const auto& row : estimate(cfg).rows) {
    EXPECT_EQ(row.phat, 0.0);
    EXPECT_EQ(row.timeouts, 0u);
  }
}

TEST(Estimate, DeterministicTable) {
  ExperimentConfig cfg;
  cfg.ns = {200, 50};
  cfg.alpha = Rational(7, 10);
  cfg.trials = 30;
  cfg.seed = 123;
  cfg.property = SubgraphProperty{complete_graph(3)};
  auto a = to_csv(estimate(cfg));
  auto b = to_csv(estimate(cfg));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "n,p,successes,trials,phat,lo,hi,timeouts");
  auto est = estimate(cfg);
  ASSERT_EQ(est.rows.size(), 2u);
  EXPECT_EQ(est.rows[0].n, 50u);
  cfg.seed = 124;
  EXPECT_NE(to_csv(estimate(cfg)), a);
}

TEST(Estimate, ExtensionAndClosureBound) {
  ExperimentConfig cfg;
  cfg.ns = {300};
  cfg.alpha = Rational(1, 2);
  cfg.trials = 10;
  cfg.seed = 5;
  cfg.property = ExtensionProperty{PatternPair{testsupport::graph_of(2, {{0, 1}}), {0}}};
  EXPECT_EQ(estimate(cfg).rows[0].successes, 10u);
  cfg.alpha = Rational(13, 20);
  cfg.ns = {500};
  cfg.trials = 8;
  cfg.property = ClosureBoundProperty{2, 1, closure_bound_epsilon(Rational(13, 20), 1), 4};
  EXPECT_EQ(estimate(cfg).rows[0].successes, 8u);
}

TEST(SpectrumProbe, CorpusSentenceTable) {
  auto est = spectrum_probe(corpus::get("theorem1"), Rational(3, 4), {100, 200}, 10, 77);
  ASSERT_EQ(est.rows.size(), 2u);
  EXPECT_EQ(est.rows[0].trials, 10u);
  EXPECT_EQ(to_csv(est), to_csv(spectrum_probe(corpus::get("theorem1"), Rational(3, 4), {100, 200}, 10, 77)));
}
