#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "rgfo/density.hpp"
#include "rgfo/formula.hpp"
#include "rgfo/graph.hpp"
#include "rgfo/modelcheck.hpp"

namespace rgfo {

// Per-trial generator. Substreams are seeded from (seed, n, trial) through
// splitmix64 so neighbouring trials do not share state.
using TrialRng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial);

// Uniform double in [0,1) from the top 53 bits of one draw.
double uniform01(TrialRng& rng);

// Edges are visited in lexicographic order (0,1),(0,2),...,(n-2,n-1).
Graph sample_gnp(std::size_t n, double p, TrialRng& rng);

double alpha_to_p(std::size_t n, const Rational& alpha);

struct WilsonInterval {
  double lo;
  double hi;
};
inline constexpr double kWilsonZ = 1.959963984540054;
WilsonInterval wilson(std::size_t successes, std::size_t trials, double z = kWilsonZ);

struct SentenceProperty {
  Formula sentence;
};
struct ExtensionProperty {
  PatternPair pair;
};
// Induced copy of the graph anywhere in the host.
struct SubgraphProperty {
  Graph pattern;
};
struct DoubleExtensionProperty {
  std::vector<TriplePattern> family;
};
// Closures of random base sets of size c stay within c + t*c/eps.
struct ClosureBoundProperty {
  std::int64_t c = 1;
  unsigned t = 1;
  Rational eps{1};
  unsigned bases_per_trial = 16;
};

using Property = std::variant<SentenceProperty, ExtensionProperty, SubgraphProperty, DoubleExtensionProperty,
                              ClosureBoundProperty>;

struct ExperimentConfig {
  std::vector<std::size_t> ns;
  Rational alpha{1};
  unsigned trials = 1;
  std::uint64_t seed = 0;
  Property property;
  double timeout_seconds = 5.0;  // per trial; only sentence checks can time out
};

struct EstimateRow {
  std::size_t n = 0;
  double p = 0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double phat = 0;  // successes / (trials - timeouts)
  double lo = 0;
  double hi = 1;
  std::size_t timeouts = 0;
};

struct SpectrumEstimate {
  Rational alpha{1};
  std::vector<EstimateRow> rows;
};

SpectrumEstimate estimate(const ExperimentConfig& config);

SpectrumEstimate spectrum_probe(const Formula& f, const Rational& alpha, const std::vector<std::size_t>& ns,
                                unsigned trials, std::uint64_t seed, double timeout_seconds = 5.0);

// Header n,p,successes,trials,phat,lo,hi,timeouts then one line per row.
std::string to_csv(const SpectrumEstimate& est);

}  // namespace rgfo
