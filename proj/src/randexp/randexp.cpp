#include "rgfo/randexp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rgfo/error.hpp"

namespace rgfo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(seed) ^ n) ^ trial);
}

double uniform01(TrialRng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Graph sample_gnp(std::size_t n, double p, TrialRng& rng) {
  if (n == 0) throw PreconditionError("sample_gnp needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("edge probability must lie in [0,1]");
  Graph g(n);
  if (p == 0.0 || n < 2) return g;
  if (p == 1.0) return complete_graph(n);
  const double log_q = std::log1p(-p);
  // Geometric skips over the lexicographic edge list.
  std::uint64_t u = 0, v = 0;
  for (;;) {
    double r = 1.0 - uniform01(rng);  // (0,1]
    double skip = std::floor(std::log(r) / log_q);
    std::uint64_t step = skip > 1e18 ? std::uint64_t{1} << 62 : static_cast<std::uint64_t>(skip);
    // Advance `step` positions then one more to land on the next edge.
    std::uint64_t advance = step + 1;
    while (advance > 0) {
      std::uint64_t left_in_row = n - 1 - v;
      if (advance <= left_in_row) {
        v += advance;
        advance = 0;
      } else {
        advance -= left_in_row;
        ++u;
        if (u + 1 >= n) return g;
        v = u;
      }
    }
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
}

double alpha_to_p(std::size_t n, const Rational& alpha) {
  if (n < 2) throw PreconditionError("alpha_to_p needs n >= 2");
  double a = static_cast<double>(alpha.numerator()) / static_cast<double>(alpha.denominator());
  return std::pow(static_cast<double>(n), -a);
}

WilsonInterval wilson(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw PreconditionError("more successes than trials");
  double nn = static_cast<double>(trials);
  double ph = static_cast<double>(successes) / nn;
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double centre = (ph + z2 / (2 * nn)) / denom;
  double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, std::min(centre - half, ph)), std::min(1.0, std::max(centre + half, ph))};
}

namespace {

// One trial; false on failure, throws TimeoutError on timeout.
class TrialRunner {
 public:
  explicit TrialRunner(const ExperimentConfig& c) : config_(c) {
    if (auto* s = std::get_if<SentenceProperty>(&c.property)) evaluator_.emplace(s->sentence);
    if (auto* e = std::get_if<ExtensionProperty>(&c.property)) e->pair.validate();
    if (auto* d = std::get_if<DoubleExtensionProperty>(&c.property)) validate_triple_family(d->family);
    if (auto* b = std::get_if<ClosureBoundProperty>(&c.property)) {
      if (b->c < 1 || b->eps <= 0) throw PreconditionError("closure bound needs c >= 1 and eps > 0");
      bound_ = closure_size_bound(b->c, b->t, b->eps);
    }
  }

  bool run(const Graph& g, TrialRng& rng) const {
    return std::visit([&](const auto& prop) { return check(prop, g, rng); }, config_.property);
  }

 private:
  const ExperimentConfig& config_;
  std::optional<Evaluator> evaluator_;
  Rational bound_{0};

  bool check(const SentenceProperty&, const Graph& g, TrialRng&) const {
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(config_.timeout_seconds));
    return evaluator_->eval(g, deadline);
  }
  bool check(const ExtensionProperty& e, const Graph& g, TrialRng&) const { return has_extension_property(g, e.pair); }
  bool check(const SubgraphProperty& s, const Graph& g, TrialRng&) const {
    return find_rooted_embedding(g, {}, PatternPair{s.pattern, {}}, true).has_value();
  }
  bool check(const DoubleExtensionProperty& d, const Graph& g, TrialRng&) const {
    return has_double_extension_property(g, d.family);
  }
  bool check(const ClosureBoundProperty& b, const Graph& g, TrialRng& rng) const {
    if (static_cast<std::size_t>(b.c) > g.order()) throw PreconditionError("closure base larger than the graph");
    std::vector<Vertex> all(g.order());
    for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
    ClosureOptions opts;
    opts.vertex_budget = static_cast<std::size_t>(boost::rational_cast<double>(bound_)) + 1;
    for (unsigned i = 0; i < b.bases_per_trial; ++i) {
      // Partial Fisher-Yates for a uniform c-subset.
      for (std::size_t j = 0; j < static_cast<std::size_t>(b.c); ++j) {
        std::size_t k = j + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(all.size() - j));
        std::swap(all[j], all[std::min(k, all.size() - 1)]);
      }
      std::vector<Vertex> base(all.begin(), all.begin() + b.c);
      try {
        RigidChain chain = closure(g, base, b.t, config_.alpha, opts);
        if (Rational(static_cast<std::int64_t>(chain.closure.size())) > bound_) return false;
      } catch (const LimitError&) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace

SpectrumEstimate estimate(const ExperimentConfig& config) {
  if (config.trials == 0) throw PreconditionError("trials must be positive");
  if (config.alpha <= 0) throw PreconditionError("alpha must be positive");
  for (std::size_t n : config.ns)
    if (n < 2) throw PreconditionError("n values must be at least 2");
  TrialRunner runner(config);
  SpectrumEstimate out;
  out.alpha = config.alpha;
  std::vector<std::size_t> ns = config.ns;
  std::sort(ns.begin(), ns.end());
  for (std::size_t n : ns) {
    EstimateRow row;
    row.n = n;
    row.p = alpha_to_p(n, config.alpha);
    row.trials = config.trials;
    for (unsigned trial = 0; trial < config.trials; ++trial) {
      TrialRng rng(substream_seed(config.seed, n, trial));
      Graph g = sample_gnp(n, row.p, rng);
      try {
        if (runner.run(g, rng)) ++row.successes;
      } catch (const TimeoutError&) {
        ++row.timeouts;
      }
    }
    std::size_t evaluated = row.trials - row.timeouts;
    row.phat = evaluated ? static_cast<double>(row.successes) / static_cast<double>(evaluated) : 0.0;
    WilsonInterval w = wilson(row.successes, evaluated);
    row.lo = w.lo;
    row.hi = w.hi;
    out.rows.push_back(row);
  }
  return out;
}

SpectrumEstimate spectrum_probe(const Formula& f, const Rational& alpha, const std::vector<std::size_t>& ns,
                                unsigned trials, std::uint64_t seed, double timeout_seconds) {
  ExperimentConfig c;
  c.ns = ns;
  c.alpha = alpha;
  c.trials = trials;
  c.seed = seed;
  c.property = SentenceProperty{f};
  c.timeout_seconds = timeout_seconds;
  return estimate(c);
}

std::string to_csv(const SpectrumEstimate& est) {
  std::ostringstream out;
  out << "n,p,successes,trials,phat,lo,hi,timeouts\n";
  char buf[256];
  for (const auto& r : est.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%zu,%zu,%.6f,%.6f,%.6f,%zu\n", r.n, r.p, r.successes, r.trials,
                  r.phat, r.lo, r.hi, r.timeouts);
    out << buf;
  }
  return out.str();
}

}  // namespace rgfo
