#include "rgfo/density.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "rgfo/error.hpp"

namespace rgfo {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
      return Rational(v);
    }
    std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    long long num = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument("trailing");
    long long den = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument("trailing");
    if (den == 0) throw PreconditionError("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw PreconditionError("not a rational number: '" + text + "'");
  }
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

void require_positive(const Rational& alpha) {
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
}

// Edge counts of H ∪ T minus e(H) for every subset T of the extension
// vertices, indexed by bitmask over pp.extension_vertices().
struct ExtensionTable {
  std::vector<Vertex> ext;
  std::vector<std::int64_t> gain;

  explicit ExtensionTable(const PatternPair& pp) {
    pp.validate();
    ext = pp.extension_vertices();
    if (ext.size() > kMaxSubsetVertices)
      throw LimitError("pattern has " + std::to_string(ext.size()) + " extension vertices; cap is " +
                       std::to_string(kMaxSubsetVertices));
    const Graph& g = pp.pattern;
    std::size_t m = ext.size();
    std::vector<std::int64_t> to_roots(m, 0);
    std::vector<std::uint32_t> inner(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (Vertex r : pp.roots) to_roots[i] += g.adj(ext[i], r);
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && g.adj(ext[i], ext[j])) inner[i] |= 1u << j;
    }
    gain.assign(std::size_t{1} << m, 0);
    for (std::uint32_t mask = 1; mask < gain.size(); ++mask) {
      unsigned v = static_cast<unsigned>(std::countr_zero(mask));
      std::uint32_t rest = mask & (mask - 1);
      gain[mask] = gain[rest] + to_roots[v] + std::popcount(inner[v] & rest);
    }
  }

  std::uint32_t full() const { return static_cast<std::uint32_t>(gain.size() - 1); }
};

}  // namespace

Rational max_density(const Graph& h) {
  if (h.order() == 0) throw PreconditionError("max_density of the empty graph");
  if (h.order() > kMaxSubsetVertices)
    throw LimitError("graph has " + std::to_string(h.order()) + " vertices; cap is " +
                     std::to_string(kMaxSubsetVertices));
  ExtensionTable table(PatternPair{h, {}});
  Rational best(0);
  for (std::uint32_t mask = 1; mask <= table.full(); ++mask) {
    Rational r(table.gain[mask], std::popcount(mask));
    if (r > best) best = r;
  }
  return best;
}

Rational rel_density(const PatternPair& pp) {
  ExtensionTable table(pp);
  if (table.ext.empty()) throw PreconditionError("pattern has no extension vertices");
  Rational best(0);
  for (std::uint32_t mask = 1; mask <= table.full(); ++mask) {
    Rational r(table.gain[mask], std::popcount(mask));
    if (r > best) best = r;
  }
  return best;
}

bool is_safe(const PatternPair& pp, const Rational& alpha) {
  require_positive(alpha);
  return rel_density(pp) < 1 / alpha;
}

bool is_rigid(const PatternPair& pp, const Rational& alpha) {
  require_positive(alpha);
  ExtensionTable table(pp);
  if (table.ext.empty()) throw PreconditionError("pattern has no extension vertices");
  const std::int64_t p = alpha.numerator(), q = alpha.denominator();
  std::uint32_t full = table.full();
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if ((mask & full) != mask) continue;
    std::int64_t de = table.gain[full] - table.gain[mask];
    std::int64_t dv = std::popcount(full) - std::popcount(mask);
    if (!(de * p > dv * q)) return false;
  }
  return true;
}

bool avoids_small_numerators(const Rational& alpha, std::int64_t a_max) {
  require_positive(alpha);
  // alpha = a/b with a <= a_max iff its reduced numerator is <= a_max.
  return alpha.numerator() > a_max;
}

std::optional<Subextension> find_rigid_subextension(const PatternPair& pp, const Rational& alpha) {
  require_positive(alpha);
  ExtensionTable table(pp);
  if (table.ext.empty()) throw PreconditionError("pattern has no extension vertices");
  if (!avoids_small_numerators(alpha, static_cast<std::int64_t>(table.ext.size())))
    throw PreconditionError("alpha " + format_rational(alpha) +
                            " equals a fraction whose numerator is at most the number of extension vertices");
  const std::int64_t p = alpha.numerator(), q = alpha.denominator();
  std::optional<std::uint32_t> best;
  for (std::uint32_t mask = 1; mask <= table.full(); ++mask) {
    if (table.gain[mask] * p < std::int64_t{std::popcount(mask)} * q) continue;
    if (!best || std::popcount(mask) < std::popcount(*best)) best = mask;
  }
  if (!best) return std::nullopt;
  Subextension out;
  out.pair.roots.resize(pp.roots.size());
  std::vector<Vertex> order(pp.roots.begin(), pp.roots.end());
  for (std::size_t i = 0; i < table.ext.size(); ++i)
    if ((*best >> i) & 1u) order.push_back(table.ext[i]);
  out.pair.pattern = induced(pp.pattern, order);
  std::iota(out.pair.roots.begin(), out.pair.roots.end(), Vertex{0});
  out.vertices = order;
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

bool is_rigid_step(const Graph& g, const std::vector<bool>& current, const std::vector<Vertex>& step,
                   const Rational& alpha) {
  require_positive(alpha);
  std::size_t k = step.size();
  if (k == 0 || k > kMaxSubsetVertices) throw PreconditionError("rigid step size out of range");
  std::vector<std::int64_t> to_cur(k, 0);
  std::vector<std::uint32_t> inner(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex u : g.neighbors(step[i])) to_cur[i] += current[u] ? 1 : 0;
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && g.adj(step[i], step[j])) inner[i] |= 1u << j;
  }
  std::vector<std::int64_t> gain(std::size_t{1} << k, 0);
  for (std::uint32_t mask = 1; mask < gain.size(); ++mask) {
    unsigned v = static_cast<unsigned>(std::countr_zero(mask));
    std::uint32_t rest = mask & (mask - 1);
    gain[mask] = gain[rest] + to_cur[v] + std::popcount(inner[v] & rest);
  }
  const std::int64_t p = alpha.numerator(), q = alpha.denominator();
  std::uint32_t full = static_cast<std::uint32_t>(gain.size() - 1);
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    std::int64_t de = gain[full] - gain[mask];
    std::int64_t dv = static_cast<std::int64_t>(k) - std::popcount(mask);
    if (!(de * p > dv * q)) return false;
  }
  return true;
}

std::vector<std::vector<Vertex>> rigid_step_candidates(const Graph& g, const std::vector<bool>& current, unsigned t,
                                                       const Rational& alpha) {
  require_positive(alpha);
  if (t == 0) return {};
  const std::int64_t p = alpha.numerator(), q = alpha.denominator();
  // A detached connected set C needs e(C)/|C| > 1/alpha, and e(C)/|C| <= (|C|-1)/2.
  bool detached_possible = static_cast<std::int64_t>(t - 1) * p > 2 * q;
  std::vector<Vertex> seeds;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (current[v]) continue;
    bool touches = false;
    for (Vertex u : g.neighbors(v))
      if (current[u]) {
        touches = true;
        break;
      }
    if (touches || detached_possible) seeds.push_back(v);
  }
  std::set<std::vector<Vertex>> found;
  std::vector<Vertex> cur;
  std::vector<bool> in_cur(g.order(), false);
  std::function<void()> grow = [&]() {
    std::vector<Vertex> sorted = cur;
    std::sort(sorted.begin(), sorted.end());
    if (!found.insert(sorted).second) return;
    if (cur.size() == t) return;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (Vertex w : g.neighbors(cur[i])) {
        if (current[w] || in_cur[w]) continue;
        cur.push_back(w);
        in_cur[w] = true;
        grow();
        in_cur[w] = false;
        cur.pop_back();
      }
  };
  for (Vertex s : seeds) {
    cur = {s};
    in_cur[s] = true;
    grow();
    in_cur[s] = false;
  }
  std::vector<std::vector<Vertex>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

namespace {

std::vector<bool> membership(const Graph& g, const std::vector<Vertex>& base) {
  std::vector<bool> in(g.order(), false);
  for (Vertex v : base) {
    if (v >= g.order()) throw PreconditionError("base vertex out of range");
    if (in[v]) throw PreconditionError("base vertices must be distinct");
    in[v] = true;
  }
  return in;
}

}  // namespace

RigidChain closure(const Graph& g, const std::vector<Vertex>& base, unsigned t, const Rational& alpha,
                   const ClosureOptions& opts) {
  require_positive(alpha);
  if (t < 1) throw PreconditionError("closure step bound t must be at least 1");
  std::vector<bool> in = membership(g, base);
  RigidChain chain;
  chain.base = base;
  chain.alpha = alpha;
  chain.t = t;
  std::size_t size = base.size();
  std::mt19937_64 rng(opts.shuffle_seed.value_or(0));
  for (;;) {
    auto cands = rigid_step_candidates(g, in, t, alpha);
    if (opts.shuffle_seed) std::shuffle(cands.begin(), cands.end(), rng);
    const std::vector<Vertex>* chosen = nullptr;
    for (const auto& z : cands)
      if (is_rigid_step(g, in, z, alpha)) {
        chosen = &z;
        break;
      }
    if (!chosen) break;
    for (Vertex v : *chosen) in[v] = true;
    size += chosen->size();
    chain.steps.push_back(*chosen);
    if (size > opts.vertex_budget)
      throw LimitError("closure exceeded the vertex budget of " + std::to_string(opts.vertex_budget));
  }
  for (Vertex v = 0; v < g.order(); ++v)
    if (in[v]) chain.closure.push_back(v);
  return chain;
}

std::vector<Vertex> dense_neighbourhood(const Graph& g, const std::vector<Vertex>& base, unsigned r,
                                        const Rational& alpha, std::size_t vertex_budget) {
  require_positive(alpha);
  if (r < 1) throw PreconditionError("step bound must be at least 1");
  std::vector<bool> in = membership(g, base);
  std::size_t size = base.size();
  const std::int64_t p = alpha.numerator(), q = alpha.denominator();
  for (;;) {
    std::vector<Vertex> pool;
    for (Vertex v = 0; v < g.order(); ++v)
      if (!in[v]) pool.push_back(v);
    std::vector<std::int64_t> to_cur(g.order(), 0);
    for (Vertex v : pool)
      for (Vertex u : g.neighbors(v)) to_cur[v] += in[u] ? 1 : 0;
    std::optional<std::vector<Vertex>> found;
    for (unsigned k = 1; k <= r && k <= pool.size() && !found; ++k) {
      // Lexicographic k-subsets of the pool.
      std::vector<std::size_t> idx(k);
      std::iota(idx.begin(), idx.end(), 0);
      for (;;) {
        std::int64_t edges = 0;
        for (std::size_t i = 0; i < k; ++i) {
          edges += to_cur[pool[idx[i]]];
          for (std::size_t j = i + 1; j < k; ++j) edges += g.adj(pool[idx[i]], pool[idx[j]]);
        }
        if (edges * p > static_cast<std::int64_t>(k) * q) {
          found.emplace();
          for (std::size_t i : idx) found->push_back(pool[i]);
          break;
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    if (!found) break;
    for (Vertex v : *found) in[v] = true;
    size += found->size();
    if (size > vertex_budget)
      throw LimitError("dense neighbourhood exceeded the vertex budget of " + std::to_string(vertex_budget));
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.order(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

bool numerator_hypothesis(const Rational& lo, const Rational& hi, std::int64_t t) {
  require_positive(lo);
  if (!(lo < hi)) throw PreconditionError("empty interval");
  for (std::int64_t a = 1; a <= t; ++a) {
    // a/b in [lo, hi)  <=>  a/hi < b <= a/lo.
    Rational upper = Rational(a) / lo;
    Rational lower = Rational(a) / hi;
    std::int64_t b_max = upper.numerator() / upper.denominator();
    std::int64_t b_min = lower.numerator() / lower.denominator() + 1;
    if (b_min <= b_max && b_max >= 1) return false;
  }
  return true;
}

Rational closure_bound_epsilon(const Rational& lo, std::int64_t t) {
  require_positive(lo);
  if (t < 1) throw PreconditionError("t must be positive");
  std::optional<Rational> k;
  for (std::int64_t a = 1; a <= t; ++a) {
    // Largest a/b < lo uses the smallest b > a/lo.
    Rational x = Rational(a) / lo;
    std::int64_t b = x.numerator() / x.denominator() + 1;
    Rational cand(a, b);
    if (!k || cand > *k) k = cand;
  }
  return lo - *k;
}

Rational closure_size_bound(std::int64_t c, std::int64_t t, const Rational& eps) {
  if (eps <= 0) throw PreconditionError("epsilon must be positive");
  return Rational(c) + Rational(t * c) / eps;
}

}  // namespace rgfo
