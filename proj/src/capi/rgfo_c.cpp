#include "rgfo/rgfo.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <string>

#include "rgfo/density.hpp"
#include "rgfo/efgame.hpp"
#include "rgfo/error.hpp"
#include "rgfo/formula.hpp"
#include "rgfo/graph.hpp"
#include "rgfo/modelcheck.hpp"
#include "rgfo/randexp.hpp"
#include "rgfo/transform.hpp"

struct rgfo_formula {
  rgfo::Formula f;
};
struct rgfo_graph {
  rgfo::Graph g;
};
struct rgfo_experiment {
  rgfo::ExperimentConfig config;
  bool derive_eps = false;
};

using nlohmann::json;

namespace {

thread_local std::string last_error;

// Printing a formula expands shared subterms, so very large trees are refused.
constexpr std::size_t kMaxPrintedNodes = 10'000'000;

template <class F>
rgfo_status guard(F body) {
  try {
    body();
    last_error.clear();
    return RGFO_OK;
  } catch (const rgfo::SyntaxError& e) {
    last_error = e.what();
    return RGFO_E_SYNTAX;
  } catch (const rgfo::UnboundVariableError& e) {
    last_error = e.what();
    return RGFO_E_UNBOUND;
  } catch (const rgfo::PreconditionError& e) {
    last_error = e.what();
    return RGFO_E_PRECONDITION;
  } catch (const rgfo::LimitError& e) {
    last_error = e.what();
    return RGFO_E_LIMIT;
  } catch (const rgfo::TimeoutError& e) {
    last_error = e.what();
    return RGFO_E_TIMEOUT;
  } catch (const rgfo::IoError& e) {
    last_error = e.what();
    return RGFO_E_IO;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return RGFO_E_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RGFO_E_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return RGFO_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string("null argument: ") + what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<rgfo::Vertex> list(const uint32_t* xs, size_t n) {
  if (n && !xs) throw std::invalid_argument("null vertex list");
  return std::vector<rgfo::Vertex>(xs, xs + n);
}

rgfo::PatternPair pair_of(const rgfo_graph* pattern, const uint32_t* roots, size_t n) {
  need(pattern, "pattern");
  rgfo::PatternPair pp{pattern->g, list(roots, n)};
  pp.validate();
  return pp;
}

rgfo::Rational rational(const char* text) {
  need(text, "rational");
  return rgfo::parse_rational(text);
}

rgfo::Formula normalized(const rgfo_formula* f) {
  need(f, "formula");
  return rgfo::normalize(f->f);
}

rgfo_formula* wrap(rgfo::Formula f) { return new rgfo_formula{std::move(f)}; }

json estimate_json(const rgfo::SpectrumEstimate& est) {
  json rows = json::array();
  for (const auto& r : est.rows)
    rows.push_back({{"n", r.n},
                    {"p", r.p},
                    {"successes", r.successes},
                    {"trials", r.trials},
                    {"phat", r.phat},
                    {"lo", r.lo},
                    {"hi", r.hi},
                    {"timeouts", r.timeouts}});
  return {{"alpha", rgfo::format_rational(est.alpha)}, {"rows", rows}};
}

}  // namespace

extern "C" {

const char* rgfo_last_error(void) { return last_error.c_str(); }

const char* rgfo_status_name(rgfo_status s) {
  switch (s) {
    case RGFO_OK: return "ok";
    case RGFO_E_ARGUMENT: return "argument";
    case RGFO_E_SYNTAX: return "syntax";
    case RGFO_E_UNBOUND: return "unbound_variable";
    case RGFO_E_PRECONDITION: return "precondition";
    case RGFO_E_LIMIT: return "limit";
    case RGFO_E_TIMEOUT: return "timeout";
    case RGFO_E_IO: return "io";
    case RGFO_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void rgfo_string_free(char* s) { std::free(s); }

rgfo_status rgfo_formula_parse(const char* text, const char* const* free_vars, size_t n_free, rgfo_formula** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    rgfo::ParseOptions opts;
    for (size_t i = 0; i < n_free; ++i) opts.free_vars.emplace_back(free_vars[i]);
    *out = wrap(rgfo::parse(text, opts));
  });
}

rgfo_status rgfo_formula_corpus(const char* name, rgfo_formula** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = wrap(rgfo::corpus::get(name));
  });
}

rgfo_status rgfo_corpus_names(char** out_json) {
  return guard([&] {
    need(out_json, "out");
    *out_json = dup(json(rgfo::corpus::names()).dump());
  });
}

void rgfo_formula_free(rgfo_formula* f) { delete f; }

rgfo_status rgfo_formula_to_string(const rgfo_formula* f, char** out) {
  return guard([&] {
    need(f, "formula");
    need(out, "out");
    if (rgfo::tree_size(f->f.root()) > kMaxPrintedNodes)
      throw rgfo::LimitError("formula too large to print");
    *out = dup(rgfo::to_string(f->f));
  });
}

rgfo_status rgfo_formula_normalize(const rgfo_formula* f, rgfo_formula** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(normalized(f));
  });
}

rgfo_status rgfo_formula_metrics(const rgfo_formula* f, unsigned* depth, unsigned* alternations) {
  return guard([&] {
    need(f, "formula");
    auto m = rgfo::metrics(f->f);
    if (depth) *depth = m.depth;
    if (alternations) *alternations = m.alternations;
  });
}

rgfo_status rgfo_formula_quantifiers(const rgfo_formula* f, char** out) {
  return guard([&] {
    need(f, "formula");
    need(out, "out");
    std::string s;
    for (auto q : rgfo::quantifier_sequence(f->f)) s += q == rgfo::Quant::Exists ? 'E' : 'A';
    *out = dup(s);
  });
}

rgfo_status rgfo_formula_pnf(const rgfo_formula* f, rgfo_formula** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(rgfo::to_pnf(normalized(f)).assemble());
  });
}

rgfo_status rgfo_formula_nepnf(const rgfo_formula* f, rgfo_formula** out) {
  return guard([&] {
    need(out, "out");
    rgfo::Formula n = normalized(f);
    *out = wrap(rgfo::to_nepnf(rgfo::to_pnf(n)).assemble());
  });
}

rgfo_status rgfo_formula_pnf_alt(const rgfo_formula* f, rgfo_formula** out, unsigned* trace, size_t cap,
                                 size_t* len) {
  return guard([&] {
    need(out, "out");
    auto r = rgfo::to_pnf_alternation_preserving_traced(normalized(f));
    for (size_t i = 0; i < r.mu_trace.size() && i < cap && trace; ++i) trace[i] = r.mu_trace[i];
    if (len) *len = r.mu_trace.size();
    *out = wrap(r.result.assemble());
  });
}

rgfo_status rgfo_graph_parse(const char* text, rgfo_graph** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new rgfo_graph{rgfo::parse_graph(text)};
  });
}

rgfo_status rgfo_graph_read_file(const char* path, rgfo_graph** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new rgfo_graph{rgfo::read_graph_file(path)};
  });
}

rgfo_status rgfo_graph_from_edges(size_t n, const uint32_t* edges, size_t n_edges, rgfo_graph** out) {
  return guard([&] {
    need(out, "out");
    if (n_edges && !edges) throw std::invalid_argument("null edge list");
    rgfo::Graph g(n);
    for (size_t i = 0; i < n_edges; ++i) g.add_edge(edges[2 * i], edges[2 * i + 1]);
    *out = new rgfo_graph{std::move(g)};
  });
}

void rgfo_graph_free(rgfo_graph* g) { delete g; }

size_t rgfo_graph_order(const rgfo_graph* g) { return g ? g->g.order() : 0; }

size_t rgfo_graph_edge_count(const rgfo_graph* g) { return g ? g->g.edge_count() : 0; }

rgfo_status rgfo_graph_to_string(const rgfo_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup(rgfo::graph_to_string(g->g));
  });
}

rgfo_status rgfo_max_density(const rgfo_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup(rgfo::format_rational(rgfo::max_density(g->g)));
  });
}

rgfo_status rgfo_rel_density(const rgfo_graph* pattern, const uint32_t* roots, size_t n_roots, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(rgfo::format_rational(rgfo::rel_density(pair_of(pattern, roots, n_roots))));
  });
}

rgfo_status rgfo_is_safe(const rgfo_graph* pattern, const uint32_t* roots, size_t n_roots, const char* alpha,
                         int* out) {
  return guard([&] {
    need(out, "out");
    *out = rgfo::is_safe(pair_of(pattern, roots, n_roots), rational(alpha)) ? 1 : 0;
  });
}

rgfo_status rgfo_is_rigid(const rgfo_graph* pattern, const uint32_t* roots, size_t n_roots, const char* alpha,
                          int* out) {
  return guard([&] {
    need(out, "out");
    *out = rgfo::is_rigid(pair_of(pattern, roots, n_roots), rational(alpha)) ? 1 : 0;
  });
}

rgfo_status rgfo_rigid_subextension(const rgfo_graph* pattern, const uint32_t* roots, size_t n_roots,
                                    const char* alpha, char** out_json) {
  return guard([&] {
    need(out_json, "out");
    auto s = rgfo::find_rigid_subextension(pair_of(pattern, roots, n_roots), rational(alpha));
    json j = {{"safe", !s.has_value()}};
    if (s) j["vertices"] = s->vertices;
    *out_json = dup(j.dump());
  });
}

rgfo_status rgfo_closure(const rgfo_graph* g, const uint32_t* base, size_t n_base, unsigned t, const char* alpha,
                         int shuffle, uint64_t seed, char** out_json) {
  return guard([&] {
    need(g, "graph");
    need(out_json, "out");
    rgfo::ClosureOptions opts;
    if (shuffle) opts.shuffle_seed = seed;
    auto chain = rgfo::closure(g->g, list(base, n_base), t, rational(alpha), opts);
    json j = {{"closure", chain.closure}, {"steps", chain.steps}};
    *out_json = dup(j.dump());
  });
}

rgfo_status rgfo_models(const rgfo_graph* g, const rgfo_formula* f, double timeout_seconds, int* out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    rgfo::Deadline deadline;
    if (timeout_seconds > 0)
      deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                        std::chrono::duration<double>(timeout_seconds));
    *out = rgfo::models(g->g, normalized(f), deadline) ? 1 : 0;
  });
}

rgfo_status rgfo_has_extension(const rgfo_graph* host, const rgfo_graph* pattern, const uint32_t* roots,
                               size_t n_roots, int* out) {
  return guard([&] {
    need(host, "host");
    need(out, "out");
    *out = rgfo::has_extension_property(host->g, pair_of(pattern, roots, n_roots)) ? 1 : 0;
  });
}

rgfo_status rgfo_case1_properties(const rgfo_graph* g, unsigned m_cap, char** out_json) {
  return guard([&] {
    need(g, "graph");
    need(out_json, "out");
    auto r = rgfo::case1_properties(g->g, m_cap);
    json j = {{"triangle", r.triangle},
              {"sparse_extension", r.sparse_extension},
              {"sparse_subgraph", r.sparse_subgraph},
              {"sparse_extension_complete", r.sparse_extension_complete}};
    *out_json = dup(j.dump());
  });
}

rgfo_status rgfo_game(const rgfo_graph* g, const rgfo_graph* h, unsigned rounds, const char* mode, int synthesize,
                      char** out_json) {
  return guard([&] {
    need(g, "g");
    need(h, "h");
    need(out_json, "out");
    auto spec = rgfo::parse_game_spec(rounds, mode ? mode : "plain");
    auto outcome = rgfo::solve(g->g, h->g, spec);
    bool spoiler = outcome.winner == rgfo::Winner::Spoiler;
    json j = {{"winner", spoiler ? "spoiler" : "duplicator"}};
    if (synthesize) {
      auto f = rgfo::synthesize_distinguishing(g->g, h->g, spec);
      j["sentence"] = f ? json(rgfo::to_string(*f)) : json(nullptr);
    }
    *out_json = dup(j.dump());
  });
}

rgfo_status rgfo_game_prefixed(const rgfo_graph* g, const uint32_t* gx, const rgfo_graph* h, const uint32_t* hy,
                               size_t m, unsigned rounds, int* duplicator_wins) {
  return guard([&] {
    need(g, "g");
    need(h, "h");
    need(duplicator_wins, "out");
    *duplicator_wins = rgfo::equivalent_k(g->g, list(gx, m), h->g, list(hy, m), rounds) ? 1 : 0;
  });
}

rgfo_status rgfo_alpha_to_p(size_t n, const char* alpha, double* out) {
  return guard([&] {
    need(out, "out");
    *out = rgfo::alpha_to_p(n, rational(alpha));
  });
}

rgfo_experiment* rgfo_experiment_new(void) {
  try {
    return new rgfo_experiment{};
  } catch (...) {
    last_error = "allocation failed";
    return nullptr;
  }
}

void rgfo_experiment_free(rgfo_experiment* e) { delete e; }

rgfo_status rgfo_experiment_set_alpha(rgfo_experiment* e, const char* alpha) {
  return guard([&] {
    need(e, "experiment");
    auto a = rational(alpha);
    if (a <= 0) throw rgfo::PreconditionError("alpha must be positive");
    e->config.alpha = a;
  });
}

rgfo_status rgfo_experiment_set_ns(rgfo_experiment* e, const size_t* ns, size_t count) {
  return guard([&] {
    need(e, "experiment");
    if (count && !ns) throw std::invalid_argument("null n list");
    e->config.ns.assign(ns, ns + count);
  });
}

rgfo_status rgfo_experiment_set_trials(rgfo_experiment* e, unsigned trials) {
  return guard([&] {
    need(e, "experiment");
    e->config.trials = trials;
  });
}

rgfo_status rgfo_experiment_set_seed(rgfo_experiment* e, uint64_t seed) {
  return guard([&] {
    need(e, "experiment");
    e->config.seed = seed;
  });
}

rgfo_status rgfo_experiment_set_timeout(rgfo_experiment* e, double seconds) {
  return guard([&] {
    need(e, "experiment");
    e->config.timeout_seconds = seconds;
  });
}

rgfo_status rgfo_experiment_set_sentence(rgfo_experiment* e, const rgfo_formula* f) {
  return guard([&] {
    need(e, "experiment");
    e->config.property = rgfo::SentenceProperty{normalized(f)};
  });
}

rgfo_status rgfo_experiment_set_subgraph(rgfo_experiment* e, const rgfo_graph* pattern) {
  return guard([&] {
    need(e, "experiment");
    need(pattern, "pattern");
    e->config.property = rgfo::SubgraphProperty{pattern->g};
  });
}

rgfo_status rgfo_experiment_set_extension(rgfo_experiment* e, const rgfo_graph* pattern, const uint32_t* roots,
                                          size_t n_roots) {
  return guard([&] {
    need(e, "experiment");
    e->config.property = rgfo::ExtensionProperty{pair_of(pattern, roots, n_roots)};
  });
}

rgfo_status rgfo_experiment_add_double_extension(rgfo_experiment* e, const rgfo_graph* outer, const uint32_t* mid,
                                                 size_t n_mid, size_t n_inner) {
  return guard([&] {
    need(e, "experiment");
    need(outer, "outer");
    if (n_inner > n_mid) throw rgfo::PreconditionError("inner layer larger than middle layer");
    auto mids = list(mid, n_mid);
    rgfo::TriplePattern tp{outer->g, mids, std::vector<rgfo::Vertex>(mids.begin(), mids.begin() + n_inner)};
    auto* d = std::get_if<rgfo::DoubleExtensionProperty>(&e->config.property);
    std::vector<rgfo::TriplePattern> family = d ? d->family : std::vector<rgfo::TriplePattern>{};
    family.push_back(tp);
    rgfo::validate_triple_family(family);
    e->config.property = rgfo::DoubleExtensionProperty{std::move(family)};
  });
}

rgfo_status rgfo_experiment_set_closure_bound(rgfo_experiment* e, int64_t c, unsigned t, const char* eps,
                                              unsigned bases_per_trial) {
  return guard([&] {
    need(e, "experiment");
    rgfo::ClosureBoundProperty p;
    p.c = c;
    p.t = t;
    p.bases_per_trial = bases_per_trial;
    e->derive_eps = eps == nullptr;
    if (eps) p.eps = rational(eps);
    e->config.property = p;
  });
}

rgfo_status rgfo_experiment_run(const rgfo_experiment* e, int csv, char** out) {
  return guard([&] {
    need(e, "experiment");
    need(out, "out");
    rgfo::ExperimentConfig config = e->config;
    if (auto* p = std::get_if<rgfo::ClosureBoundProperty>(&config.property); p && e->derive_eps)
      p->eps = rgfo::closure_bound_epsilon(config.alpha, p->t);
    auto est = rgfo::estimate(config);
    *out = dup(csv ? rgfo::to_csv(est) : estimate_json(est).dump());
  });
}

}  // extern "C"
