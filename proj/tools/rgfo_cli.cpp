// Command-line front end. Talks to the library only through rgfo.h.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "rgfo/rgfo.h"

using nlohmann::json;

namespace {

bool g_json = false;

struct Failure {
  rgfo_status status;
  std::string message;
};

void check(rgfo_status s) {
  if (s != RGFO_OK) throw Failure{s, rgfo_last_error()};
}

struct FormulaDel {
  void operator()(rgfo_formula* f) const { rgfo_formula_free(f); }
};
struct GraphDel {
  void operator()(rgfo_graph* g) const { rgfo_graph_free(g); }
};
struct ExperimentDel {
  void operator()(rgfo_experiment* e) const { rgfo_experiment_free(e); }
};
using FormulaPtr = std::unique_ptr<rgfo_formula, FormulaDel>;
using GraphPtr = std::unique_ptr<rgfo_graph, GraphDel>;
using ExperimentPtr = std::unique_ptr<rgfo_experiment, ExperimentDel>;

std::string take(char* s) {
  std::string out(s ? s : "");
  rgfo_string_free(s);
  return out;
}

// "corpus:NAME", a path to a formula file, or the formula text itself.
FormulaPtr load_formula(const std::string& arg, const std::vector<std::string>& free_vars = {}) {
  rgfo_formula* f = nullptr;
  if (arg.rfind("corpus:", 0) == 0) {
    check(rgfo_formula_corpus(arg.substr(7).c_str(), &f));
    return FormulaPtr(f);
  }
  std::string text = arg;
  std::ifstream in(arg);
  if (in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::vector<const char*> names;
  for (const auto& v : free_vars) names.push_back(v.c_str());
  check(rgfo_formula_parse(text.c_str(), names.data(), names.size(), &f));
  return FormulaPtr(f);
}

GraphPtr load_graph(const std::string& path) {
  rgfo_graph* g = nullptr;
  check(rgfo_graph_read_file(path.c_str(), &g));
  return GraphPtr(g);
}

std::string formula_text(const rgfo_formula* f) {
  char* s = nullptr;
  check(rgfo_formula_to_string(f, &s));
  return take(s);
}

std::string quantifiers(const rgfo_formula* f) {
  char* s = nullptr;
  check(rgfo_formula_quantifiers(f, &s));
  return take(s);
}

void emit_formula(const rgfo_formula* f, json extra = json::object()) {
  std::string text = formula_text(f);
  if (g_json) {
    extra["formula"] = text;
    extra["quantifiers"] = quantifiers(f);
    std::cout << extra.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
}

void emit_bool(const char* key, bool v) {
  if (g_json)
    std::cout << json{{key, v}}.dump() << "\n";
  else
    std::cout << (v ? "true" : "false") << "\n";
}

void emit_value(const char* key, const std::string& v) {
  if (g_json)
    std::cout << json{{key, v}}.dump() << "\n";
  else
    std::cout << v << "\n";
}

std::vector<uint32_t> to_u32(const std::vector<unsigned>& xs) { return {xs.begin(), xs.end()}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order logic, Ehrenfeucht games and densities on graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g_json, "Emit JSON");

  std::string formula_arg, graph_arg, h_arg, alpha = "1", out_format = "csv", property = "subgraph", eps;
  std::vector<std::string> free_vars, outer_files;
  std::vector<unsigned> roots, base, gx, hy, mid;
  std::vector<size_t> ns;
  unsigned t = 1, rounds = 1, trials = 100, m_cap = 3, bases = 16, inner_count = 0;
  uint64_t seed = 0;
  bool seeded = false, synthesize = false, witness = false;
  double timeout = 5.0;
  int64_t c = 1;
  std::string mode = "plain", pattern_arg;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a formula canonically");
  parse_cmd->add_option("formula", formula_arg)->required();
  parse_cmd->add_option("--free", free_vars, "Variables allowed to occur free")->delimiter(',');

  auto* metrics_cmd = app.add_subcommand("metrics", "Quantifier depth and alternations");
  metrics_cmd->add_option("formula", formula_arg)->required();

  auto* pnf_cmd = app.add_subcommand("pnf", "Prenex normal form");
  pnf_cmd->add_option("formula", formula_arg)->required();
  auto* nepnf_cmd = app.add_subcommand("nepnf", "Prenex form with distinctness guards");
  nepnf_cmd->add_option("formula", formula_arg)->required();
  auto* alt_cmd = app.add_subcommand("pnf-alt", "Alternation-preserving prenex form");
  alt_cmd->add_option("formula", formula_arg)->required();

  auto* density_cmd = app.add_subcommand("density", "Maximal density of a graph");
  density_cmd->add_option("--graph", graph_arg)->required();

  auto add_pair = [&](CLI::App* cmd) {
    cmd->add_option("--graph", graph_arg, "Pattern graph G")->required();
    cmd->add_option("--roots", roots, "Vertices of H, in order")->delimiter(',');
  };
  auto* rel_cmd = app.add_subcommand("reldensity", "Maximal relative density of a pattern pair");
  add_pair(rel_cmd);
  auto* safe_cmd = app.add_subcommand("safe", "Whether a pattern pair is alpha-safe");
  add_pair(safe_cmd);
  safe_cmd->add_option("--alpha", alpha)->required();
  safe_cmd->add_flag("--witness", witness, "Report a rigid subextension when not safe");
  auto* rigid_cmd = app.add_subcommand("rigid", "Whether a pattern pair is alpha-rigid");
  add_pair(rigid_cmd);
  rigid_cmd->add_option("--alpha", alpha)->required();

  auto* closure_cmd = app.add_subcommand("closure", "t-closure of a vertex set");
  closure_cmd->add_option("--graph", graph_arg)->required();
  closure_cmd->add_option("--base", base)->delimiter(',');
  closure_cmd->add_option("--t", t);
  closure_cmd->add_option("--alpha", alpha)->required();
  closure_cmd->add_option("--seed", seed, "Shuffle the candidate order with this seed");

  auto* check_cmd = app.add_subcommand("check", "Model-check a sentence on a graph");
  check_cmd->add_option("graph", graph_arg)->required();
  check_cmd->add_option("formula", formula_arg)->required();
  check_cmd->add_option("--timeout", timeout, "Seconds; 0 disables");

  auto* props_cmd = app.add_subcommand("props", "Structural predicates of a graph");
  props_cmd->add_option("graph", graph_arg)->required();
  props_cmd->add_option("--m-cap", m_cap, "Largest tuple checked for the sparse extension property");
  props_cmd->add_option("--pattern", pattern_arg, "Also test the extension property of this pattern");
  props_cmd->add_option("--roots", roots)->delimiter(',');

  auto* game_cmd = app.add_subcommand("game", "Solve an Ehrenfeucht game");
  game_cmd->add_option("g-file", graph_arg)->required();
  game_cmd->add_option("h-file", h_arg)->required();
  game_cmd->add_option("--rounds", rounds)->required();
  game_cmd->add_option("--alt-mode", mode, "plain, atmost:k or exact:k");
  game_cmd->add_flag("--synthesize", synthesize);
  game_cmd->add_option("--gx", gx, "Preset vertices in g")->delimiter(',');
  game_cmd->add_option("--hy", hy, "Preset vertices in h")->delimiter(',');

  auto add_experiment = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha)->required();
    cmd->add_option("--n", ns)->delimiter(',')->required();
    cmd->add_option("--trials", trials);
    cmd->add_option("--seed", seed);
    cmd->add_option("--out", out_format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--timeout", timeout, "Seconds per trial");
  };
  auto* probe_cmd = app.add_subcommand("probe", "Estimate P(G(n, n^-alpha) satisfies a sentence)");
  probe_cmd->add_option("--formula", formula_arg)->required();
  add_experiment(probe_cmd);

  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate the probability of a graph property");
  estimate_cmd->add_option("--property", property)
      ->check(CLI::IsMember({"sentence", "subgraph", "extension", "double-extension", "closure-bound"}));
  estimate_cmd->add_option("--formula", formula_arg);
  estimate_cmd->add_option("--pattern", pattern_arg);
  estimate_cmd->add_option("--roots", roots)->delimiter(',');
  estimate_cmd->add_option("--outer", outer_files, "Outer pattern files for double-extension");
  estimate_cmd->add_option("--mid", mid, "Middle roots in each outer pattern")->delimiter(',');
  estimate_cmd->add_option("--inner", inner_count, "How many of the middle roots form the inner layer");
  estimate_cmd->add_option("--c", c, "Base size for closure-bound");
  estimate_cmd->add_option("--t", t);
  estimate_cmd->add_option("--eps", eps, "Defaults to the gap below alpha");
  estimate_cmd->add_option("--bases", bases, "Random bases per trial");
  add_experiment(estimate_cmd);

  auto* corpus_cmd = app.add_subcommand("corpus", "List or print built-in sentences");
  corpus_cmd->add_option("name", formula_arg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : 2;
  }
  seeded = closure_cmd->count("--seed") > 0;

  try {
    if (*parse_cmd) {
      emit_formula(load_formula(formula_arg, free_vars).get());
    } else if (*metrics_cmd) {
      auto f = load_formula(formula_arg);
      unsigned d = 0, a = 0;
      check(rgfo_formula_metrics(f.get(), &d, &a));
      std::cout << json{{"depth", d}, {"alternations", a}}.dump() << "\n";
    } else if (*pnf_cmd || *nepnf_cmd) {
      auto f = load_formula(formula_arg);
      rgfo_formula* out = nullptr;
      check(*pnf_cmd ? rgfo_formula_pnf(f.get(), &out) : rgfo_formula_nepnf(f.get(), &out));
      FormulaPtr r(out);
      emit_formula(r.get());
    } else if (*alt_cmd) {
      auto f = load_formula(formula_arg);
      rgfo_formula* out = nullptr;
      std::vector<unsigned> trace(256);
      size_t len = 0;
      check(rgfo_formula_pnf_alt(f.get(), &out, trace.data(), trace.size(), &len));
      FormulaPtr r(out);
      trace.resize(std::min(len, trace.size()));
      emit_formula(r.get(), json{{"mu_trace", trace}});
    } else if (*density_cmd) {
      auto g = load_graph(graph_arg);
      char* s = nullptr;
      check(rgfo_max_density(g.get(), &s));
      emit_value("density", take(s));
    } else if (*rel_cmd) {
      auto g = load_graph(graph_arg);
      auto r = to_u32(roots);
      char* s = nullptr;
      check(rgfo_rel_density(g.get(), r.data(), r.size(), &s));
      emit_value("relative_density", take(s));
    } else if (*safe_cmd) {
      auto g = load_graph(graph_arg);
      auto r = to_u32(roots);
      if (witness) {
        char* s = nullptr;
        check(rgfo_rigid_subextension(g.get(), r.data(), r.size(), alpha.c_str(), &s));
        std::cout << take(s) << "\n";
      } else {
        int v = 0;
        check(rgfo_is_safe(g.get(), r.data(), r.size(), alpha.c_str(), &v));
        emit_bool("safe", v);
      }
    } else if (*rigid_cmd) {
      auto g = load_graph(graph_arg);
      auto r = to_u32(roots);
      int v = 0;
      check(rgfo_is_rigid(g.get(), r.data(), r.size(), alpha.c_str(), &v));
      emit_bool("rigid", v);
    } else if (*closure_cmd) {
      auto g = load_graph(graph_arg);
      auto b = to_u32(base);
      char* s = nullptr;
      check(rgfo_closure(g.get(), b.data(), b.size(), t, alpha.c_str(), seeded, seed, &s));
      std::string out = take(s);
      if (g_json) {
        std::cout << out << "\n";
      } else {
        auto j = json::parse(out);
        std::string line;
        for (const auto& v : j["closure"]) line += (line.empty() ? "" : " ") + std::to_string(v.get<unsigned>());
        std::cout << line << "\n";
      }
    } else if (*check_cmd) {
      auto g = load_graph(graph_arg);
      auto f = load_formula(formula_arg);
      int v = 0;
      check(rgfo_models(g.get(), f.get(), timeout, &v));
      emit_bool("models", v);
    } else if (*props_cmd) {
      auto g = load_graph(graph_arg);
      char* s = nullptr;
      check(rgfo_case1_properties(g.get(), m_cap, &s));
      auto j = json::parse(take(s));
      if (!pattern_arg.empty()) {
        auto p = load_graph(pattern_arg);
        auto r = to_u32(roots);
        int v = 0;
        check(rgfo_has_extension(g.get(), p.get(), r.data(), r.size(), &v));
        j["extension"] = static_cast<bool>(v);
      }
      std::cout << j.dump() << "\n";
    } else if (*game_cmd) {
      auto g = load_graph(graph_arg);
      auto h = load_graph(h_arg);
      if (gx.empty() && hy.empty()) {
        char* s = nullptr;
        check(rgfo_game(g.get(), h.get(), rounds, mode.c_str(), synthesize, &s));
        std::cout << take(s) << "\n";
      } else {
        if (mode != "plain" || synthesize)
          throw Failure{RGFO_E_PRECONDITION, "preset games are plain and do not synthesize"};
        if (gx.size() != hy.size()) throw Failure{RGFO_E_PRECONDITION, "--gx and --hy differ in length"};
        auto a = to_u32(gx), b = to_u32(hy);
        int dup_wins = 0;
        check(rgfo_game_prefixed(g.get(), a.data(), h.get(), b.data(), a.size(), rounds, &dup_wins));
        std::cout << json{{"winner", dup_wins ? "duplicator" : "spoiler"}}.dump() << "\n";
      }
    } else if (*probe_cmd || *estimate_cmd) {
      ExperimentPtr e(rgfo_experiment_new());
      if (!e) throw Failure{RGFO_E_INTERNAL, rgfo_last_error()};
      check(rgfo_experiment_set_alpha(e.get(), alpha.c_str()));
      check(rgfo_experiment_set_ns(e.get(), ns.data(), ns.size()));
      check(rgfo_experiment_set_trials(e.get(), trials));
      check(rgfo_experiment_set_seed(e.get(), seed));
      check(rgfo_experiment_set_timeout(e.get(), timeout));
      std::string kind = *probe_cmd ? "sentence" : property;
      if (kind == "sentence") {
        if (formula_arg.empty()) throw Failure{RGFO_E_ARGUMENT, "--formula is required"};
        auto f = load_formula(formula_arg);
        check(rgfo_experiment_set_sentence(e.get(), f.get()));
      } else if (kind == "subgraph" || kind == "extension") {
        if (pattern_arg.empty()) throw Failure{RGFO_E_ARGUMENT, "--pattern is required"};
        auto p = load_graph(pattern_arg);
        auto r = to_u32(roots);
        check(kind == "subgraph" ? rgfo_experiment_set_subgraph(e.get(), p.get())
                                 : rgfo_experiment_set_extension(e.get(), p.get(), r.data(), r.size()));
      } else if (kind == "double-extension") {
        if (outer_files.empty()) throw Failure{RGFO_E_ARGUMENT, "--outer is required"};
        auto m = to_u32(mid);
        for (const auto& file : outer_files) {
          auto w = load_graph(file);
          check(rgfo_experiment_add_double_extension(e.get(), w.get(), m.data(), m.size(), inner_count));
        }
      } else {
        check(rgfo_experiment_set_closure_bound(e.get(), c, t, eps.empty() ? nullptr : eps.c_str(), bases));
      }
      char* s = nullptr;
      check(rgfo_experiment_run(e.get(), out_format == "csv", &s));
      std::string out = take(s);
      std::cout << out;
      if (out_format != "csv") std::cout << "\n";
    } else if (*corpus_cmd) {
      if (formula_arg.empty()) {
        char* s = nullptr;
        check(rgfo_corpus_names(&s));
        auto names = json::parse(take(s));
        if (g_json)
          std::cout << names.dump() << "\n";
        else
          for (const auto& n : names) std::cout << n.get<std::string>() << "\n";
      } else {
        emit_formula(load_formula("corpus:" + formula_arg).get());
      }
    }
  } catch (const Failure& f) {
    if (g_json)
      std::cout << json{{"error", {{"kind", rgfo_status_name(f.status)}, {"message", f.message}}}}.dump() << "\n";
    else
      std::cerr << "error: " << f.message << "\n";
    return f.status == RGFO_E_ARGUMENT ? 2 : 1;
  }
  return 0;
}
