#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rgfo/formula.hpp"
#include "rgfo/graph.hpp"

namespace rgfo {

enum class AltMode { Plain, AtMost, Exactly };

struct GameSpec {
  unsigned rounds = 1;
  AltMode mode = AltMode::Plain;
  unsigned k = 0;  // ignored in plain mode

  void validate() const;
};

// "plain", "atmost:k" or "exact:k".
GameSpec parse_game_spec(unsigned rounds, const std::string& mode);
std::string format_alt_mode(const GameSpec& spec);

enum class Side { G, H };
enum class Winner { Spoiler, Duplicator };

// Spoiler's winning move and, for every Duplicator reply, the continuation.
// A reply without a continuation ends with the position already broken.
struct StrategyNode {
  Side side;
  Vertex vertex;
  std::vector<std::pair<Vertex, std::shared_ptr<const StrategyNode>>> replies;
};

struct GameOutcome {
  Winner winner = Winner::Duplicator;
  std::shared_ptr<const StrategyNode> strategy;  // set iff Spoiler wins and a move is needed
};

GameOutcome solve(const Graph& g, const Graph& h, const GameSpec& spec);

// The first m moves are preset; q - m rounds remain. Plain mode.
GameOutcome solve_prefixed(const Graph& g, const std::vector<Vertex>& gx, const Graph& h,
                           const std::vector<Vertex>& hy, unsigned q);

bool equivalent_k(const Graph& g, const std::vector<Vertex>& gx, const Graph& h, const std::vector<Vertex>& hy,
                  unsigned k);

// Sentence true on g and false on h built from Spoiler's strategy, or
// nothing when Duplicator wins.
std::optional<Formula> synthesize_distinguishing(const Graph& g, const Graph& h, const GameSpec& spec);

}  // namespace rgfo
