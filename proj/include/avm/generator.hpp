#pragma once

#include <cstdint>
#include <variant>

#include "avm/random_stream.hpp"
#include "avm/voter_graph.hpp"

namespace avm {

/// Exactly m distinct unordered pairs, no parallel groups.
struct FixedCount {
  std::size_t edges = 0;
};

/// Each unordered pair linked independently with probability v.
struct PerPair {
  double probability = 0.0;
};

struct InitSpec {
  std::size_t n_agents = 100;
  double u = 0.5;  // fraction of Zero-opinion agents
  std::variant<FixedCount, PerPair> edge_mode = FixedCount{400};
};

/// Number of Zero agents produced for an InitSpec: round(u * n).
std::size_t zero_count(const InitSpec& spec);

/// Random initial graph: round(u*n) Zero agents on a uniform subset, edges per edge_mode.
/// Throws ConfigError on invalid specs.
VoterGraph generate(const InitSpec& spec, RandomStream& rng);

}  // namespace avm
