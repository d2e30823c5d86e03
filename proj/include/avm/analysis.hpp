#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avm/engines.hpp"
#include "avm/voter_graph.hpp"

namespace avm {

/// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t i);
  /// True if a merge happened.
  bool unite(std::size_t a, std::size_t b);
  std::size_t size_of(std::size_t i) { return size_[find(i)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

enum class OpinionProfile : std::uint8_t { AllOne, AllZero, Mixed };
std::string_view to_string(OpinionProfile p) noexcept;

struct Component {
  std::size_t size = 0;
  OpinionProfile profile = OpinionProfile::Mixed;
};

struct ComponentReport {
  std::size_t n_components = 0;
  /// Ordered by smallest member agent.
  std::vector<Component> components;
  /// At least two components, every one homogeneous.
  bool fragmented = false;
  /// min(N_one, N_zero) / N_V; 0 for an empty graph.
  double minority_fraction = 0.0;
};

/// Connected components over group endpoints; isolated agents are singleton components.
ComponentReport components(const VoterGraph& g);

/// One CSV row of a sweep.
struct SweepRecord {
  std::string model;
  double alpha = 0.0;
  double u = 0.0;
  std::size_t n_agents = 0;
  std::size_t n_edges = 0;
  std::uint64_t run = 0;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint64_t effective_events = 0;
  double sim_time = 0.0;
  AbsorbReason absorb_reason = AbsorbReason::NoDiscordant;
  double minority_frac_final = 0.0;
  std::size_t n_components = 0;
  bool fragmented = false;
  /// Unset when wall-clock timing was not requested.
  std::optional<double> wallclock_ms;
};

struct RunLabel {
  double alpha = 0.0;
  double u = 0.0;
  std::uint64_t run = 0;
};

SweepRecord summarize(const Trajectory& t, const VoterGraph& g_final, const RunLabel& label);

}  // namespace avm
