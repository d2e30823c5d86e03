#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "avm/engines.hpp"
#include "avm/rules.hpp"
#include "avm/voter_graph.hpp"

namespace avm {

class OracleError : public Error {
 public:
  using Error::Error;
};

/// Labeled graph state: opinions plus the sorted edge multiset (each edge i < j).
/// Group identities are forgotten, agent labels are kept.
struct CanonicalState {
  std::vector<Opinion> opinions;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  static CanonicalState of(const VoterGraph& g);
  VoterGraph to_graph() const;

  friend bool operator==(const CanonicalState&, const CanonicalState&) = default;
  friend auto operator<=>(const CanonicalState&, const CanonicalState&) = default;
};

using StateDistribution = std::map<CanonicalState, double>;

enum class BranchKind : std::uint8_t { Effective, ConcordantGroup, NoRewireCandidate };

/// One leaf of the DTMC decision tree.
struct Branch {
  BranchKind kind = BranchKind::Effective;
  std::optional<RuleId> rule;
  GroupId group = kNoGroup;
  AgentId actor = kNoAgent;
  AgentId new_peer = kNoAgent;
  CanonicalState successor;
  double probability = 0.0;
};

/// Every leaf of one DTMC round from g, with its exact path probability
/// (1/N_E per group, 1/2 per endpoint, alpha or 1-alpha, 1/(N_x-1) per peer).
/// Throws OracleError when g has no groups.
std::vector<Branch> one_step_exact(const VoterGraph& g, double alpha);

/// Branches aggregated by successor, effective ones only, renormalized.
/// Empty when no effective transition exists.
StateDistribution effective_successors(const std::vector<Branch>& branches);

struct EnumerateOptions {
  std::size_t cap = 200'000;
  /// Additionally stop in states where either opinion has fewer than two
  /// holders: the states where the common-motif chain halts.
  bool stop_below_two_holders = false;
};

struct StateSpace {
  std::vector<CanonicalState> states;  // states[0] is the start state
  std::map<CanonicalState, std::size_t> index;
  /// kernel[i]: successors of state i with probabilities, aggregated and sorted by index.
  std::vector<std::vector<std::pair<std::size_t, double>>> kernel;
  std::vector<bool> absorbing;
};

/// Successor law of the next effective transition of a CTMC semantics, built
/// from effective_transition_law by applying every match to a copy of g.
StateDistribution ctmc_embedded_successors(const VoterGraph& g, const EngineConfig& cfg);

/// Largest pointwise gap between two distributions (missing keys count as 0).
double max_abs_difference(const StateDistribution& a, const StateDistribution& b);

/// Breadth-first enumeration of every state reachable from g0, with the exact
/// one-step kernel. NoOp mass stays on the diagonal; absorbing states carry a
/// unit self-loop. Throws OracleError when the cap is exceeded.
StateSpace enumerate(const VoterGraph& g0, double alpha, const EnumerateOptions& options = {});

/// Distribution over absorbing states when starting from `start`, via the
/// first-step linear system on the transient states.
StateDistribution absorption_distribution(const StateSpace& space, std::size_t start = 0);

}  // namespace avm
