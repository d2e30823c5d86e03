#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "avm/random_stream.hpp"
#include "avm/rules.hpp"
#include "avm/voter_graph.hpp"

namespace avm {

enum class Semantics : std::uint8_t {
  Dtmc,             // reference decision-tree chain
  CtmcWeighted,     // rewire propensities divided by (N_x - 1)
  CtmcMassAction,   // base rate times full match count
  CtmcUniformized,  // total rate 1, fixed per-rule probabilities
  CtmcLcm,          // extended rules over one common motif
};

/// CLI names: dtmc, ctmc-weighted, ctmc-mass-action, ctmc-uniform, ctmc-lcm.
std::string_view to_string(Semantics s) noexcept;
std::optional<Semantics> parse_semantics(std::string_view name) noexcept;

/// Base rates of the mass-action semantics.
struct MassActionRates {
  double kappa_rewire_one = 1.0;
  double kappa_rewire_zero = 1.0;
  double alpha_adopt_one = 1.0;
  double alpha_adopt_zero = 1.0;
};

/// Per-rule probabilities for the uniformized chain, in basic RuleId order.
using RuleProbabilities = std::array<double, 4>;

/// (alpha/2, alpha/2, (1-alpha)/2, (1-alpha)/2).
RuleProbabilities probabilities_from_alpha(double alpha) noexcept;

struct EngineConfig {
  Semantics semantics = Semantics::Dtmc;
  double alpha = 0.5;
  MassActionRates rates;
  /// Uniformized chain only; derived from alpha when unset.
  std::optional<RuleProbabilities> uniform_probs;
  std::uint64_t max_steps = 10'000'000;
  double max_time = std::numeric_limits<double>::infinity();
  /// DTMC: draw among all groups and count inactive rounds as steps.
  bool count_noop_steps = false;
  /// Record counts every `sample_stride` steps; 0 keeps only the first and last sample.
  std::uint64_t sample_stride = 0;
  bool record_events = true;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  RuleProbabilities effective_uniform_probs() const { return uniform_probs.value_or(probabilities_from_alpha(alpha)); }
};

enum class StepKind : std::uint8_t { Effective, NoOp, Absorbed };
enum class NoOpReason : std::uint8_t { None, ConcordantGroup, NoRewireCandidate, RuleWithoutMatch };
enum class AbsorbReason : std::uint8_t { NoDiscordant, NoEffectiveRule, StepLimit, TimeLimit };

std::string_view to_string(NoOpReason r) noexcept;
std::string_view to_string(AbsorbReason r) noexcept;

struct StepOutcome {
  StepKind kind = StepKind::NoOp;
  EventRecord event;                      // valid when Effective
  NoOpReason noop = NoOpReason::None;     // valid when NoOp
  AbsorbReason absorbed = AbsorbReason::NoDiscordant;  // valid when Absorbed
  double dt = 0.0;                        // CTMC holding time; 0 for DTMC and Absorbed
  std::optional<RuleId> rule;             // selected rule, also for rule-level NoOps
};

/// Propensities over the four rule classes in basic RuleId order, with the
/// global 1/N_E factor dropped.
std::array<double, 4> weighted_propensities(const PatternCounts& c, double alpha) noexcept;
std::array<double, 4> mass_action_propensities(const PatternCounts& c, const MassActionRates& r) noexcept;
/// Ordered as extended_rules().
std::array<double, 4> lcm_propensities(const PatternCounts& c, double alpha) noexcept;

/// One decision-tree round: uniform group among all N_E; concordant -> NoOp;
/// uniform acting endpoint; rewire with probability alpha to a uniform
/// same-opinion agent (NoOp if none), otherwise adopt. Throws ConfigError if N_E = 0.
StepOutcome dtmc_step(VoterGraph& g, double alpha, RandomStream& rng);
/// dtmc_step conditioned on drawing a discordant group. Absorbed if there is none.
StepOutcome dtmc_discordant_step(VoterGraph& g, double alpha, RandomStream& rng);

StepOutcome ctmc_weighted_step(VoterGraph& g, double alpha, RandomStream& rng);
StepOutcome ctmc_mass_action_step(VoterGraph& g, const MassActionRates& rates, RandomStream& rng);
/// Throws ConfigError unless probs are nonnegative and sum to 1 within 1e-12.
StepOutcome ctmc_uniformized_step(VoterGraph& g, const RuleProbabilities& probs, RandomStream& rng);
StepOutcome ctmc_lcm_step(VoterGraph& g, double alpha, RandomStream& rng);

/// One possible next effective transition of a CTMC semantics.
struct RuleTransition {
  RuleId rule;
  Match match;
  double probability = 0.0;
};

/// Exact law of the next effective transition under a CTMC semantics: rule j
/// with probability a_j / A, then a uniform match of rule j (for the
/// uniformized chain, p_j renormalized over rules that have matches). Matches
/// come from exhaustive enumeration. Empty when nothing can fire. Throws
/// ConfigError for the DTMC, whose law lives in the oracle.
std::vector<RuleTransition> effective_transition_law(const VoterGraph& g, const EngineConfig& cfg);

/// Probability that one DTMC round on a discordant group is effective, times n_01.
/// Zero with n_01 > 0 means the chain is stuck.
double dtmc_effective_mass(const PatternCounts& c, double alpha) noexcept;

struct TimedEvent {
  std::uint64_t step = 0;
  double time = 0.0;
  EventRecord event;
};

struct Sample {
  std::uint64_t step = 0;
  double time = 0.0;
  PatternCounts counts;
};

struct FinalSummary {
  bool absorbed = false;
  AbsorbReason reason = AbsorbReason::NoDiscordant;
  PatternCounts counts;
  std::uint64_t steps = 0;
  std::uint64_t effective_events = 0;
  double time = 0.0;  // CTMC clock; number of steps for the DTMC
  std::uint64_t seed = 0;
};

struct Trajectory {
  Semantics semantics = Semantics::Dtmc;
  std::vector<TimedEvent> events;
  std::vector<Sample> samples;
  FinalSummary final;
};

/// Runs the configured semantics on g until absorption or a limit.
/// Deterministic in (g, config, rng seed).
Trajectory run(VoterGraph& g, const EngineConfig& config, RandomStream& rng);

/// One JSON object per line: a header, every event, every sample, the final summary.
void write_trajectory_jsonl(const Trajectory& t, std::ostream& out);

}  // namespace avm
