#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "avm/patterns.hpp"
#include "avm/voter_graph.hpp"

namespace avm {

enum class RuleId : std::uint8_t {
  RewireKeepOne,
  RewireKeepZero,
  AdoptToOne,
  AdoptToZero,
  ExtRewireKeepOne,
  ExtRewireKeepZero,
  ExtAdoptToOne,
  ExtAdoptToZero,
};

inline constexpr std::size_t kRuleCount = 8;

std::string_view to_string(RuleId id) noexcept;

enum class Effect : std::uint8_t {
  Rewire,           // actor keeps the group, the other endpoint moves to the actor-opinion extra
  SetActorOpinion,  // actor adopts its peer's opinion
};

/// A rule as data: what it matches and what it does. Every motif is oriented
/// One-Zero; `actor` picks which endpoint of the discordant group acts.
struct RuleSpec {
  RuleId id;
  Motif motif;
  Effect effect;
  Opinion actor;

  /// Opinion the actor ends up with.
  constexpr Opinion target() const noexcept { return effect == Effect::Rewire ? actor : flip(actor); }
};

const RuleSpec& rule_spec(RuleId id);
/// RewireKeepOne, RewireKeepZero, AdoptToOne, AdoptToZero, in RuleId order.
std::span<const RuleSpec, 4> basic_rules();
/// The four rules sharing the discordant-edge-plus-one-agent-of-each-opinion motif.
std::span<const RuleSpec, 4> extended_rules();
/// Ext* -> its basic counterpart; basic rules map to themselves.
RuleId basic_counterpart(RuleId id) noexcept;

/// What one rule application did.
struct EventRecord {
  RuleId rule = RuleId::AdoptToOne;
  GroupId group = kNoGroup;
  AgentId actor = kNoAgent;
  AgentId peer = kNoAgent;      // the actor's discordant partner before the event
  AgentId new_peer = kNoAgent;  // rewire target; kNoAgent for adopt
  PatternCounts before;
  PatternCounts after;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

AgentId actor_of(const RuleSpec& r, const Match& m) noexcept;

/// Applies rule r at match m. Throws StaleMatchError when m is no longer admissible.
EventRecord apply(VoterGraph& g, const RuleSpec& r, const Match& m);

/// Projection of an extended-rule match onto its basic counterpart's motif.
Match project_to_basic(const RuleSpec& ext, const Match& m);

}  // namespace avm
