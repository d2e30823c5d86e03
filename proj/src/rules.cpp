#include "avm/rules.hpp"

namespace avm {

namespace {

constexpr Opinion kOne = Opinion::One;
constexpr Opinion kZero = Opinion::Zero;

constexpr std::array<RuleSpec, kRuleCount> kRules{{
    {RuleId::RewireKeepOne, Motif::edge_plus_vertex(kOne, kZero, kOne), Effect::Rewire, kOne},
    {RuleId::RewireKeepZero, Motif::edge_plus_vertex(kOne, kZero, kZero), Effect::Rewire, kZero},
    {RuleId::AdoptToOne, Motif::edge(kOne, kZero), Effect::SetActorOpinion, kZero},
    {RuleId::AdoptToZero, Motif::edge(kOne, kZero), Effect::SetActorOpinion, kOne},
    {RuleId::ExtRewireKeepOne, Motif::edge_plus_two_vertices(kOne, kZero), Effect::Rewire, kOne},
    {RuleId::ExtRewireKeepZero, Motif::edge_plus_two_vertices(kOne, kZero), Effect::Rewire, kZero},
    {RuleId::ExtAdoptToOne, Motif::edge_plus_two_vertices(kOne, kZero), Effect::SetActorOpinion, kZero},
    {RuleId::ExtAdoptToZero, Motif::edge_plus_two_vertices(kOne, kZero), Effect::SetActorOpinion, kOne},
}};

}  // namespace

std::string_view to_string(RuleId id) noexcept {
  switch (id) {
    case RuleId::RewireKeepOne: return "RewireKeepOne";
    case RuleId::RewireKeepZero: return "RewireKeepZero";
    case RuleId::AdoptToOne: return "AdoptToOne";
    case RuleId::AdoptToZero: return "AdoptToZero";
    case RuleId::ExtRewireKeepOne: return "ExtRewireKeepOne";
    case RuleId::ExtRewireKeepZero: return "ExtRewireKeepZero";
    case RuleId::ExtAdoptToOne: return "ExtAdoptToOne";
    case RuleId::ExtAdoptToZero: return "ExtAdoptToZero";
  }
  return "?";
}

const RuleSpec& rule_spec(RuleId id) { return kRules[static_cast<std::size_t>(id)]; }

std::span<const RuleSpec, 4> basic_rules() { return std::span<const RuleSpec, 4>(kRules.data(), 4); }

std::span<const RuleSpec, 4> extended_rules() { return std::span<const RuleSpec, 4>(kRules.data() + 4, 4); }

RuleId basic_counterpart(RuleId id) noexcept {
  const auto i = static_cast<std::uint8_t>(id);
  return static_cast<RuleId>(i >= 4 ? i - 4 : i);
}

AgentId actor_of(const RuleSpec& r, const Match& m) noexcept {
  return r.actor == r.motif.first ? m.first : m.second;
}

EventRecord apply(VoterGraph& g, const RuleSpec& r, const Match& m) {
  if (!is_admissible(g, r.motif, m)) {
    throw StaleMatchError(std::string("match is not admissible for rule ") + std::string(to_string(r.id)));
  }
  EventRecord ev;
  ev.rule = r.id;
  ev.group = m.group;
  ev.actor = actor_of(r, m);
  ev.peer = g.other_endpoint(m.group, ev.actor);
  ev.before = g.counts();
  if (r.effect == Effect::Rewire) {
    ev.new_peer = m.extra(r.actor);
    g.rewire_group(m.group, ev.actor, ev.new_peer);
  } else {
    g.set_opinion(ev.actor, r.target());
  }
  ev.after = g.counts();
  return ev;
}

Match project_to_basic(const RuleSpec& ext, const Match& m) {
  Match out = m;
  out.extras = {kNoAgent, kNoAgent};
  if (ext.effect == Effect::Rewire) {
    out.extras[static_cast<std::size_t>(ext.actor)] = m.extra(ext.actor);
  }
  return out;
}

}  // namespace avm
