#include "avm/engines.hpp"

#include <cmath>
#include <string>

#include "json.hpp"

namespace avm {

namespace {

using Propensities = std::array<double, 4>;

struct Selection {
  bool absorbed = false;
  AbsorbReason reason = AbsorbReason::NoDiscordant;
  double dt = 0.0;
  std::size_t rule = 0;
};

AbsorbReason stuck_reason(const PatternCounts& c) noexcept {
  return c.n_01 == 0 ? AbsorbReason::NoDiscordant : AbsorbReason::NoEffectiveRule;
}

// Index of the slot containing r in the cumulative sums of weights, scanning in
// order. Falls back to the last positive weight when rounding leaves r past the end.
std::size_t pick(const Propensities& w, double r) noexcept {
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] <= 0.0) continue;
    last_positive = j;
    cum += w[j];
    if (r < cum) return j;
  }
  return last_positive;
}

// Direct-method Gillespie selection: holding time first, then the rule.
Selection gillespie_select(const Propensities& a, const PatternCounts& c, RandomStream& rng) {
  double total = 0.0;
  for (const double x : a) total += x;
  if (!(total > 0.0)) return {true, stuck_reason(c), 0.0, 0};
  Selection s;
  s.dt = rng.exponential(total);
  s.rule = pick(a, rng.uniform01() * total);
  return s;
}

StepOutcome absorbed(AbsorbReason reason) {
  StepOutcome out;
  out.kind = StepKind::Absorbed;
  out.absorbed = reason;
  return out;
}

StepOutcome noop(NoOpReason reason, double dt, std::optional<RuleId> rule = std::nullopt) {
  StepOutcome out;
  out.kind = StepKind::NoOp;
  out.noop = reason;
  out.dt = dt;
  out.rule = rule;
  return out;
}

// Applies a uniformly sampled match of r, or reports a rule-level NoOp.
StepOutcome fire(VoterGraph& g, const RuleSpec& r, double dt, RandomStream& rng) {
  const auto m = sample_match_uniform(g, r.motif, rng);
  if (!m) return noop(NoOpReason::RuleWithoutMatch, dt, r.id);
  StepOutcome out;
  out.kind = StepKind::Effective;
  out.event = apply(g, r, *m);
  out.dt = dt;
  out.rule = r.id;
  return out;
}

// Decision tree below the group draw: acting endpoint, rewire vs adopt, peer.
StepOutcome dtmc_act(VoterGraph& g, GroupId gr, double alpha, RandomStream& rng) {
  const auto ends = g.endpoints(gr);
  const AgentId actor = ends[rng.uniform_index(2)];
  const AgentId peer = g.other_endpoint(gr, actor);
  const Opinion x = g.opinion(actor);

  Match m;
  m.group = gr;
  m.first = x == Opinion::One ? actor : peer;
  m.second = x == Opinion::One ? peer : actor;

  if (rng.bernoulli(alpha)) {
    const RuleSpec& r = rule_spec(x == Opinion::One ? RuleId::RewireKeepOne : RuleId::RewireKeepZero);
    if (g.n_holding(x) < 2) return noop(NoOpReason::NoRewireCandidate, 0.0, r.id);
    AgentId c;
    do {
      c = g.holder_at(x, rng.uniform_index(g.n_holding(x)));
    } while (c == actor);
    m.extras[static_cast<std::size_t>(x)] = c;
    StepOutcome out;
    out.kind = StepKind::Effective;
    out.event = apply(g, r, m);
    out.rule = r.id;
    return out;
  }
  const RuleSpec& r = rule_spec(x == Opinion::One ? RuleId::AdoptToZero : RuleId::AdoptToOne);
  StepOutcome out;
  out.kind = StepKind::Effective;
  out.event = apply(g, r, m);
  out.rule = r.id;
  return out;
}

void validate_probs(const RuleProbabilities& p) {
  double sum = 0.0;
  for (const double x : p) {
    if (!(x >= 0.0)) throw ConfigError("uniform_probs: every probability must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ConfigError("uniform_probs: probabilities must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

nlohmann::json counts_json(const PatternCounts& c) {
  return {{"n_one", c.n_one}, {"n_zero", c.n_zero}, {"n_11", c.n_11}, {"n_01", c.n_01}, {"n_00", c.n_00}};
}

}  // namespace

std::string_view to_string(Semantics s) noexcept {
  switch (s) {
    case Semantics::Dtmc: return "dtmc";
    case Semantics::CtmcWeighted: return "ctmc-weighted";
    case Semantics::CtmcMassAction: return "ctmc-mass-action";
    case Semantics::CtmcUniformized: return "ctmc-uniform";
    case Semantics::CtmcLcm: return "ctmc-lcm";
  }
  return "?";
}

std::optional<Semantics> parse_semantics(std::string_view name) noexcept {
  for (const auto s : {Semantics::Dtmc, Semantics::CtmcWeighted, Semantics::CtmcMassAction,
                       Semantics::CtmcUniformized, Semantics::CtmcLcm}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(NoOpReason r) noexcept {
  switch (r) {
    case NoOpReason::None: return "None";
    case NoOpReason::ConcordantGroup: return "ConcordantGroup";
    case NoOpReason::NoRewireCandidate: return "NoRewireCandidate";
    case NoOpReason::RuleWithoutMatch: return "RuleWithoutMatch";
  }
  return "?";
}

std::string_view to_string(AbsorbReason r) noexcept {
  switch (r) {
    case AbsorbReason::NoDiscordant: return "NoDiscordant";
    case AbsorbReason::NoEffectiveRule: return "NoEffectiveRule";
    case AbsorbReason::StepLimit: return "StepLimit";
    case AbsorbReason::TimeLimit: return "TimeLimit";
  }
  return "?";
}

RuleProbabilities probabilities_from_alpha(double alpha) noexcept {
  return {alpha / 2, alpha / 2, (1 - alpha) / 2, (1 - alpha) / 2};
}

void EngineConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0,1]");
  if (semantics == Semantics::CtmcMassAction) {
    if (!(rates.kappa_rewire_one > 0.0)) throw ConfigError("kappa_rewire_one must be positive");
    if (!(rates.kappa_rewire_zero > 0.0)) throw ConfigError("kappa_rewire_zero must be positive");
    if (!(rates.alpha_adopt_one > 0.0)) throw ConfigError("alpha_adopt_one must be positive");
    if (!(rates.alpha_adopt_zero > 0.0)) throw ConfigError("alpha_adopt_zero must be positive");
  }
  if (semantics == Semantics::CtmcUniformized) validate_probs(effective_uniform_probs());
  if (max_steps == 0) throw ConfigError("max_steps must be positive");
  if (!(max_time > 0.0)) throw ConfigError("max_time must be positive");
}

std::array<double, 4> weighted_propensities(const PatternCounts& c, double alpha) noexcept {
  const auto n01 = static_cast<double>(c.n_01);
  const double rewire = alpha / 2 * n01;
  const double adopt = (1 - alpha) / 2 * n01;
  return {c.n_one >= 2 ? rewire : 0.0, c.n_zero >= 2 ? rewire : 0.0, adopt, adopt};
}

std::array<double, 4> mass_action_propensities(const PatternCounts& c, const MassActionRates& r) noexcept {
  const auto n01 = static_cast<double>(c.n_01);
  const auto spare = [](std::int64_t n) { return static_cast<double>(n > 0 ? n - 1 : 0); };
  return {r.kappa_rewire_one * n01 * spare(c.n_one), r.kappa_rewire_zero * n01 * spare(c.n_zero),
          r.alpha_adopt_one * n01, r.alpha_adopt_zero * n01};
}

std::array<double, 4> lcm_propensities(const PatternCounts& c, double alpha) noexcept {
  const double matches = static_cast<double>(count_motif(c, extended_rules()[0].motif));
  const double rewire = alpha / 2 * matches;
  const double adopt = (1 - alpha) / 2 * matches;
  return {rewire, rewire, adopt, adopt};
}

double dtmc_effective_mass(const PatternCounts& c, double alpha) noexcept {
  const double rewire_sides = (c.n_one >= 2 ? 1.0 : 0.0) + (c.n_zero >= 2 ? 1.0 : 0.0);
  return static_cast<double>(c.n_01) * (alpha / 2 * rewire_sides + (1 - alpha));
}

StepOutcome dtmc_step(VoterGraph& g, double alpha, RandomStream& rng) {
  if (g.n_groups() == 0) throw ConfigError("the DTMC is undefined on a graph without groups");
  const GroupId gr = group(rng.uniform_index(g.n_groups()));
  if (!g.is_discordant(gr)) return noop(NoOpReason::ConcordantGroup, 0.0);
  return dtmc_act(g, gr, alpha, rng);
}

StepOutcome dtmc_discordant_step(VoterGraph& g, double alpha, RandomStream& rng) {
  if (g.n_discordant() == 0) return absorbed(AbsorbReason::NoDiscordant);
  return dtmc_act(g, g.discordant_at(rng.uniform_index(g.n_discordant())), alpha, rng);
}

StepOutcome ctmc_weighted_step(VoterGraph& g, double alpha, RandomStream& rng) {
  const Selection s = gillespie_select(weighted_propensities(g.counts(), alpha), g.counts(), rng);
  if (s.absorbed) return absorbed(s.reason);
  return fire(g, basic_rules()[s.rule], s.dt, rng);
}

StepOutcome ctmc_mass_action_step(VoterGraph& g, const MassActionRates& rates, RandomStream& rng) {
  const Selection s = gillespie_select(mass_action_propensities(g.counts(), rates), g.counts(), rng);
  if (s.absorbed) return absorbed(s.reason);
  return fire(g, basic_rules()[s.rule], s.dt, rng);
}

StepOutcome ctmc_uniformized_step(VoterGraph& g, const RuleProbabilities& probs, RandomStream& rng) {
  validate_probs(probs);
  const double dt = rng.exponential(1.0);
  const std::size_t j = pick(probs, rng.uniform01());
  return fire(g, basic_rules()[j], dt, rng);
}

StepOutcome ctmc_lcm_step(VoterGraph& g, double alpha, RandomStream& rng) {
  const Selection s = gillespie_select(lcm_propensities(g.counts(), alpha), g.counts(), rng);
  if (s.absorbed) return absorbed(s.reason);
  return fire(g, extended_rules()[s.rule], s.dt, rng);
}

std::vector<RuleTransition> effective_transition_law(const VoterGraph& g, const EngineConfig& cfg) {
  const PatternCounts& c = g.counts();
  std::array<double, 4> weights{};
  std::span<const RuleSpec, 4> rules = basic_rules();
  switch (cfg.semantics) {
    case Semantics::Dtmc:
      throw ConfigError("effective_transition_law: use the oracle for the DTMC");
    case Semantics::CtmcWeighted:
      weights = weighted_propensities(c, cfg.alpha);
      break;
    case Semantics::CtmcMassAction:
      weights = mass_action_propensities(c, cfg.rates);
      break;
    case Semantics::CtmcLcm:
      weights = lcm_propensities(c, cfg.alpha);
      rules = extended_rules();
      break;
    case Semantics::CtmcUniformized:
      weights = cfg.effective_uniform_probs();
      for (std::size_t j = 0; j < 4; ++j) {
        if (count_motif(g, rules[j].motif) == 0) weights[j] = 0.0;
      }
      break;
  }
  double total = 0.0;
  for (const double w : weights) total += w;
  std::vector<RuleTransition> law;
  if (!(total > 0.0)) return law;
  for (std::size_t j = 0; j < 4; ++j) {
    if (weights[j] <= 0.0) continue;
    const auto matches = enumerate_matches(g, rules[j].motif);
    const double each = weights[j] / total / static_cast<double>(matches.size());
    for (const Match& m : matches) law.push_back({rules[j].id, m, each});
  }
  return law;
}

namespace {

// Whether the configured process can still change the graph.
std::optional<AbsorbReason> halted(const VoterGraph& g, const EngineConfig& cfg) {
  const PatternCounts& c = g.counts();
  if (c.n_01 == 0) return AbsorbReason::NoDiscordant;
  switch (cfg.semantics) {
    case Semantics::Dtmc:
      if (dtmc_effective_mass(c, cfg.alpha) <= 0.0) return AbsorbReason::NoEffectiveRule;
      break;
    case Semantics::CtmcUniformized: {
      const auto p = cfg.effective_uniform_probs();
      bool any = false;
      for (std::size_t j = 0; j < 4; ++j) {
        any = any || (p[j] > 0.0 && count_motif(g, basic_rules()[j].motif) > 0);
      }
      if (!any) return AbsorbReason::NoEffectiveRule;
      break;
    }
    default:
      break;  // Gillespie engines detect a zero total propensity themselves
  }
  return std::nullopt;
}

}  // namespace

Trajectory run(VoterGraph& g, const EngineConfig& cfg, RandomStream& rng) {
  cfg.validate();
  Trajectory t;
  t.semantics = cfg.semantics;
  FinalSummary& fin = t.final;
  fin.seed = rng.seed();
  const bool dtmc = cfg.semantics == Semantics::Dtmc;
  t.samples.push_back({0, 0.0, g.counts()});

  for (;;) {
    if (const auto reason = halted(g, cfg)) {
      fin.absorbed = true;
      fin.reason = *reason;
      break;
    }
    if (fin.steps >= cfg.max_steps) {
      fin.reason = AbsorbReason::StepLimit;
      break;
    }

    StepOutcome out;
    if (dtmc) {
      out = cfg.count_noop_steps ? dtmc_step(g, cfg.alpha, rng) : dtmc_discordant_step(g, cfg.alpha, rng);
      if (out.kind == StepKind::NoOp && !cfg.count_noop_steps) continue;
      ++fin.steps;
      fin.time = static_cast<double>(fin.steps);
    } else {
      // Select first so a holding time past max_time can be refused before firing.
      Selection s;
      const RuleSpec* rule = nullptr;
      const PatternCounts& c = g.counts();
      switch (cfg.semantics) {
        case Semantics::CtmcWeighted:
          s = gillespie_select(weighted_propensities(c, cfg.alpha), c, rng);
          rule = &basic_rules()[s.rule];
          break;
        case Semantics::CtmcMassAction:
          s = gillespie_select(mass_action_propensities(c, cfg.rates), c, rng);
          rule = &basic_rules()[s.rule];
          break;
        case Semantics::CtmcLcm:
          s = gillespie_select(lcm_propensities(c, cfg.alpha), c, rng);
          rule = &extended_rules()[s.rule];
          break;
        case Semantics::CtmcUniformized:
          s.dt = rng.exponential(1.0);
          s.rule = pick(cfg.effective_uniform_probs(), rng.uniform01());
          rule = &basic_rules()[s.rule];
          break;
        case Semantics::Dtmc:
          break;
      }
      if (s.absorbed) {
        fin.absorbed = true;
        fin.reason = s.reason;
        break;
      }
      if (fin.time + s.dt > cfg.max_time) {
        fin.reason = AbsorbReason::TimeLimit;
        fin.time = cfg.max_time;
        break;
      }
      out = fire(g, *rule, s.dt, rng);
      ++fin.steps;
      fin.time += s.dt;
    }

    if (out.kind == StepKind::Effective) {
      ++fin.effective_events;
      if (cfg.record_events) t.events.push_back({fin.steps, fin.time, out.event});
    }
    if (cfg.sample_stride != 0 && fin.steps % cfg.sample_stride == 0) {
      t.samples.push_back({fin.steps, fin.time, g.counts()});
    }
  }

  fin.counts = g.counts();
  if (t.samples.back().step != fin.steps || t.samples.back().counts != fin.counts) {
    t.samples.push_back({fin.steps, fin.time, fin.counts});
  }
  return t;
}

void write_trajectory_jsonl(const Trajectory& t, std::ostream& out) {
  out << nlohmann::json{{"type", "header"}, {"semantics", to_string(t.semantics)}, {"seed", t.final.seed}}.dump()
      << '\n';
  for (const auto& e : t.events) {
    nlohmann::json j{{"type", "event"},
                     {"step", e.step},
                     {"time", e.time},
                     {"rule", to_string(e.event.rule)},
                     {"group", index(e.event.group)},
                     {"actor", index(e.event.actor)},
                     {"peer", index(e.event.peer)},
                     {"counts", counts_json(e.event.after)}};
    j["new_peer"] = e.event.new_peer == kNoAgent ? nlohmann::json(nullptr) : nlohmann::json(index(e.event.new_peer));
    out << j.dump() << '\n';
  }
  for (const auto& s : t.samples) {
    out << nlohmann::json{{"type", "sample"}, {"step", s.step}, {"time", s.time}, {"counts", counts_json(s.counts)}}
               .dump()
        << '\n';
  }
  const FinalSummary& f = t.final;
  out << nlohmann::json{{"type", "final"},
                        {"absorbed", f.absorbed},
                        {"reason", to_string(f.reason)},
                        {"steps", f.steps},
                        {"effective_events", f.effective_events},
                        {"time", f.time},
                        {"seed", f.seed},
                        {"counts", counts_json(f.counts)}}
             .dump()
      << '\n';
}

}  // namespace avm
