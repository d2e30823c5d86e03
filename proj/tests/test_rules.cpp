#include <gtest/gtest.h>

#include "avm/rules.hpp"
#include "test_support.hpp"

using namespace avm;
using avm::testing::expect_consistent;
using avm::testing::make_graph;
using avm::testing::random_multigraph;

TEST(Rules, ExtendedRulesShareOneMotif) {
  for (const RuleSpec& r : extended_rules()) {
    EXPECT_EQ(r.motif, extended_rules()[0].motif);
    EXPECT_EQ(r.motif.kind, MotifKind::EdgePlusTwoVertices);
    EXPECT_EQ(basic_counterpart(r.id), rule_spec(basic_counterpart(r.id)).id);
    EXPECT_EQ(rule_spec(basic_counterpart(r.id)).effect, r.effect);
    EXPECT_EQ(rule_spec(basic_counterpart(r.id)).actor, r.actor);
  }
  for (const RuleSpec& r : basic_rules()) EXPECT_EQ(basic_counterpart(r.id), r.id);
}

TEST(Rules, AdoptToZero) {
  VoterGraph g = make_graph({1, 0}, {{0, 1}});
  const RuleSpec& r = rule_spec(RuleId::AdoptToZero);
  const auto matches = enumerate_matches(g, r.motif);
  ASSERT_EQ(matches.size(), 1u);
  const EventRecord ev = apply(g, r, matches[0]);
  EXPECT_EQ(ev.actor, agent(0));
  EXPECT_EQ(ev.peer, agent(1));
  EXPECT_EQ(g.opinion(agent(0)), Opinion::Zero);
  EXPECT_EQ(g.counts().n_00, 1);
  EXPECT_EQ(ev.after, g.counts());
  EXPECT_EQ(ev.before.n_01, 1);
}

TEST(Rules, RewireKeepOne) {
  VoterGraph g = make_graph({1, 0, 1}, {{0, 1}});
  const RuleSpec& r = rule_spec(RuleId::RewireKeepOne);
  const auto matches = enumerate_matches(g, r.motif);
  ASSERT_EQ(matches.size(), 1u);
  const EventRecord ev = apply(g, r, matches[0]);
  EXPECT_EQ(ev.new_peer, agent(2));
  EXPECT_EQ(g.edge_list(), (std::vector<VoterGraph::Edge>{{0, 2}}));
  EXPECT_EQ(g.counts().n_11, 1);
  EXPECT_EQ(g.counts().n_01, 0);
}

TEST(Rules, ExtAdoptPreservesContext) {
  VoterGraph g = make_graph({1, 0, 1, 0}, {{0, 1}, {2, 3}});
  const RuleSpec& r = rule_spec(RuleId::ExtAdoptToOne);
  const Match m = enumerate_matches(g, r.motif).front();
  const auto edges_before = g.edge_list();
  const Opinion one_extra = g.opinion(m.extra(Opinion::One));
  const Opinion zero_extra = g.opinion(m.extra(Opinion::Zero));
  apply(g, r, m);
  EXPECT_EQ(g.opinion(m.second), Opinion::One);
  EXPECT_EQ(g.opinion(m.first), Opinion::One);
  EXPECT_EQ(g.opinion(m.extra(Opinion::One)), one_extra);
  EXPECT_EQ(g.opinion(m.extra(Opinion::Zero)), zero_extra);
  EXPECT_EQ(g.edge_list(), edges_before);
}

TEST(Rules, StaleMatchIsRejected) {
  VoterGraph g = make_graph({1, 0, 1}, {{0, 1}});
  const RuleSpec& r = rule_spec(RuleId::RewireKeepOne);
  const Match m = enumerate_matches(g, r.motif).front();
  g.set_opinion(agent(1), Opinion::One);
  const PatternCounts before = g.counts();
  EXPECT_THROW(apply(g, r, m), StaleMatchError);
  EXPECT_EQ(g.counts(), before);
  EXPECT_EQ(g.edge_list(), (std::vector<VoterGraph::Edge>{{0, 1}}));
}

// Over a corpus: every application conserves N_V and N_E; rewires drop n_01 by
// exactly one; an adopt changes n_01 by (#actor groups to the old opinion side)
// minus (#actor groups to the target side), computed from the neighborhood;
// and each extended rule acts exactly like its basic projection.
TEST(Rules, EffectsOnCorpus) {
  RandomStream rng(31337);
  for (int k = 0; k < 60; ++k) {
    const VoterGraph g0 = random_multigraph(3 + rng.uniform_index(8), 1 + rng.uniform_index(15), rng);
    for (std::size_t ri = 0; ri < kRuleCount; ++ri) {
      const RuleSpec& r = rule_spec(static_cast<RuleId>(ri));
      for (const Match& m : enumerate_matches(g0, r.motif)) {
        VoterGraph g = g0;
        const AgentId actor = actor_of(r, m);
        std::int64_t to_target = 0;
        std::int64_t to_own = 0;
        for (const GroupId gr : g.incident_groups(actor)) {
          (g.opinion(g.other_endpoint(gr, actor)) == r.target() ? to_target : to_own) += 1;
        }
        const EventRecord ev = apply(g, r, m);
        ASSERT_EQ(ev.after.n_agents(), ev.before.n_agents());
        ASSERT_EQ(ev.after.n_groups(), ev.before.n_groups());
        expect_consistent(g);
        if (r.effect == Effect::Rewire) {
          ASSERT_EQ(ev.after.n_01, ev.before.n_01 - 1);
        } else {
          ASSERT_EQ(ev.after.n_01 - ev.before.n_01, to_own - to_target);
          ASSERT_LT(ev.after.n_01, ev.before.n_01 + to_own);
        }
        if (ri >= 4) {
          VoterGraph h = g0;
          apply(h, rule_spec(basic_counterpart(r.id)), project_to_basic(r, m));
          ASSERT_EQ(h.edge_list(), g.edge_list());
          ASSERT_EQ(h.opinions(), g.opinions());
        }
      }
    }
  }
}
