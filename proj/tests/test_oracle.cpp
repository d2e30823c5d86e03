#include <gtest/gtest.h>

#include <cmath>

#include "avm/oracle.hpp"
#include "test_support.hpp"

using namespace avm;
using avm::testing::make_graph;

namespace {

CanonicalState state(std::initializer_list<int> ops, std::initializer_list<VoterGraph::Edge> edges) {
  return CanonicalState::of(make_graph(ops, edges));
}

void expect_stochastic_rows(const StateSpace& sp) {
  for (std::size_t i = 0; i < sp.kernel.size(); ++i) {
    double sum = 0.0;
    for (const auto& [j, p] : sp.kernel[i]) {
      EXPECT_GE(p, 0.0);
      EXPECT_LT(j, sp.states.size());
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12) << "row " << i;
  }
}

}  // namespace

TEST(Oracle, AbsorbedStartIsItsOwnOutcome) {
  const VoterGraph g = make_graph({1, 1, 0}, {{0, 1}});
  const StateSpace sp = enumerate(g, 0.5);
  ASSERT_EQ(sp.states.size(), 1u);
  EXPECT_TRUE(sp.absorbing[0]);
  const auto d = absorption_distribution(sp);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_DOUBLE_EQ(d.at(CanonicalState::of(g)), 1.0);
}

TEST(Oracle, TwoAgentsAlphaZero) {
  const StateSpace sp = enumerate(make_graph({1, 0}, {{0, 1}}), 0.0);
  ASSERT_EQ(sp.states.size(), 3u);
  ASSERT_EQ(sp.kernel[0].size(), 2u);
  for (const auto& [j, p] : sp.kernel[0]) EXPECT_DOUBLE_EQ(p, 0.5);
  const auto d = absorption_distribution(sp);
  EXPECT_NEAR(d.at(state({1, 1}, {{0, 1}})), 0.5, 1e-12);
  EXPECT_NEAR(d.at(state({0, 0}, {{0, 1}})), 0.5, 1e-12);
}

TEST(Oracle, ThreeAgentsAlphaOne) {
  const VoterGraph g = make_graph({1, 1, 0}, {{0, 2}});
  const auto branches = one_step_exact(g, 1.0);
  double rewired = 0.0;
  double idle = 0.0;
  for (const Branch& b : branches) (b.kind == BranchKind::Effective ? rewired : idle) += b.probability;
  EXPECT_DOUBLE_EQ(rewired, 0.5);
  EXPECT_DOUBLE_EQ(idle, 0.5);

  const StateSpace sp = enumerate(g, 1.0);
  ASSERT_EQ(sp.states.size(), 2u);
  const auto d = absorption_distribution(sp);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(d.at(state({1, 1, 0}, {{0, 1}})), 1.0, 1e-12);
}

TEST(Oracle, NoGroupsIsAnError) {
  EXPECT_THROW(one_step_exact(make_graph({1, 0}, {}), 0.5), OracleError);
}

TEST(Oracle, CapIsEnforced) {
  const VoterGraph g = make_graph({1, 1, 0, 0, 1, 0}, {{0, 2}, {1, 3}, {4, 5}, {0, 5}, {1, 2}});
  EnumerateOptions opts;
  opts.cap = 10;
  EXPECT_THROW(enumerate(g, 0.5, opts), OracleError);
}

TEST(Oracle, KernelRowsAreStochasticAndAbsorptionSumsToOne) {
  const VoterGraph g = make_graph({1, 1, 0, 0}, {{0, 2}, {1, 3}, {0, 3}});
  for (const double alpha : {0.0, 0.3, 0.7, 1.0}) {
    for (const bool restrict : {false, true}) {
      EnumerateOptions opts;
      opts.stop_below_two_holders = restrict;
      const StateSpace sp = enumerate(g, alpha, opts);
      expect_stochastic_rows(sp);
      double total = 0.0;
      for (const auto& [s, p] : absorption_distribution(sp)) {
        EXPECT_TRUE(sp.absorbing[sp.index.at(s)]);
        total += p;
      }
      EXPECT_NEAR(total, 1.0, 1e-12) << "alpha " << alpha;
    }
  }
}

// Conservation along the whole reachable space: opinions permute nothing,
// N_V and N_E fixed, and adopt-only chains never move an edge.
TEST(Oracle, ReachableStatesConserveSizes) {
  const VoterGraph g = make_graph({1, 0, 1, 0, 1}, {{0, 1}, {2, 3}, {4, 1}, {0, 3}});
  const StateSpace sp = enumerate(g, 0.0);
  for (const CanonicalState& s : sp.states) {
    EXPECT_EQ(s.opinions.size(), 5u);
    EXPECT_EQ(s.edges, CanonicalState::of(g).edges);
  }
  for (const CanonicalState& s : enumerate(g, 0.6).states) EXPECT_EQ(s.edges.size(), 4u);
}

// The weighted CTMC's jump chain equals the DTMC conditioned on an effective
// move, at every reachable state; the common-motif chain agrees wherever
// both opinions have at least two holders.
TEST(Oracle, EmbeddedChainMatchesDtmc) {
  const std::vector<VoterGraph> fixtures{
      make_graph({1, 0}, {{0, 1}}),
      make_graph({1, 1, 0}, {{0, 2}, {1, 2}}),
      make_graph({1, 1, 0, 0}, {{0, 2}, {1, 3}, {0, 3}}),
      make_graph({1, 0, 1, 0, 0}, {{0, 1}, {2, 3}, {1, 4}}),
  };
  for (const VoterGraph& g0 : fixtures) {
    for (const double alpha : {0.0, 0.25, 0.5, 1.0}) {
      const StateSpace sp = enumerate(g0, alpha);
      for (const CanonicalState& s : sp.states) {
        const VoterGraph g = s.to_graph();
        if (g.counts().n_01 == 0) continue;
        const StateDistribution dtmc = effective_successors(one_step_exact(g, alpha));
        EngineConfig cfg;
        cfg.semantics = Semantics::CtmcWeighted;
        cfg.alpha = alpha;
        EXPECT_LE(max_abs_difference(dtmc, ctmc_embedded_successors(g, cfg)), 1e-12);
        if (g.counts().n_one >= 2 && g.counts().n_zero >= 2) {
          cfg.semantics = Semantics::CtmcLcm;
          EXPECT_LE(max_abs_difference(dtmc, ctmc_embedded_successors(g, cfg)), 1e-12);
        }
      }
    }
  }
}

TEST(Oracle, MaxAbsDifference) {
  StateDistribution a{{state({1}, {}), 0.25}, {state({0}, {}), 0.75}};
  StateDistribution b{{state({1}, {}), 0.5}};
  EXPECT_DOUBLE_EQ(max_abs_difference(a, b), 0.75);
  EXPECT_DOUBLE_EQ(max_abs_difference(a, a), 0.0);
}
