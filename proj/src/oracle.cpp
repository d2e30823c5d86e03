#include "avm/oracle.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <string>

namespace avm {

namespace {

using EdgeVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

CanonicalState canonical(std::vector<Opinion> opinions, EdgeVec edges) {
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  return {std::move(opinions), std::move(edges)};
}

EdgeVec raw_edges(const VoterGraph& g) {
  EdgeVec out;
  out.reserve(g.n_groups());
  for (const auto& [u, v] : g.edge_list()) {
    out.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace

CanonicalState CanonicalState::of(const VoterGraph& g) { return canonical(g.opinions(), raw_edges(g)); }

VoterGraph CanonicalState::to_graph() const {
  std::vector<VoterGraph::Edge> e;
  e.reserve(edges.size());
  for (const auto& [a, b] : edges) e.emplace_back(a, b);
  return VoterGraph(opinions, e);
}

// Successors are built by editing the raw opinion/edge vectors, not through
// VoterGraph's incremental edit path, so the oracle stays independent of it.
std::vector<Branch> one_step_exact(const VoterGraph& g, double alpha) {
  const std::size_t n_groups = g.n_groups();
  if (n_groups == 0) throw OracleError("one-step kernel is undefined on a graph without groups");
  const std::vector<Opinion>& ops = g.opinions();
  const EdgeVec edges = raw_edges(g);
  const CanonicalState self = canonical(ops, edges);

  std::size_t holders[2] = {0, 0};
  for (const Opinion o : ops) ++holders[static_cast<std::size_t>(o)];

  std::vector<Branch> out;
  const double p_group = 1.0 / static_cast<double>(n_groups);
  for (std::size_t gi = 0; gi < n_groups; ++gi) {
    const auto [u, v] = edges[gi];
    if (ops[u] == ops[v]) {
      Branch b;
      b.kind = BranchKind::ConcordantGroup;
      b.group = group(gi);
      b.successor = self;
      b.probability = p_group;
      out.push_back(std::move(b));
      continue;
    }
    for (const auto& [actor, peer] : {std::pair{u, v}, std::pair{v, u}}) {
      const Opinion x = ops[actor];
      const double p_side = p_group * 0.5;
      if (alpha > 0.0) {
        const RuleId rule = x == Opinion::One ? RuleId::RewireKeepOne : RuleId::RewireKeepZero;
        const std::size_t candidates = holders[static_cast<std::size_t>(x)] - 1;
        if (candidates == 0) {
          Branch b;
          b.kind = BranchKind::NoRewireCandidate;
          b.rule = rule;
          b.group = group(gi);
          b.actor = agent(actor);
          b.successor = self;
          b.probability = p_side * alpha;
          out.push_back(std::move(b));
        } else {
          for (std::uint32_t c = 0; c < ops.size(); ++c) {
            if (c == actor || ops[c] != x) continue;
            EdgeVec next = edges;
            next[gi] = {actor, c};
            Branch b;
            b.rule = rule;
            b.group = group(gi);
            b.actor = agent(actor);
            b.new_peer = agent(c);
            b.successor = canonical(ops, std::move(next));
            b.probability = p_side * alpha / static_cast<double>(candidates);
            out.push_back(std::move(b));
          }
        }
      }
      if (alpha < 1.0) {
        std::vector<Opinion> next = ops;
        next[actor] = ops[peer];
        Branch b;
        b.rule = ops[peer] == Opinion::One ? RuleId::AdoptToOne : RuleId::AdoptToZero;
        b.group = group(gi);
        b.actor = agent(actor);
        b.successor = canonical(std::move(next), edges);
        b.probability = p_side * (1.0 - alpha);
        out.push_back(std::move(b));
      }
    }
  }
  return out;
}

StateDistribution effective_successors(const std::vector<Branch>& branches) {
  StateDistribution d;
  double total = 0.0;
  for (const Branch& b : branches) {
    if (b.kind != BranchKind::Effective) continue;
    d[b.successor] += b.probability;
    total += b.probability;
  }
  if (total > 0.0) {
    for (auto& [s, p] : d) p /= total;
  }
  return d;
}

StateDistribution ctmc_embedded_successors(const VoterGraph& g, const EngineConfig& cfg) {
  StateDistribution d;
  for (const RuleTransition& t : effective_transition_law(g, cfg)) {
    VoterGraph next = g;
    apply(next, rule_spec(t.rule), t.match);
    d[CanonicalState::of(next)] += t.probability;
  }
  return d;
}

double max_abs_difference(const StateDistribution& a, const StateDistribution& b) {
  double gap = 0.0;
  for (const auto& [s, p] : a) {
    const auto it = b.find(s);
    gap = std::max(gap, std::abs(p - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [s, p] : b) {
    if (!a.contains(s)) gap = std::max(gap, std::abs(p));
  }
  return gap;
}

StateSpace enumerate(const VoterGraph& g0, double alpha, const EnumerateOptions& options) {
  StateSpace sp;
  const auto intern = [&](const CanonicalState& s) {
    const auto [it, fresh] = sp.index.emplace(s, sp.states.size());
    if (fresh) {
      if (sp.states.size() >= options.cap) {
        throw OracleError("reachable state space exceeds the cap of " + std::to_string(options.cap) + " states");
      }
      sp.states.push_back(s);
    }
    return it->second;
  };

  intern(CanonicalState::of(g0));
  for (std::size_t i = 0; i < sp.states.size(); ++i) {
    const VoterGraph g = sp.states[i].to_graph();
    const PatternCounts& c = g.counts();
    bool stop = c.n_01 == 0 ||
                (options.stop_below_two_holders && (c.n_one < 2 || c.n_zero < 2));
    std::vector<Branch> branches;
    if (!stop) {
      branches = one_step_exact(g, alpha);
      stop = std::none_of(branches.begin(), branches.end(),
                          [](const Branch& b) { return b.kind == BranchKind::Effective; });
    }
    sp.absorbing.push_back(stop);
    std::map<std::size_t, double> row;
    if (stop) {
      row[i] = 1.0;
    } else {
      for (const Branch& b : branches) row[intern(b.successor)] += b.probability;
    }
    sp.kernel.emplace_back(row.begin(), row.end());
  }
  return sp;
}

StateDistribution absorption_distribution(const StateSpace& space, std::size_t start) {
  if (start >= space.states.size()) throw OracleError("start state index out of range");
  StateDistribution out;
  if (space.absorbing[start]) {
    out[space.states[start]] = 1.0;
    return out;
  }
  const std::size_t n = space.states.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> transient(n, kNone);
  std::size_t n_transient = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!space.absorbing[i]) transient[i] = n_transient++;
  }

  // Expected visits y from `start`: (I - Q)^T y = e_start.
  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < n; ++i) {
    if (transient[i] == kNone) continue;
    const auto ti = static_cast<int>(transient[i]);
    entries.emplace_back(ti, ti, 1.0);
    for (const auto& [j, p] : space.kernel[i]) {
      if (transient[j] == kNone) continue;
      entries.emplace_back(static_cast<int>(transient[j]), ti, -p);
    }
  }
  Eigen::SparseMatrix<double> a(static_cast<int>(n_transient), static_cast<int>(n_transient));
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw OracleError("absorption system is singular");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<int>(n_transient));
  rhs(static_cast<int>(transient[start])) = 1.0;
  const Eigen::VectorXd visits = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw OracleError("absorption solve failed");

  for (std::size_t i = 0; i < n; ++i) {
    if (transient[i] == kNone) continue;
    const double y = visits(static_cast<int>(transient[i]));
    for (const auto& [j, p] : space.kernel[i]) {
      if (transient[j] == kNone) out[space.states[j]] += y * p;
    }
  }
  return out;
}

}  // namespace avm
