#include "avm/analysis.hpp"

#include <algorithm>
#include <numeric>

namespace avm {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t i) {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

std::string_view to_string(OpinionProfile p) noexcept {
  switch (p) {
    case OpinionProfile::AllOne: return "AllOne";
    case OpinionProfile::AllZero: return "AllZero";
    case OpinionProfile::Mixed: return "Mixed";
  }
  return "?";
}

ComponentReport components(const VoterGraph& g) {
  const std::size_t n = g.n_agents();
  UnionFind uf(n);
  for (const auto& [u, v] : g.edge_list()) uf.unite(u, v);

  ComponentReport rep;
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> slot_of_root(n, kUnseen);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    const OpinionProfile mine =
        g.opinion(agent(i)) == Opinion::One ? OpinionProfile::AllOne : OpinionProfile::AllZero;
    if (slot_of_root[r] == kUnseen) {
      slot_of_root[r] = rep.components.size();
      rep.components.push_back({0, mine});
    }
    Component& c = rep.components[slot_of_root[r]];
    ++c.size;
    if (c.profile != mine) c.profile = OpinionProfile::Mixed;
  }
  rep.n_components = rep.components.size();
  rep.fragmented = rep.n_components >= 2 &&
                   std::none_of(rep.components.begin(), rep.components.end(),
                                [](const Component& c) { return c.profile == OpinionProfile::Mixed; });
  const PatternCounts& c = g.counts();
  if (n > 0) {
    rep.minority_fraction = static_cast<double>(std::min(c.n_one, c.n_zero)) / static_cast<double>(n);
  }
  return rep;
}

SweepRecord summarize(const Trajectory& t, const VoterGraph& g_final, const RunLabel& label) {
  const ComponentReport rep = components(g_final);
  SweepRecord r;
  r.model = std::string(to_string(t.semantics));
  r.alpha = label.alpha;
  r.u = label.u;
  r.n_agents = g_final.n_agents();
  r.n_edges = g_final.n_groups();
  r.run = label.run;
  r.seed = t.final.seed;
  r.steps = t.final.steps;
  r.effective_events = t.final.effective_events;
  r.sim_time = t.final.time;
  r.absorb_reason = t.final.reason;
  r.minority_frac_final = rep.minority_fraction;
  r.n_components = rep.n_components;
  r.fragmented = rep.fragmented;
  return r;
}

}  // namespace avm
