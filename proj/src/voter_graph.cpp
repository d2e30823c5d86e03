#include "avm/voter_graph.hpp"

#include <string>

namespace avm {

VoterGraph::VoterGraph(std::span<const Opinion> opinions, std::span<const Edge> edges)
    : opinions_(opinions.begin(), opinions.end()),
      incidence_(opinions.size()),
      discordant_(edges.size()),
      holders_{IndexedSet(opinions.size()), IndexedSet(opinions.size())} {
  for (std::size_t i = 0; i < opinions_.size(); ++i) {
    holders_[slot(opinions_[i])].insert(static_cast<std::uint32_t>(i));
    (opinions_[i] == Opinion::One ? counts_.n_one : counts_.n_zero) += 1;
  }
  groups_.reserve(edges.size());
  slot_.resize(edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= opinions_.size() || v >= opinions_.size()) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") references an agent out of range [0," + std::to_string(opinions_.size()) + ")");
    }
    if (u == v) {
      throw GraphError("self-group on agent " + std::to_string(u) + " is not allowed");
    }
    const GroupId g = group(groups_.size());
    groups_.push_back({agent(u), agent(v)});
    attach(g, 0, agent(u));
    attach(g, 1, agent(v));
    class_count(opinions_[u], opinions_[v]) += 1;
    refresh_discordant(g);
  }
}

void VoterGraph::check_agent(AgentId a) const {
  if (index(a) >= opinions_.size()) {
    throw GraphError("unknown agent " + std::to_string(index(a)));
  }
}

void VoterGraph::check_group(GroupId g) const {
  if (index(g) >= groups_.size()) {
    throw GraphError("unknown group " + std::to_string(index(g)));
  }
}

Opinion VoterGraph::opinion(AgentId a) const {
  check_agent(a);
  return opinions_[index(a)];
}

std::array<AgentId, 2> VoterGraph::endpoints(GroupId g) const {
  check_group(g);
  return groups_[index(g)];
}

AgentId VoterGraph::other_endpoint(GroupId g, AgentId a) const {
  const auto& [u, v] = endpoints(g);
  if (u == a) return v;
  if (v == a) return u;
  throw GraphError("agent " + std::to_string(index(a)) + " is not an endpoint of group " +
                   std::to_string(index(g)));
}

bool VoterGraph::is_discordant(GroupId g) const {
  check_group(g);
  return discordant_.contains(static_cast<std::uint32_t>(g));
}

std::span<const GroupId> VoterGraph::incident_groups(AgentId a) const {
  check_agent(a);
  return incidence_[index(a)];
}

std::vector<VoterGraph::Edge> VoterGraph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(groups_.size());
  for (const auto& [u, v] : groups_) out.emplace_back(index(u), index(v));
  return out;
}

std::int64_t& VoterGraph::class_count(Opinion a, Opinion b) noexcept {
  if (a != b) return counts_.n_01;
  return a == Opinion::One ? counts_.n_11 : counts_.n_00;
}

void VoterGraph::attach(GroupId g, std::size_t side, AgentId a) {
  auto& inc = incidence_[index(a)];
  slot_[index(g)][side] = static_cast<std::uint32_t>(inc.size());
  inc.push_back(g);
}

void VoterGraph::detach(GroupId g, std::size_t side) {
  const AgentId a = groups_[index(g)][side];
  auto& inc = incidence_[index(a)];
  const std::uint32_t p = slot_[index(g)][side];
  const GroupId moved = inc.back();
  inc[p] = moved;
  const std::size_t moved_side = groups_[index(moved)][0] == a ? 0 : 1;
  slot_[index(moved)][moved_side] = p;
  inc.pop_back();
}

void VoterGraph::refresh_discordant(GroupId g) {
  const auto& [u, v] = groups_[index(g)];
  const auto id = static_cast<std::uint32_t>(g);
  if (opinions_[index(u)] != opinions_[index(v)]) {
    discordant_.insert(id);
  } else {
    discordant_.erase(id);
  }
}

void VoterGraph::set_opinion(AgentId a, Opinion o) {
  check_agent(a);
  const Opinion old = opinions_[index(a)];
  if (old == o) return;
  for (const GroupId g : incidence_[index(a)]) {
    const Opinion peer = opinions_[index(other_endpoint(g, a))];
    class_count(old, peer) -= 1;
    class_count(o, peer) += 1;
  }
  opinions_[index(a)] = o;
  holders_[slot(old)].erase(static_cast<std::uint32_t>(a));
  holders_[slot(o)].insert(static_cast<std::uint32_t>(a));
  (old == Opinion::One ? counts_.n_one : counts_.n_zero) -= 1;
  (o == Opinion::One ? counts_.n_one : counts_.n_zero) += 1;
  for (const GroupId g : incidence_[index(a)]) refresh_discordant(g);
}

void VoterGraph::rewire_group(GroupId g, AgentId keep, AgentId new_peer) {
  check_group(g);
  check_agent(new_peer);
  auto& ends = groups_[index(g)];
  std::size_t keep_side;
  if (ends[0] == keep) {
    keep_side = 0;
  } else if (ends[1] == keep) {
    keep_side = 1;
  } else {
    throw GraphError("agent " + std::to_string(index(keep)) + " is not an endpoint of group " +
                     std::to_string(index(g)));
  }
  if (new_peer == keep) {
    throw GraphError("rewiring group " + std::to_string(index(g)) + " onto its keeping agent " +
                     std::to_string(index(keep)) + " would create a self-group");
  }
  const std::size_t move_side = 1 - keep_side;
  const AgentId old_peer = ends[move_side];
  if (old_peer == new_peer) return;

  const Opinion ko = opinions_[index(keep)];
  class_count(ko, opinions_[index(old_peer)]) -= 1;
  class_count(ko, opinions_[index(new_peer)]) += 1;
  detach(g, move_side);
  ends[move_side] = new_peer;
  attach(g, move_side, new_peer);
  refresh_discordant(g);
}

PatternCounts VoterGraph::recount() const {
  PatternCounts c;
  for (const Opinion o : opinions_) (o == Opinion::One ? c.n_one : c.n_zero) += 1;
  for (const auto& [u, v] : groups_) {
    const Opinion a = opinions_[index(u)];
    const Opinion b = opinions_[index(v)];
    if (a != b) {
      ++c.n_01;
    } else if (a == Opinion::One) {
      ++c.n_11;
    } else {
      ++c.n_00;
    }
  }
  return c;
}

}  // namespace avm
