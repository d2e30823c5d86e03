#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "avm/types.hpp"

namespace avm {

/// Indexable set of dense ids supporting O(1) insert, erase and uniform sampling.
class IndexedSet {
 public:
  explicit IndexedSet(std::size_t universe = 0) : pos_(universe, kAbsent) {}

  void grow(std::size_t universe) { pos_.resize(universe, kAbsent); }
  bool contains(std::uint32_t id) const noexcept { return pos_[id] != kAbsent; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::uint32_t operator[](std::size_t i) const noexcept { return items_[i]; }
  std::span<const std::uint32_t> items() const noexcept { return items_; }

  void insert(std::uint32_t id) {
    if (contains(id)) return;
    pos_[id] = static_cast<std::uint32_t>(items_.size());
    items_.push_back(id);
  }

  void erase(std::uint32_t id) {
    if (!contains(id)) return;
    const std::uint32_t p = pos_[id];
    const std::uint32_t last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[id] = kAbsent;
  }

 private:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;
  std::vector<std::uint32_t> items_;
  std::vector<std::uint32_t> pos_;
};

/// Undirected multigraph of agents joined by two-member groups.
///
/// Parallel groups on the same pair are allowed, self-groups are not. Every
/// edit keeps PatternCounts, the discordant-group index and the per-opinion
/// agent index consistent with the graph, in O(degree) for set_opinion and
/// O(1) for rewire_group.
class VoterGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  VoterGraph() = default;
  /// Throws GraphError on out-of-range endpoints or self-pairs.
  VoterGraph(std::span<const Opinion> opinions, std::span<const Edge> edges);

  std::size_t n_agents() const noexcept { return opinions_.size(); }
  std::size_t n_groups() const noexcept { return groups_.size(); }

  Opinion opinion(AgentId a) const;
  std::array<AgentId, 2> endpoints(GroupId g) const;
  /// The endpoint of g that is not a. Requires a to be an endpoint.
  AgentId other_endpoint(GroupId g, AgentId a) const;
  bool is_discordant(GroupId g) const;
  std::span<const GroupId> incident_groups(AgentId a) const;
  std::size_t degree(AgentId a) const { return incident_groups(a).size(); }

  const PatternCounts& counts() const noexcept { return counts_; }

  /// Discordant groups, uniformly indexable.
  std::size_t n_discordant() const noexcept { return discordant_.size(); }
  GroupId discordant_at(std::size_t i) const noexcept { return GroupId{discordant_[i]}; }
  std::span<const std::uint32_t> discordant_groups() const noexcept { return discordant_.items(); }

  /// Agents holding opinion o, uniformly indexable.
  std::size_t n_holding(Opinion o) const noexcept { return holders_[slot(o)].size(); }
  AgentId holder_at(Opinion o, std::size_t i) const noexcept { return AgentId{holders_[slot(o)][i]}; }

  const std::vector<Opinion>& opinions() const noexcept { return opinions_; }
  /// Current edge list in group-id order.
  std::vector<Edge> edge_list() const;

  void set_opinion(AgentId a, Opinion o);
  /// Moves the non-`keep` endpoint of g to new_peer. new_peer equal to the
  /// current other endpoint is a permitted no-op.
  void rewire_group(GroupId g, AgentId keep, AgentId new_peer);

  /// From-scratch recount; never reads the cache.
  PatternCounts recount() const;

 private:
  static constexpr std::size_t slot(Opinion o) noexcept { return static_cast<std::size_t>(o); }
  void check_agent(AgentId a) const;
  void check_group(GroupId g) const;
  std::int64_t& class_count(Opinion a, Opinion b) noexcept;
  void attach(GroupId g, std::size_t side, AgentId a);
  void detach(GroupId g, std::size_t side);
  void refresh_discordant(GroupId g);

  std::vector<Opinion> opinions_;
  std::vector<std::array<AgentId, 2>> groups_;
  // slot_[g][k]: position of g inside incidence_[groups_[g][k]]
  std::vector<std::array<std::uint32_t, 2>> slot_;
  std::vector<std::vector<GroupId>> incidence_;
  PatternCounts counts_;
  IndexedSet discordant_;
  std::array<IndexedSet, 2> holders_;
};

}  // namespace avm
