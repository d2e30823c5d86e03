#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "avm/random_stream.hpp"
#include "avm/voter_graph.hpp"

namespace avm {

enum class MotifKind : std::uint8_t { Vertex, Edge, EdgePlusVertex, EdgePlusTwoVertices };

/// One of the four fixed pattern shapes the rules are built from.
///
/// `first`/`second` are the opinions of the group's two endpoints (first is
/// the acting agent for rules). EdgePlusVertex binds one extra agent of
/// opinion `extra`; EdgePlusTwoVertices binds one extra agent of each opinion.
/// Matching is injective: extras never coincide with endpoints or each other.
struct Motif {
  MotifKind kind = MotifKind::Vertex;
  Opinion first = Opinion::Zero;
  Opinion second = Opinion::Zero;
  Opinion extra = Opinion::Zero;

  static constexpr Motif vertex(Opinion o) { return {MotifKind::Vertex, o, o, o}; }
  static constexpr Motif edge(Opinion a, Opinion b) { return {MotifKind::Edge, a, b, a}; }
  static constexpr Motif edge_plus_vertex(Opinion a, Opinion b, Opinion x) {
    return {MotifKind::EdgePlusVertex, a, b, x};
  }
  static constexpr Motif edge_plus_two_vertices(Opinion a, Opinion b) {
    return {MotifKind::EdgePlusTwoVertices, a, b, a};
  }

  friend bool operator==(const Motif&, const Motif&) = default;
};

/// Injective assignment of a motif's nodes to graph elements.
///
/// For Vertex motifs only `first` is bound. Edge matches are unordered in the
/// group: when the two endpoint opinions differ, `first` is the endpoint with
/// the motif's first opinion; otherwise `first` is endpoints(group)[0].
/// Extras are indexed by opinion (extras[0] Zero, extras[1] One).
struct Match {
  GroupId group = kNoGroup;
  AgentId first = kNoAgent;
  AgentId second = kNoAgent;
  std::array<AgentId, 2> extras{kNoAgent, kNoAgent};

  AgentId extra(Opinion o) const noexcept { return extras[static_cast<std::size_t>(o)]; }

  friend bool operator==(const Match&, const Match&) = default;
  friend auto operator<=>(const Match&, const Match&) = default;
};

/// Number of admissible matches, in closed form from pattern counts.
std::int64_t count_motif(const PatternCounts& c, const Motif& m) noexcept;
inline std::int64_t count_motif(const VoterGraph& g, const Motif& m) { return count_motif(g.counts(), m); }

/// Every admissible match, by exhaustive enumeration. Independent of the
/// pattern-count cache; used for verification.
std::vector<Match> enumerate_matches(const VoterGraph& g, const Motif& m);

/// True iff m is an admissible match of motif in g right now.
bool is_admissible(const VoterGraph& g, const Motif& motif, const Match& m);

/// A uniformly random admissible match, or nullopt when there is none.
std::optional<Match> sample_match_uniform(const VoterGraph& g, const Motif& m, RandomStream& rng);

/// For x in {One, Zero}: enumerated |matches of (One-Zero edge, extra x)|
/// equals n_01 * (N_x - 1) from the cache.
bool verify_counting_identity(const VoterGraph& g);

}  // namespace avm
