#include "avm/patterns.hpp"

#include <algorithm>

namespace avm {

namespace {

std::int64_t edge_count(const PatternCounts& c, Opinion a, Opinion b) {
  if (a != b) return c.n_01;
  return a == Opinion::One ? c.n_11 : c.n_00;
}

// Agents of opinion x left over once the edge endpoints (opinions a, b) are bound.
std::int64_t free_holders(const PatternCounts& c, Opinion a, Opinion b, Opinion x) {
  const std::int64_t left = c.n_with(x) - (a == x ? 1 : 0) - (b == x ? 1 : 0);
  return std::max<std::int64_t>(left, 0);
}

// Orients group g against the motif's endpoint opinions; nullopt if it does not fit.
std::optional<Match> orient(const VoterGraph& g, GroupId gr, Opinion a, Opinion b) {
  const auto [u, v] = g.endpoints(gr);
  const Opinion ou = g.opinion(u);
  const Opinion ov = g.opinion(v);
  Match m;
  m.group = gr;
  if (ou == a && ov == b) {
    m.first = u;
    m.second = v;
  } else if (ov == a && ou == b) {
    m.first = v;
    m.second = u;
  } else {
    return std::nullopt;
  }
  return m;
}

// Uniform group with endpoint opinions {a, b}; the caller guarantees one exists.
GroupId sample_group(const VoterGraph& g, Opinion a, Opinion b, RandomStream& rng) {
  if (a != b) return g.discordant_at(rng.uniform_index(g.n_discordant()));
  for (;;) {
    const GroupId gr = group(rng.uniform_index(g.n_groups()));
    const auto [u, v] = g.endpoints(gr);
    if (g.opinion(u) == a && g.opinion(v) == a) return gr;
  }
}

// Uniform holder of opinion x that is not already bound in m.
AgentId sample_extra(const VoterGraph& g, Opinion x, const Match& m, RandomStream& rng) {
  for (;;) {
    const AgentId c = g.holder_at(x, rng.uniform_index(g.n_holding(x)));
    if (c != m.first && c != m.second) return c;
  }
}

}  // namespace

std::int64_t count_motif(const PatternCounts& c, const Motif& m) noexcept {
  switch (m.kind) {
    case MotifKind::Vertex:
      return c.n_with(m.first);
    case MotifKind::Edge:
      return edge_count(c, m.first, m.second);
    case MotifKind::EdgePlusVertex:
      return edge_count(c, m.first, m.second) * free_holders(c, m.first, m.second, m.extra);
    case MotifKind::EdgePlusTwoVertices:
      return edge_count(c, m.first, m.second) * free_holders(c, m.first, m.second, Opinion::One) *
             free_holders(c, m.first, m.second, Opinion::Zero);
  }
  return 0;
}

std::vector<Match> enumerate_matches(const VoterGraph& g, const Motif& m) {
  std::vector<Match> out;
  const std::size_t n = g.n_agents();
  if (m.kind == MotifKind::Vertex) {
    for (std::size_t i = 0; i < n; ++i) {
      if (g.opinion(agent(i)) == m.first) {
        Match mt;
        mt.first = agent(i);
        out.push_back(mt);
      }
    }
    return out;
  }
  for (std::size_t gi = 0; gi < g.n_groups(); ++gi) {
    const auto edge = orient(g, group(gi), m.first, m.second);
    if (!edge) continue;
    if (m.kind == MotifKind::Edge) {
      out.push_back(*edge);
      continue;
    }
    const auto fits = [&](std::size_t i, Opinion x) {
      const AgentId c = agent(i);
      return c != edge->first && c != edge->second && g.opinion(c) == x;
    };
    if (m.kind == MotifKind::EdgePlusVertex) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!fits(i, m.extra)) continue;
        Match mt = *edge;
        mt.extras[static_cast<std::size_t>(m.extra)] = agent(i);
        out.push_back(mt);
      }
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!fits(i, Opinion::Zero)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || !fits(j, Opinion::One)) continue;
        Match mt = *edge;
        mt.extras = {agent(i), agent(j)};
        out.push_back(mt);
      }
    }
  }
  return out;
}

bool is_admissible(const VoterGraph& g, const Motif& motif, const Match& m) {
  const auto known = [&](AgentId a) { return index(a) < g.n_agents(); };
  if (motif.kind == MotifKind::Vertex) {
    return known(m.first) && g.opinion(m.first) == motif.first;
  }
  if (index(m.group) >= g.n_groups() || !known(m.first) || !known(m.second)) return false;
  const auto [u, v] = g.endpoints(m.group);
  if (!((u == m.first && v == m.second) || (u == m.second && v == m.first))) return false;
  if (g.opinion(m.first) != motif.first || g.opinion(m.second) != motif.second) return false;

  const auto extra_ok = [&](Opinion x) {
    const AgentId c = m.extra(x);
    return known(c) && c != m.first && c != m.second && g.opinion(c) == x;
  };
  switch (motif.kind) {
    case MotifKind::Edge:
      return true;
    case MotifKind::EdgePlusVertex:
      return extra_ok(motif.extra);
    case MotifKind::EdgePlusTwoVertices:
      return extra_ok(Opinion::Zero) && extra_ok(Opinion::One);
    case MotifKind::Vertex:
      break;
  }
  return false;
}

std::optional<Match> sample_match_uniform(const VoterGraph& g, const Motif& m, RandomStream& rng) {
  if (count_motif(g, m) == 0) return std::nullopt;
  if (m.kind == MotifKind::Vertex) {
    Match mt;
    mt.first = g.holder_at(m.first, rng.uniform_index(g.n_holding(m.first)));
    return mt;
  }
  // Every group of the right class admits the same number of extras, so a
  // uniform group followed by uniform extras is uniform over matches.
  Match mt = *orient(g, sample_group(g, m.first, m.second, rng), m.first, m.second);
  switch (m.kind) {
    case MotifKind::EdgePlusVertex:
      mt.extras[static_cast<std::size_t>(m.extra)] = sample_extra(g, m.extra, mt, rng);
      break;
    case MotifKind::EdgePlusTwoVertices:
      mt.extras[0] = sample_extra(g, Opinion::Zero, mt, rng);
      mt.extras[1] = sample_extra(g, Opinion::One, mt, rng);
      break;
    default:
      break;
  }
  return mt;
}

bool verify_counting_identity(const VoterGraph& g) {
  const std::int64_t n01 = g.counts().n_01;
  for (const Opinion x : {Opinion::One, Opinion::Zero}) {
    const auto enumerated =
        static_cast<std::int64_t>(enumerate_matches(g, Motif::edge_plus_vertex(Opinion::One, Opinion::Zero, x)).size());
    if (enumerated != n01 * (g.counts().n_with(x) - 1)) return false;
  }
  return true;
}

}  // namespace avm
