#include "avm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

namespace avm {

namespace {

// Unordered pair with index k in the row-major enumeration of {(i,j) : i < j < n}.
VoterGraph::Edge decode_pair(std::uint64_t k, std::size_t n) {
  std::size_t i = 0;
  std::uint64_t row = n - 1;
  while (k >= row) {
    k -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + static_cast<std::size_t>(k)};
}

}  // namespace

std::size_t zero_count(const InitSpec& spec) {
  return static_cast<std::size_t>(std::llround(spec.u * static_cast<double>(spec.n_agents)));
}

VoterGraph generate(const InitSpec& spec, RandomStream& rng) {
  if (spec.n_agents == 0) throw ConfigError("n_agents must be positive");
  if (!(spec.u >= 0.0 && spec.u <= 1.0)) throw ConfigError("u must lie in [0,1]");
  const std::size_t n = spec.n_agents;
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;

  // Partial Fisher-Yates: the first round(u*n) slots of a shuffled index list vote Zero.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t zeros = zero_count(spec);
  for (std::size_t i = 0; i < zeros; ++i) {
    std::swap(order[i], order[i + rng.uniform_index(n - i)]);
  }
  std::vector<Opinion> opinions(n, Opinion::One);
  for (std::size_t i = 0; i < zeros; ++i) opinions[order[i]] = Opinion::Zero;

  std::vector<VoterGraph::Edge> edges;
  if (const auto* fixed = std::get_if<FixedCount>(&spec.edge_mode)) {
    if (fixed->edges > pairs) {
      throw ConfigError("edges = " + std::to_string(fixed->edges) + " exceeds the " + std::to_string(pairs) +
                        " distinct pairs of " + std::to_string(n) + " agents");
    }
    // Floyd's sampling of m distinct pair indices, then sorted for a stable group order.
    std::unordered_set<std::uint64_t> chosen;
    std::vector<std::uint64_t> picked;
    picked.reserve(fixed->edges);
    for (std::uint64_t j = pairs - fixed->edges; j < pairs; ++j) {
      const std::uint64_t t = rng.uniform_index(j + 1);
      if (chosen.insert(t).second) {
        picked.push_back(t);
      } else {
        chosen.insert(j);
        picked.push_back(j);
      }
    }
    std::sort(picked.begin(), picked.end());
    edges.reserve(picked.size());
    for (const auto k : picked) edges.push_back(decode_pair(k, n));
  } else {
    const double v = std::get<PerPair>(spec.edge_mode).probability;
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("pair probability must lie in [0,1]");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.bernoulli(v)) edges.emplace_back(i, j);
      }
    }
  }
  return VoterGraph(opinions, edges);
}

}  // namespace avm
