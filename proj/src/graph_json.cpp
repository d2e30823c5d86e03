#include "avm/graph_json.hpp"

#include <fstream>

namespace avm {

nlohmann::json graph_to_json(const VoterGraph& g) {
  nlohmann::json j;
  auto& ops = j["opinions"] = nlohmann::json::array();
  for (const Opinion o : g.opinions()) ops.push_back(static_cast<int>(o));
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edge_list()) edges.push_back({u, v});
  return j;
}

VoterGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("opinions") || !j.contains("edges")) {
    throw GraphError("graph JSON must be an object with \"opinions\" and \"edges\"");
  }
  std::vector<Opinion> opinions;
  for (const auto& v : j.at("opinions")) {
    const int o = v.get<int>();
    if (o != 0 && o != 1) throw GraphError("opinion values must be 0 or 1, got " + std::to_string(o));
    opinions.push_back(static_cast<Opinion>(o));
  }
  std::vector<VoterGraph::Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw GraphError("each edge must be a pair [i,j]");
    const auto u = e[0].get<std::int64_t>();
    const auto v = e[1].get<std::int64_t>();
    if (u < 0 || v < 0) throw GraphError("edge endpoints must be non-negative");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  return VoterGraph(opinions, edges);
}

VoterGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path.string());
  return graph_from_json(nlohmann::json::parse(in));
}

void save_graph(const VoterGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file " + path.string());
  out << graph_to_json(g).dump() << '\n';
}

}  // namespace avm
