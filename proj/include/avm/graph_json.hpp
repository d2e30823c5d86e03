#pragma once

#include <filesystem>
#include <string>

#include "avm/voter_graph.hpp"
#include "json.hpp"

namespace avm {

/// {"opinions": [0,1,...], "edges": [[i,j],...]}
nlohmann::json graph_to_json(const VoterGraph& g);
VoterGraph graph_from_json(const nlohmann::json& j);

VoterGraph load_graph(const std::filesystem::path& path);
void save_graph(const VoterGraph& g, const std::filesystem::path& path);

}  // namespace avm
