#pragma once

#include <string>

#include <json.hpp>

#include "opforge/sparse_tensor.hpp"

namespace opforge {

struct OrientedGraph;

// Tensor wire format: {"dims":[...], "entries":[{"idx":[...], "num":"...",
// "den":"..."}]} with decimal-free integer strings.
nlohmann::json tensor_to_json(const SparseTensor& t);
SparseTensor tensor_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const OrientedGraph& g);
OrientedGraph graph_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace opforge
