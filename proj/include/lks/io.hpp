#pragma once

#include "lks/graph.hpp"

#include <json.hpp>

#include <istream>
#include <string>

namespace lks {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Edge list: header "n m", then m lines "u v".
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
std::string render_edge_list(const Graph& g);

Json tree_to_json(const RootedTree& t);
RootedTree tree_from_json(const Json& j);

Json certificate_to_json(const EmbeddingCertificate& c);
EmbeddingCertificate certificate_from_json(const Json& j);

Json graph_to_json(const Graph& g);  // {"n":..,"edges":[[u,v],..],"labels":[..]}
Graph graph_from_json(const Json& j);

Json vertex_set_json(const VertexSet& s);
VertexSet vertex_set_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace lks
