#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "homlab/colored_graph.hpp"
#include "homlab/constructions.hpp"

namespace homlab {

using Json = nlohmann::ordered_json;

// Posets: {"elements": [...], "min": "0", "covers": [["0","c1"], ...]}.
Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j);

// Graphs: {"P": ..., "Q": ..., "vertices": [{"id","color","labels"?}],
// "edges": [{"u","v","color"}]}. Omitted pairs carry the minimum color;
// listing a pair with the minimum is legal and equivalent; duplicate and
// self pairs are errors.
Json graph_to_json(const ColoredGraph& g);
ColoredGraph graph_from_json(const Json& j);

// Certificates: {"levels": [[ids]], "axioms": [{"A": [...], "t": {...},
// "copy"?, "class"?, "witness"}]}.
Json certificate_to_json(const LevelCertificate& c);
LevelCertificate certificate_from_json(const Json& j);

// Partial maps: {"pairs": [["a","b"], ...]} against a graph, or the compact
// command-line form "a:b,c:d".
Json map_to_json(const ColoredGraph& g, const PartialMap& f);
PartialMap map_from_json(const ColoredGraph& g, const Json& j);
PartialMap map_from_compact(const ColoredGraph& g, const std::string& text);
std::string map_to_compact(const ColoredGraph& g, const PartialMap& f);

/// Serializes with a fixed layout: two-space indent, trailing newline.
std::string dump_json(const Json& j);

std::string read_file(const std::string& path);         // throws ParseError
void write_file(const std::string& path, const std::string& data);
Json parse_json_file(const std::string& path);          // throws ParseError

/// FNV-1a 64-bit digest of a byte string, "fnv64:<hex>".
std::string digest(const std::string& bytes);

}  // namespace homlab
