#include "homlab/io.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "homlab/errors.hpp"

namespace homlab {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string()) throw ParseError(std::string(key) + " must be a string");
  return v.get<std::string>();
}

}  // namespace

Json poset_to_json(const Poset& p) {
  Json j;
  j["elements"] = p.elements();
  j["min"] = p.name(p.min_index());
  Json covers = Json::array();
  for (const auto& [lo, hi] : p.cover_pairs()) covers.push_back({lo, hi});
  j["covers"] = covers;
  return j;
}

Poset poset_from_json(const Json& j) {
  const Json& elems = need(j, "elements");
  if (!elems.is_array()) throw ParseError("elements must be an array");
  std::vector<std::string> names;
  for (const auto& e : elems) {
    if (!e.is_string()) throw ParseError("element names must be strings");
    names.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  const Json& cs = need(j, "covers");
  if (!cs.is_array()) throw ParseError("covers must be an array");
  for (const auto& c : cs) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      throw ParseError("each cover must be a pair of element names");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  try {
    return Poset(std::move(names), covers, need_string(j, "min"));
  } catch (const Error& e) {
    throw ParseError(std::string("bad poset: ") + e.what());
  }
}

namespace {

Json labels_to_json(const VertexLabels& l) {
  Json j = Json::object();
  if (l.copy_index) j["copy"] = *l.copy_index;
  if (l.class_index) j["class"] = *l.class_index;
  if (l.sigma) j["sigma"] = *l.sigma;
  if (l.pi) j["pi"] = *l.pi;
  if (l.s) j["s"] = *l.s;
  if (l.special) j["special"] = true;
  return j;
}

VertexLabels labels_from_json(const Json& j) {
  VertexLabels l;
  if (!j.is_object()) throw ParseError("labels must be an object");
  if (j.contains("copy")) l.copy_index = j.at("copy").get<int>();
  if (j.contains("class")) l.class_index = j.at("class").get<int>();
  if (j.contains("sigma")) l.sigma = j.at("sigma").get<std::vector<int>>();
  if (j.contains("pi")) l.pi = j.at("pi").get<std::string>();
  if (j.contains("s")) l.s = j.at("s").get<int>();
  if (j.contains("special")) l.special = j.at("special").get<bool>();
  return l;
}

}  // namespace

Json graph_to_json(const ColoredGraph& g) {
  Json j;
  j["P"] = poset_to_json(g.vertex_poset());
  j["Q"] = poset_to_json(g.edge_poset());
  Json verts = Json::array();
  for (int v = 0; v < g.vertex_count(); ++v) {
    Json jv;
    jv["id"] = g.id(v);
    jv["color"] = g.vertex_poset().name(g.chi(v));
    if (!g.labels(v).empty()) jv["labels"] = labels_to_json(g.labels(v));
    verts.push_back(std::move(jv));
  }
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  const ElemIdx zero = g.edge_poset().min_index();
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      ElemIdx c = g.xi(u, v);
      if (c == zero) continue;
      Json je;
      je["u"] = g.id(u);
      je["v"] = g.id(v);
      je["color"] = g.edge_poset().name(c);
      edges.push_back(std::move(je));
    }
  j["edges"] = std::move(edges);
  return j;
}

ColoredGraph graph_from_json(const Json& j) {
  auto P = std::make_shared<const Poset>(poset_from_json(need(j, "P")));
  auto Q = std::make_shared<const Poset>(poset_from_json(need(j, "Q")));
  ColoredGraph g(P, Q);
  const Json& verts = need(j, "vertices");
  if (!verts.is_array()) throw ParseError("vertices must be an array");
  try {
    for (const auto& jv : verts) {
      VertexLabels l;
      if (jv.contains("labels")) l = labels_from_json(jv.at("labels"));
      g.add_vertex(need_string(jv, "id"), need_string(jv, "color"),
                   std::move(l));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("bad vertex: ") + e.what());
  }
  const Json& edges = need(j, "edges");
  if (!edges.is_array()) throw ParseError("edges must be an array");
  std::set<std::pair<VertexIdx, VertexIdx>> seen;
  for (const auto& je : edges) {
    std::string u = need_string(je, "u");
    std::string v = need_string(je, "v");
    std::string color = need_string(je, "color");
    try {
      VertexIdx ui = g.index_of(u), vi = g.index_of(v);
      if (ui == vi) throw ParseError("self-pair on vertex '" + u + "'");
      auto key = std::minmax(ui, vi);
      if (!seen.insert({key.first, key.second}).second)
        throw ParseError("duplicate pair {" + u + "," + v + "}");
      g.set_edge(ui, vi, g.edge_poset().index_of(color));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("bad edge: ") + e.what());
    }
  }
  return g;
}

Json certificate_to_json(const LevelCertificate& c) {
  Json j;
  j["levels"] = c.levels;
  Json axs = Json::array();
  for (const auto& ax : c.axioms) {
    Json ja;
    ja["A"] = ax.base;
    Json t = Json::object();
    for (std::size_t i = 0; i < ax.base.size(); ++i) t[ax.base[i]] = ax.colors[i];
    ja["t"] = std::move(t);
    if (ax.copy) ja["copy"] = *ax.copy;
    if (ax.cls) ja["class"] = *ax.cls;
    ja["witness"] = ax.witness;
    axs.push_back(std::move(ja));
  }
  j["axioms"] = std::move(axs);
  return j;
}

LevelCertificate certificate_from_json(const Json& j) {
  LevelCertificate c;
  const Json& levels = need(j, "levels");
  if (!levels.is_array()) throw ParseError("levels must be an array");
  for (const auto& l : levels)
    c.levels.push_back(l.get<std::vector<std::string>>());
  const Json& axs = need(j, "axioms");
  if (!axs.is_array()) throw ParseError("axioms must be an array");
  for (const auto& ja : axs) {
    CertificateAxiom ax;
    ax.base = need(ja, "A").get<std::vector<std::string>>();
    const Json& t = need(ja, "t");
    if (!t.is_object()) throw ParseError("t must be an object");
    for (const auto& b : ax.base) {
      if (!t.contains(b))
        throw ParseError("pattern misses base vertex '" + b + "'");
      ax.colors.push_back(t.at(b).get<std::string>());
    }
    if (t.size() != ax.base.size())
      throw ParseError("pattern defined outside its base");
    if (ja.contains("copy")) ax.copy = ja.at("copy").get<int>();
    if (ja.contains("class")) ax.cls = ja.at("class").get<int>();
    ax.witness = need_string(ja, "witness");
    c.axioms.push_back(std::move(ax));
  }
  return c;
}

Json map_to_json(const ColoredGraph& g, const PartialMap& f) {
  Json pairs = Json::array();
  for (const auto& [s, t] : f.pairs) pairs.push_back({g.id(s), g.id(t)});
  Json j;
  j["pairs"] = std::move(pairs);
  return j;
}

PartialMap map_from_json(const ColoredGraph& g, const Json& j) {
  const Json& pairs = need(j, "pairs");
  if (!pairs.is_array()) throw ParseError("pairs must be an array");
  std::vector<std::pair<VertexIdx, VertexIdx>> entries;
  try {
    for (const auto& p : pairs) {
      if (!p.is_array() || p.size() != 2)
        throw ParseError("each pair must be [from, to]");
      entries.emplace_back(g.index_of(p[0].get<std::string>()),
                           g.index_of(p[1].get<std::string>()));
    }
    return PartialMap::endo(g, std::move(entries));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("bad map: ") + e.what());
  }
}

PartialMap map_from_compact(const ColoredGraph& g, const std::string& text) {
  std::vector<std::pair<VertexIdx, VertexIdx>> entries;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto colon = item.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
        throw ParseError("bad map entry '" + item + "', expected from:to");
      entries.emplace_back(g.index_of(item.substr(0, colon)),
                           g.index_of(item.substr(colon + 1)));
    }
    return PartialMap::endo(g, std::move(entries));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("bad map: ") + e.what());
  }
}

std::string map_to_compact(const ColoredGraph& g, const PartialMap& f) {
  std::string out;
  for (const auto& [s, t] : f.pairs) {
    if (!out.empty()) out += ",";
    out += g.id(s) + ":" + g.id(t);
  }
  return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write file: " + path);
  out << data;
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace homlab
