#include "homlab/colored_graph.hpp"

#include <algorithm>

#include "homlab/errors.hpp"

namespace homlab {

ColoredGraph::ColoredGraph(std::shared_ptr<const Poset> P,
                           std::shared_ptr<const Poset> Q)
    : P_(std::move(P)), Q_(std::move(Q)) {
  if (!P_ || !Q_) throw BadParameter("graph needs both color posets");
}

VertexIdx ColoredGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownVertex("unknown vertex: " + id);
  return it->second;
}

bool ColoredGraph::has_vertex(const std::string& id) const {
  return index_.count(id) != 0;
}

VertexIdx ColoredGraph::add_vertex(std::string id, ElemIdx color,
                                   VertexLabels labels) {
  if (id.empty()) throw BadParameter("empty vertex id");
  if (color < 0 || color >= P_->size())
    throw UnknownElement("vertex color index out of range");
  if (index_.count(id)) throw BadParameter("duplicate vertex id: " + id);
  VertexIdx v = vertex_count();
  index_.emplace(id, v);
  ids_.push_back(std::move(id));
  chi_.push_back(color);
  labels_.push_back(std::move(labels));
  return v;
}

VertexIdx ColoredGraph::add_vertex(std::string id, const std::string& color,
                                   VertexLabels labels) {
  return add_vertex(std::move(id), P_->index_of(color), std::move(labels));
}

std::uint64_t ColoredGraph::pair_key(VertexIdx u, VertexIdx v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

void ColoredGraph::check_vertex(VertexIdx v) const {
  if (v < 0 || v >= vertex_count())
    throw UnknownVertex("vertex index out of range: " + std::to_string(v));
}

void ColoredGraph::set_edge(VertexIdx u, VertexIdx v, ElemIdx color) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw BadParameter("self-pair not allowed: " + ids_[u]);
  if (color < 0 || color >= Q_->size())
    throw UnknownElement("edge color index out of range");
  if (color == Q_->min_index())
    xi_.erase(pair_key(u, v));
  else
    xi_[pair_key(u, v)] = color;
}

void ColoredGraph::set_edge(const std::string& u, const std::string& v,
                            const std::string& color) {
  set_edge(index_of(u), index_of(v), Q_->index_of(color));
}

void ColoredGraph::force_edge_entry(VertexIdx u, VertexIdx v, ElemIdx color) {
  xi_[pair_key(u, v)] = color;
}

void ColoredGraph::set_labels(VertexIdx v, VertexLabels labels) {
  check_vertex(v);
  labels_[v] = std::move(labels);
}

ElemIdx ColoredGraph::chi(VertexIdx v) const {
  check_vertex(v);
  return chi_[v];
}

ElemIdx ColoredGraph::xi(VertexIdx u, VertexIdx v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return Q_->min_index();
  auto it = xi_.find(pair_key(u, v));
  return it == xi_.end() ? Q_->min_index() : it->second;
}

bool ColoredGraph::operator==(const ColoredGraph& other) const {
  return *P_ == *other.P_ && *Q_ == *other.Q_ && ids_ == other.ids_ &&
         chi_ == other.chi_ && labels_ == other.labels_ && xi_ == other.xi_;
}

bool Diagram::operator==(const Diagram& other) const {
  return base == other.base && values == other.values && *Q == *other.Q;
}

PartialMap::PartialMap(const ColoredGraph& src, const ColoredGraph& tgt,
                       std::vector<std::pair<VertexIdx, VertexIdx>> entries)
    : source(&src), target(&tgt), pairs(std::move(entries)) {
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [s, t] = pairs[i];
    if (s < 0 || s >= src.vertex_count())
      throw UnknownVertex("map domain vertex out of range");
    if (t < 0 || t >= tgt.vertex_count())
      throw UnknownVertex("map image vertex out of range");
    if (i > 0 && pairs[i - 1].first == s)
      throw BadParameter("two images for vertex " + src.id(s));
  }
}

PartialMap PartialMap::endo(const ColoredGraph& g,
                            std::vector<std::pair<VertexIdx, VertexIdx>> entries) {
  return PartialMap(g, g, std::move(entries));
}

bool PartialMap::maps(VertexIdx v) const { return apply(v).has_value(); }

std::optional<VertexIdx> PartialMap::apply(VertexIdx v) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(),
                             std::make_pair(v, VertexIdx{0}),
                             [](const auto& a, const auto& b) {
                               return a.first < b.first;
                             });
  if (it != pairs.end() && it->first == v) return it->second;
  return std::nullopt;
}

std::vector<VertexIdx> PartialMap::domain() const {
  std::vector<VertexIdx> out;
  out.reserve(pairs.size());
  for (const auto& [s, t] : pairs) out.push_back(s);
  return out;
}

std::vector<VertexIdx> PartialMap::image_sorted_unique() const {
  std::vector<VertexIdx> out;
  out.reserve(pairs.size());
  for (const auto& [s, t] : pairs) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PartialMap::is_injective_map() const {
  return image_sorted_unique().size() == pairs.size();
}

PartialMap PartialMap::with_pair(VertexIdx c, VertexIdx d) const {
  PartialMap out = *this;
  auto it = std::lower_bound(out.pairs.begin(), out.pairs.end(),
                             std::make_pair(c, VertexIdx{0}),
                             [](const auto& a, const auto& b) {
                               return a.first < b.first;
                             });
  if (it != out.pairs.end() && it->first == c)
    throw VertexInDomain("vertex already mapped: " + source->id(c));
  out.pairs.insert(it, {c, d});
  return out;
}

bool PartialMap::operator==(const PartialMap& other) const {
  return source == other.source && target == other.target &&
         pairs == other.pairs;
}

bool validate(const ColoredGraph& g, std::string* first_violation) {
  auto fail = [&](const std::string& why) {
    if (first_violation) *first_violation = why;
    return false;
  };
  const int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    if (g.chi_[v] < 0 || g.chi_[v] >= g.vertex_poset().size())
      return fail("vertex color out of range at " + g.id(v));
  for (const auto& [key, color] : g.xi_) {
    int u = static_cast<int>(key >> 32);
    int v = static_cast<int>(key & 0xffffffffu);
    if (u < 0 || v < 0 || u >= n || v >= n)
      return fail("edge entry references missing vertex");
    if (u == v && color != g.edge_poset().min_index())
      return fail("loop at " + g.id(u) + " colored " +
                  g.edge_poset().name(color));
    if (u > v) return fail("edge entry stored with reversed key");
    if (color < 0 || color >= g.edge_poset().size())
      return fail("edge color out of range");
  }
  return true;
}

ColoredGraph induced(const ColoredGraph& g, std::vector<VertexIdx> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  ColoredGraph out(g.vertex_poset_ptr(), g.edge_poset_ptr());
  for (VertexIdx v : vertices) {
    if (v < 0 || v >= g.vertex_count())
      throw UnknownVertex("induced: vertex index out of range");
    out.add_vertex(g.id(v), g.chi(v), g.labels(v));
  }
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      ElemIdx c = g.xi(vertices[i], vertices[j]);
      if (c != g.edge_poset().min_index())
        out.set_edge(static_cast<VertexIdx>(i), static_cast<VertexIdx>(j), c);
    }
  return out;
}

ColoredGraph induced(const ColoredGraph& g,
                     const std::vector<std::string>& vertex_ids) {
  std::vector<VertexIdx> idx;
  idx.reserve(vertex_ids.size());
  for (const auto& id : vertex_ids) idx.push_back(g.index_of(id));
  return induced(g, std::move(idx));
}

Diagram diagram(const ColoredGraph& g, VertexIdx v, std::vector<VertexIdx> A) {
  std::sort(A.begin(), A.end());
  A.erase(std::unique(A.begin(), A.end()), A.end());
  if (std::binary_search(A.begin(), A.end(), v))
    throw BaseContainsVertex("diagram base contains the vertex itself");
  Diagram d{g.edge_poset_ptr(), std::move(A), {}};
  d.values.reserve(d.base.size());
  for (VertexIdx u : d.base) d.values.push_back(g.xi(v, u));
  return d;
}

bool diagram_leq(const Diagram& x, const Diagram& y) {
  if (x.base != y.base) throw BaseMismatch("diagrams over different bases");
  for (std::size_t i = 0; i < x.values.size(); ++i)
    if (!x.Q->leq(x.values[i], y.values[i])) return false;
  return true;
}

Requirement requirement(const ColoredGraph& g, const PartialMap& f,
                        VertexIdx c) {
  if (f.maps(c))
    throw VertexInDomain("vertex already in the map's domain: " + g.id(c));
  if (c < 0 || c >= g.vertex_count())
    throw UnknownVertex("requirement: vertex index out of range");
  Requirement req;
  req.base = f.image_sorted_unique();
  req.demands.resize(req.base.size());
  for (const auto& [x, b] : f.pairs) {
    auto pos = std::lower_bound(req.base.begin(), req.base.end(), b) -
               req.base.begin();
    req.demands[pos].push_back(g.xi(c, x));
  }
  for (auto& ds : req.demands) {
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  }
  req.vertex_demand = g.chi(c);
  return req;
}

bool satisfies(const ColoredGraph& g, VertexIdx d, const Requirement& req) {
  if (d < 0 || d >= g.vertex_count())
    throw UnknownVertex("satisfies: vertex index out of range");
  if (!g.vertex_poset().leq(req.vertex_demand, g.chi(d))) return false;
  for (std::size_t i = 0; i < req.base.size(); ++i) {
    ElemIdx have = g.xi(d, req.base[i]);
    for (ElemIdx q : req.demands[i])
      if (!g.edge_poset().leq(q, have)) return false;
  }
  return true;
}

bool is_vertex_uniform(const ColoredGraph& g) {
  for (int v = 1; v < g.vertex_count(); ++v)
    if (g.chi(v) != g.chi(0)) return false;
  return true;
}

}  // namespace homlab
