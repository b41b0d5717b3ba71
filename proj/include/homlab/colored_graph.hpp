#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "homlab/poset.hpp"

namespace homlab {

using VertexIdx = int;

/// Optional per-vertex annotations populated by the generators. The engine
/// never depends on them; they make generated structures addressable.
struct VertexLabels {
  std::optional<int> copy_index;              // 1-based copy number
  std::optional<int> class_index;             // 1-based partition class
  std::optional<std::vector<int>> sigma;      // permutation, one-line notation
  std::optional<std::string> pi;              // owning special vertex
  std::optional<int> s;                       // superscript 0/1
  bool special = false;

  bool empty() const {
    return !copy_index && !class_index && !sigma && !pi && !s && !special;
  }
  bool operator==(const VertexLabels&) const = default;
};

/// A finite graph with vertex colors from a poset P and symmetric edge colors
/// from a poset Q. Unlisted pairs carry the minimum of Q ("nonedge"); the loop
/// color is structurally the minimum. Values are treated as immutable once a
/// generator or parser has produced them.
class ColoredGraph {
 public:
  ColoredGraph(std::shared_ptr<const Poset> P, std::shared_ptr<const Poset> Q);

  const Poset& vertex_poset() const { return *P_; }
  const Poset& edge_poset() const { return *Q_; }
  const std::shared_ptr<const Poset>& vertex_poset_ptr() const { return P_; }
  const std::shared_ptr<const Poset>& edge_poset_ptr() const { return Q_; }

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& vertex_ids() const { return ids_; }
  const std::string& id(VertexIdx v) const { return ids_.at(v); }
  VertexIdx index_of(const std::string& id) const;
  bool has_vertex(const std::string& id) const;

  VertexIdx add_vertex(std::string id, ElemIdx color, VertexLabels labels = {});
  VertexIdx add_vertex(std::string id, const std::string& color,
                       VertexLabels labels = {});

  /// Sets the color of the unordered pair {u,v}. Setting the minimum erases
  /// the stored entry, so sparse and explicit "0" listings compare equal.
  void set_edge(VertexIdx u, VertexIdx v, ElemIdx color);
  void set_edge(const std::string& u, const std::string& v,
                const std::string& color);

  /// Fault injection for tests: stores an entry without any checks.
  void force_edge_entry(VertexIdx u, VertexIdx v, ElemIdx color);

  ElemIdx chi(VertexIdx v) const;
  ElemIdx xi(VertexIdx u, VertexIdx v) const;
  const VertexLabels& labels(VertexIdx v) const { return labels_.at(v); }
  void set_labels(VertexIdx v, VertexLabels labels);

  /// Number of stored (non-minimum) pair entries.
  int edge_entry_count() const { return static_cast<int>(xi_.size()); }

  bool operator==(const ColoredGraph& other) const;
  bool operator!=(const ColoredGraph& other) const { return !(*this == other); }

 private:
  std::shared_ptr<const Poset> P_, Q_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexIdx> index_;
  std::vector<ElemIdx> chi_;
  std::vector<VertexLabels> labels_;
  std::unordered_map<std::uint64_t, ElemIdx> xi_;

  void check_vertex(VertexIdx v) const;
  static std::uint64_t pair_key(VertexIdx u, VertexIdx v);

  friend bool validate(const ColoredGraph&, std::string*);
};

/// The edge colors a vertex shows toward a finite base set.
struct Diagram {
  std::shared_ptr<const Poset> Q;
  std::vector<VertexIdx> base;    // strictly increasing
  std::vector<ElemIdx> values;    // parallel to base

  bool operator==(const Diagram&) const;
};

/// What a candidate image of one more vertex must dominate: per target vertex
/// a set of edge colors, plus a lower bound for the vertex color. For an
/// injective map every demand set is a singleton and the requirement is
/// exactly a diagram.
struct Requirement {
  std::vector<VertexIdx> base;                 // strictly increasing
  std::vector<std::vector<ElemIdx>> demands;   // parallel; sorted, non-empty
  ElemIdx vertex_demand = 0;
};

/// A finite map between the vertex sets of two colored graphs (possibly the
/// same graph). Pairs are kept sorted by source vertex.
struct PartialMap {
  const ColoredGraph* source = nullptr;
  const ColoredGraph* target = nullptr;
  std::vector<std::pair<VertexIdx, VertexIdx>> pairs;

  PartialMap() = default;
  PartialMap(const ColoredGraph& src, const ColoredGraph& tgt,
             std::vector<std::pair<VertexIdx, VertexIdx>> entries);
  static PartialMap endo(const ColoredGraph& g,
                         std::vector<std::pair<VertexIdx, VertexIdx>> entries);

  int size() const { return static_cast<int>(pairs.size()); }
  bool maps(VertexIdx v) const;
  std::optional<VertexIdx> apply(VertexIdx v) const;
  std::vector<VertexIdx> domain() const;
  std::vector<VertexIdx> image_sorted_unique() const;
  bool is_injective_map() const;
  PartialMap with_pair(VertexIdx c, VertexIdx d) const;

  bool operator==(const PartialMap&) const;
};

/// True iff all structural invariants hold; the first violation is reported
/// through `first_violation` when given.
bool validate(const ColoredGraph& g, std::string* first_violation = nullptr);

/// The substructure induced on `vertices` (ids are preserved, order follows
/// the canonical order of the originals). Throws UnknownVertex.
ColoredGraph induced(const ColoredGraph& g, std::vector<VertexIdx> vertices);
ColoredGraph induced(const ColoredGraph& g,
                     const std::vector<std::string>& vertex_ids);

/// The diagram of `v` over `A`: u |-> xi(v,u). Throws BaseContainsVertex when
/// v is in A, UnknownVertex otherwise on bad input.
Diagram diagram(const ColoredGraph& g, VertexIdx v, std::vector<VertexIdx> A);

/// Pointwise comparison of two diagrams over the same base.
/// Throws BaseMismatch.
bool diagram_leq(const Diagram& x, const Diagram& y);

/// The requirement a candidate image of `c` must satisfy to extend `f`.
/// demands(b) = { xi(c,x) : f(x)=b }, vertex_demand = chi(c).
/// Throws VertexInDomain when c is already mapped.
Requirement requirement(const ColoredGraph& g, const PartialMap& f, VertexIdx c);

/// True iff chi(d) dominates the vertex demand and xi(d,b) dominates every
/// demanded color at every base vertex b.
bool satisfies(const ColoredGraph& g, VertexIdx d, const Requirement& req);

/// True iff the vertex coloring is constant.
bool is_vertex_uniform(const ColoredGraph& g);

}  // namespace homlab
