#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "homlab/colored_graph.hpp"

namespace homlab {

/// True iff f weakly increases vertex colors and edge colors over its domain.
/// Throws PosetMismatch when source and target disagree on P or Q.
bool is_homomorphism(const PartialMap& f);

/// is_homomorphism and injectivity.
bool is_monomorphism(const PartialMap& f);

/// All d in the target (canonical order) for which f + (c -> d) is a
/// homomorphism, computed through the requirement calculus.
/// Throws NotHomomorphism, VertexInDomain.
std::vector<VertexIdx> one_point_targets(const PartialMap& f, VertexIdx c);

/// Same set, computed by re-checking the full homomorphism definition on
/// every candidate extension. Independent oracle for one_point_targets.
std::vector<VertexIdx> naive_one_point_targets(const PartialMap& f, VertexIdx c);

/// Depth-first backtracking completion of f to a total endomorphism of its
/// graph (injective if requested). Unmapped vertices are processed in
/// canonical order with candidates in canonical order, so the result is the
/// lexicographically first solution; absence is exact.
/// Throws NotHomomorphism / NotMonomorphism on a bad seed map.
std::optional<PartialMap> extend_to_endomorphism(const PartialMap& f,
                                                 bool injective);

struct ExtensionWitness {
  PartialMap map;
  VertexIdx blocked_at;  // first one-point-blocked vertex, else first unmapped
};

struct Classification {
  bool is_mh = true;
  bool is_hh = true;
  bool is_mm = true;
  std::optional<ExtensionWitness> hh_witness;
  std::optional<ExtensionWitness> mh_witness;
  std::optional<ExtensionWitness> mm_witness;
  int search_bound = 0;  // max partial-map domain size examined
};

struct ClassifyOptions {
  int max_domain = -1;  // -1: |V| (exact)
  int threads = 1;
};

/// Exhaustive finite classification. A verdict is false iff some partial
/// homomorphism (monomorphism for MH/MM) with domain size <= bound has no
/// total (injective for MM) extension; the first failure in canonical order
/// (domains by size then lexicographically, then assignments
/// lexicographically) is recorded as the witness. Throws InvalidGraph.
Classification classify(const ColoredGraph& g, const ClassifyOptions& opts = {});

/// Linear-Q one-point extension through the pointwise-maximal transversal of
/// the fiber partition of f. Returns f + (u -> d) for the first admissible d,
/// or nothing when the finite graph has no such vertex.
/// Throws NonLinearQ, NotHomomorphism, VertexInDomain.
std::optional<PartialMap> transversal_extend(const PartialMap& f, VertexIdx u);

/// First (f, c) in canonical order with f a partial homomorphism
/// (monomorphism when monos_only), |domain(f)| <= max_domain and no one-point
/// extension of f at c. A blocked one-point extension refutes total
/// extension, so any hit refutes HH (MH when monos_only).
/// Throws InvalidGraph.
std::optional<std::pair<PartialMap, VertexIdx>> hh_failure_witness(
    const ColoredGraph& g, int max_domain, bool monos_only = false);

/// Every blocked (f, c) up to max_domain, in canonical order (capped).
std::vector<std::pair<PartialMap, VertexIdx>> blocked_one_point_witnesses(
    const ColoredGraph& g, int max_domain, bool monos_only = false,
    std::size_t limit = 100000);

/// Calls visit(images) for every homomorphism from the induced substructure
/// on `domain` (ascending vertex indices) into g, in lexicographic order of
/// the image tuple; injective restricts to monomorphisms. Stops early when
/// visit returns false. Returns false when stopped.
bool for_each_partial_hom(
    const ColoredGraph& g, const std::vector<VertexIdx>& domain, bool injective,
    const std::function<bool(const std::vector<VertexIdx>&)>& visit);

/// Calls visit(subset) for every subset of {0..n-1} with size in
/// [min_size, max_size], sizes ascending, lexicographic within a size.
/// Stops early when visit returns false. Returns false when stopped.
bool for_each_subset(int n, int min_size, int max_size,
                     const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace homlab
