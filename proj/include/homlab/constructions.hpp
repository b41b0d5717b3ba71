#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homlab/colored_graph.hpp"

namespace homlab {

/// One certified extension axiom: the recorded witness realizes exactly the
/// listed colors over the listed base.
struct CertificateAxiom {
  std::vector<std::string> base;    // vertex ids, canonical order
  std::vector<std::string> colors;  // parallel edge-color names
  std::optional<int> copy;          // 1-based copy, when the generator has copies
  std::optional<int> cls;           // 1-based partition class, when partitioned
  std::string witness;

  bool operator==(const CertificateAxiom&) const = default;
};

/// Finite-scale record of which extension axioms a generated approximant
/// satisfies, and by which witnesses.
struct LevelCertificate {
  std::vector<std::vector<std::string>> levels;  // nested vertex-id sets
  std::vector<CertificateAxiom> axioms;

  bool operator==(const LevelCertificate&) const = default;
};

struct ConstructionReport {
  ColoredGraph graph;
  LevelCertificate certificate;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> notes;
  /// Populated by lattice_counterexample: the equal-colored nonedge pair and
  /// the vertex joined to it by two distinct maximal colors.
  std::optional<std::array<std::string, 3>> designated_triple;
};

struct GeneratorLimits {
  int max_vertices = 20000;
};

/// Finite approximant of the generic structure over an antichain of n edge
/// colors: per round, every nonempty subset A of the previous level with
/// |A| <= subset_cap receives, for every color pattern t over A, one fresh
/// witness realizing t. Throws BadParameter, SizeExplosion.
ConstructionReport rado_approx(int n, int base_size, int rounds,
                               int subset_cap,
                               const GeneratorLimits& limits = {});

/// Same extension axioms, certified per partition class: base vertices are
/// assigned round-robin to m classes; every (subset, pattern) of the base
/// receives `passes` fresh witnesses in every class.
ConstructionReport partitioned_rado(int n, int m, int base_size, int subset_cap,
                                    int passes,
                                    const GeneratorLimits& limits = {});

/// The six-clique structure over the four-color diamond order {0,R,B,1}:
/// one large 1-clique split into cliques M_x^s (x in {a,b,c}, s in {0,1}) of
/// `clique_size` vertices, three special vertices a,b,c with the prescribed
/// R/B pattern, and no other edges.
ConstructionReport diamond_m(int clique_size);

struct DiamondExtendInfo {
  std::string route;     // "easy1", "easy2", "case1".."case6", "fallback"
  bool diverged = false; // case-table result failed validation; fell back
};

/// Parsed shape of a diamond_m structure; construction validates it.
/// Build once when extending many maps over the same graph.
struct DiamondContext {
  explicit DiamondContext(const ColoredGraph& M);  // throws WrongGenerator

  const ColoredGraph* g;
  VertexIdx special[3];                  // a, b, c
  std::vector<VertexIdx> clique[3][2];   // [letter][superscript]

  int letter_of_special(VertexIdx v) const {
    for (int x = 0; x < 3; ++x)
      if (special[x] == v) return x;
    return -1;
  }
};

/// Case-analysis one-point extension for diamond_m structures: returns the
/// image vertex for d, following the construction's case table where it
/// applies and the generic one-point search otherwise. Absent on finite-scale
/// exhaustion. Throws NotMonomorphism, WrongGenerator, VertexInDomain.
std::optional<VertexIdx> diamond_extend(const DiamondContext& ctx,
                                        const PartialMap& f, VertexIdx d,
                                        DiamondExtendInfo* info = nullptr);
std::optional<VertexIdx> diamond_extend(const ColoredGraph& M,
                                        const PartialMap& f, VertexIdx d,
                                        DiamondExtendInfo* info = nullptr);

/// Non-directed-Q counterexample: a partitioned approximant over the maximal
/// colors of Q with one class per element of P, class i colored by the i-th
/// element of P, a deterministic partial fill of the remaining nonedges by
/// non-maximal colors, and a designated triple (u,v,w) with xi(u,v)=0,
/// chi(u)=chi(v) and xi(w,u), xi(w,v) two distinct maximal colors.
/// Requires base_size >= |P|+1 and subset_cap >= 2.
/// Throws DirectedQ, BadParameter, SizeExplosion.
ConstructionReport lattice_counterexample(const Poset& P, const Poset& Q,
                                          int base_size, int subset_cap,
                                          int passes,
                                          const GeneratorLimits& limits = {});

/// Index map used by the main counterexample: for copy i and special j != i,
/// the position in 1..n obtained by deleting i from 1..n+1 and renumbering.
/// Throws IndexOutOfRange, EqualIndices.
int c_index(int i, int j, int n);

struct MainthmOptions {
  bool vertex_colored = false;
  std::shared_ptr<const Poset> P;  // defaults to the one-element order
};

/// The directed-but-not-linear-Q counterexample: n+1 copies of a two-color
/// partitioned approximant with n! permutation-indexed classes, intra-copy
/// nonedges filled by a seeded cyclic assignment over Q \ {0} so that every
/// color of Q occurs, all cross-copy pairs at the top color, and special
/// vertices x_1..x_{n+1} whose edge toward a copy vertex is determined by the
/// vertex's class permutation. n is the number of maximal elements below the
/// top of Q and must be >= 2.
/// Throws NonDirectedQ, LinearQ, BadParameter, SizeExplosion.
ConstructionReport mainthm_structure(const Poset& Q, int base_size,
                                     int subset_cap, int passes,
                                     std::uint64_t fill_seed,
                                     const MainthmOptions& opts = {},
                                     const GeneratorLimits& limits = {});

/// For a mainthm structure: a vertex joined to all of F at the top color and
/// showing exactly `pattern` over the special subset S, located through the
/// class arithmetic plus a certificate lookup. Patterns take values in the
/// top element and the maximal colors below it and must be injective.
/// Absent on certificate exhaustion.
/// Throws WrongGenerator, NonInjectivePattern, BadParameter.
std::optional<VertexIdx> claim_witness(const ConstructionReport& report,
                                       const std::vector<VertexIdx>& F,
                                       const std::vector<VertexIdx>& S,
                                       const std::vector<ElemIdx>& pattern);

struct CertificateIssue {
  std::size_t axiom_index;  // size_t(-1) for certificate-level issues
  std::string reason;
};

/// Rechecks every axiom against the graph: base and witness must exist, the
/// witness realizes exactly the recorded colors, witnesses are distinct per
/// (copy, class, base, colors) group, and levels are nested.
std::vector<CertificateIssue> verify_certificate(const ColoredGraph& g,
                                                 const LevelCertificate& cert);

}  // namespace homlab
