#include "homlab/random_graph.hpp"

#include "homlab/errors.hpp"

namespace homlab {

ColoredGraph random_graph(std::shared_ptr<const Poset> P,
                          std::shared_ptr<const Poset> Q, int vertices,
                          std::uint64_t seed, int zero_permille) {
  if (vertices < 0) throw BadParameter("vertex count must be >= 0");
  if (zero_permille < 0 || zero_permille > 1000)
    throw BadParameter("zero_permille must lie in 0..1000");
  ColoredGraph g(P, Q);
  SplitMix64 rng(seed);
  for (int v = 0; v < vertices; ++v)
    g.add_vertex("v" + std::to_string(v),
                 static_cast<ElemIdx>(rng.below(P->size())));
  const int q_size = Q->size();
  for (int u = 0; u < vertices; ++u)
    for (int v = u + 1; v < vertices; ++v) {
      if (static_cast<int>(rng.below(1000)) < zero_permille) continue;
      if (q_size == 1) continue;
      ElemIdx pick = static_cast<ElemIdx>(rng.below(q_size - 1));
      if (pick >= Q->min_index()) ++pick;  // skip the minimum
      g.set_edge(u, v, pick);
    }
  return g;
}

}  // namespace homlab
