#include "homlab/engine.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <limits>

#include "homlab/errors.hpp"

namespace homlab {

namespace {

void check_same_language(const PartialMap& f) {
  if (!f.source || !f.target) throw BadParameter("map is not bound to graphs");
  const bool same_p =
      f.source->vertex_poset_ptr() == f.target->vertex_poset_ptr() ||
      f.source->vertex_poset() == f.target->vertex_poset();
  const bool same_q =
      f.source->edge_poset_ptr() == f.target->edge_poset_ptr() ||
      f.source->edge_poset() == f.target->edge_poset();
  if (!same_p || !same_q)
    throw PosetMismatch("source and target use different color posets");
}

void check_extension_vertex(const PartialMap& f, VertexIdx c) {
  if (c < 0 || c >= f.source->vertex_count())
    throw UnknownVertex("vertex index out of range: " + std::to_string(c));
  if (f.maps(c))
    throw VertexInDomain("vertex already mapped: " + f.source->id(c));
}

// Flat copies of chi, xi and both order relations; the scanning loops are
// quadratic in candidates and checked hash lookups dominate otherwise.
struct DenseView {
  int n;
  int p_size, q_size;
  std::vector<char> p_le, q_le;
  std::vector<ElemIdx> chi;
  std::vector<ElemIdx> xi;

  explicit DenseView(const ColoredGraph& g)
      : n(g.vertex_count()),
        p_size(g.vertex_poset().size()),
        q_size(g.edge_poset().size()) {
    p_le.resize(static_cast<std::size_t>(p_size) * p_size);
    for (int a = 0; a < p_size; ++a)
      for (int b = 0; b < p_size; ++b)
        p_le[static_cast<std::size_t>(a) * p_size + b] =
            g.vertex_poset().leq(a, b);
    q_le.resize(static_cast<std::size_t>(q_size) * q_size);
    for (int a = 0; a < q_size; ++a)
      for (int b = 0; b < q_size; ++b)
        q_le[static_cast<std::size_t>(a) * q_size + b] =
            g.edge_poset().leq(a, b);
    chi.resize(n);
    for (int v = 0; v < n; ++v) chi[v] = g.chi(v);
    xi.assign(static_cast<std::size_t>(n) * n, g.edge_poset().min_index());
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        ElemIdx c = g.xi(u, v);
        xi[static_cast<std::size_t>(u) * n + v] = c;
        xi[static_cast<std::size_t>(v) * n + u] = c;
      }
  }
  bool pleq(ElemIdx a, ElemIdx b) const {
    return p_le[static_cast<std::size_t>(a) * p_size + b] != 0;
  }
  bool qleq(ElemIdx a, ElemIdx b) const {
    return q_le[static_cast<std::size_t>(a) * q_size + b] != 0;
  }
  ElemIdx edge(int u, int v) const {
    return xi[static_cast<std::size_t>(u) * n + v];
  }
};

// Backtracking completion over a dense view. img holds the partial map
// (-1 unmapped); vertices in `todo` are filled in order.
struct EndoSearch {
  const DenseView& d;
  bool injective;
  std::vector<int>& img;
  std::vector<char>& used;
  std::vector<int> todo;

  bool feasible(int v, int cand) const {
    if (!d.pleq(d.chi[v], d.chi[cand])) return false;
    for (int u = 0; u < d.n; ++u) {
      if (u == v || img[u] < 0) continue;
      if (!d.qleq(d.edge(v, u), d.edge(cand, img[u]))) return false;
    }
    return true;
  }

  bool run(std::size_t k) {
    if (k == todo.size()) return true;
    int v = todo[k];
    for (int cand = 0; cand < d.n; ++cand) {
      if (injective && used[cand]) continue;
      if (!feasible(v, cand)) continue;
      img[v] = cand;
      if (injective) used[cand] = 1;
      if (run(k + 1)) return true;
      img[v] = -1;
      if (injective) used[cand] = 0;
    }
    return false;
  }
};

bool total_extension_exists(const DenseView& d, const std::vector<int>& domain,
                            const std::vector<int>& images, bool injective,
                            std::vector<int>* solution = nullptr) {
  std::vector<int> img(d.n, -1);
  std::vector<char> used(d.n, 0);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    img[domain[i]] = images[i];
    used[images[i]] = 1;
  }
  EndoSearch search{d, injective, img, used, {}};
  for (int v = 0; v < d.n; ++v)
    if (img[v] < 0) search.todo.push_back(v);
  if (!search.run(0)) return false;
  if (solution) *solution = img;
  return true;
}

// First candidate satisfying the one-point requirement of (domain,images) at
// c, or -1.
int first_target(const DenseView& d, const std::vector<int>& domain,
                 const std::vector<int>& images, int c) {
  for (int cand = 0; cand < d.n; ++cand) {
    if (!d.pleq(d.chi[c], d.chi[cand])) continue;
    bool ok = true;
    for (std::size_t j = 0; j < domain.size() && ok; ++j)
      ok = d.qleq(d.edge(c, domain[j]), d.edge(cand, images[j]));
    if (ok) return cand;
  }
  return -1;
}

VertexIdx blocked_vertex_for(const DenseView& d, const std::vector<int>& domain,
                             const std::vector<int>& images) {
  std::size_t pos = 0;
  VertexIdx first_unmapped = -1;
  for (int c = 0; c < d.n; ++c) {
    if (pos < domain.size() && domain[pos] == c) {
      ++pos;
      continue;
    }
    if (first_unmapped < 0) first_unmapped = c;
    if (first_target(d, domain, images, c) < 0) return c;
  }
  return first_unmapped;
}

}  // namespace

bool is_homomorphism(const PartialMap& f) {
  check_same_language(f);
  const ColoredGraph& gs = *f.source;
  const ColoredGraph& gt = *f.target;
  const Poset& P = gs.vertex_poset();
  const Poset& Q = gs.edge_poset();
  for (const auto& [v, w] : f.pairs)
    if (!P.leq(gs.chi(v), gt.chi(w))) return false;
  for (std::size_t i = 0; i < f.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < f.pairs.size(); ++j)
      if (!Q.leq(gs.xi(f.pairs[i].first, f.pairs[j].first),
                 gt.xi(f.pairs[i].second, f.pairs[j].second)))
        return false;
  return true;
}

bool is_monomorphism(const PartialMap& f) {
  return f.is_injective_map() && is_homomorphism(f);
}

std::vector<VertexIdx> one_point_targets(const PartialMap& f, VertexIdx c) {
  if (!is_homomorphism(f)) throw NotHomomorphism("map is not a homomorphism");
  check_extension_vertex(f, c);
  Requirement req = requirement(*f.source, f, c);
  std::vector<VertexIdx> out;
  for (int d = 0; d < f.target->vertex_count(); ++d)
    if (satisfies(*f.target, d, req)) out.push_back(d);
  return out;
}

std::vector<VertexIdx> naive_one_point_targets(const PartialMap& f,
                                               VertexIdx c) {
  if (!is_homomorphism(f)) throw NotHomomorphism("map is not a homomorphism");
  check_extension_vertex(f, c);
  std::vector<VertexIdx> out;
  for (int d = 0; d < f.target->vertex_count(); ++d)
    if (is_homomorphism(f.with_pair(c, d))) out.push_back(d);
  return out;
}

std::optional<PartialMap> extend_to_endomorphism(const PartialMap& f,
                                                 bool injective) {
  if (f.source != f.target)
    throw BadParameter("endomorphism extension needs source == target");
  if (injective) {
    if (!is_monomorphism(f))
      throw NotMonomorphism("seed map is not a monomorphism");
  } else if (!is_homomorphism(f)) {
    throw NotHomomorphism("seed map is not a homomorphism");
  }
  DenseView d(*f.source);
  std::vector<int> domain, images;
  for (const auto& [s, t] : f.pairs) {
    domain.push_back(s);
    images.push_back(t);
  }
  std::vector<int> solution;
  if (!total_extension_exists(d, domain, images, injective, &solution))
    return std::nullopt;
  std::vector<std::pair<VertexIdx, VertexIdx>> pairs;
  pairs.reserve(d.n);
  for (int v = 0; v < d.n; ++v) pairs.emplace_back(v, solution[v]);
  return PartialMap(*f.source, *f.target, std::move(pairs));
}

bool for_each_subset(int n, int min_size, int max_size,
                     const std::function<bool(const std::vector<int>&)>& visit) {
  max_size = std::min(max_size, n);
  for (int k = std::max(0, min_size); k <= max_size; ++k) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      if (!visit(comb)) return false;
      int i = k - 1;
      while (i >= 0 && comb[i] == n - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    if (k == 0) continue;
  }
  return true;
}

bool for_each_partial_hom(
    const ColoredGraph& g, const std::vector<VertexIdx>& domain, bool injective,
    const std::function<bool(const std::vector<VertexIdx>&)>& visit) {
  const Poset& P = g.vertex_poset();
  const Poset& Q = g.edge_poset();
  const int n = g.vertex_count();
  std::vector<VertexIdx> images(domain.size());
  std::vector<char> used(n, 0);

  std::function<bool(std::size_t)> rec = [&](std::size_t idx) -> bool {
    if (idx == domain.size()) return visit(images);
    VertexIdx v = domain[idx];
    for (int d = 0; d < n; ++d) {
      if (injective && used[d]) continue;
      if (!P.leq(g.chi(v), g.chi(d))) continue;
      bool ok = true;
      for (std::size_t j = 0; j < idx && ok; ++j)
        ok = Q.leq(g.xi(v, domain[j]), g.xi(d, images[j]));
      if (!ok) continue;
      images[idx] = d;
      if (injective) used[d] = 1;
      bool keep = rec(idx + 1);
      if (injective) used[d] = 0;
      if (!keep) return false;
    }
    return true;
  };
  return rec(0);
}

namespace {

struct CategoryHit {
  long ord = std::numeric_limits<long>::max();
  std::optional<ExtensionWitness> witness;
};

// One contiguous block of the global domain list. Indices are global, so the
// merge across blocks is a plain minimum.
std::array<CategoryHit, 3> classify_block(
    const ColoredGraph& g, const DenseView& d,
    const std::vector<std::vector<int>>& domains, long begin, long end) {
  std::array<CategoryHit, 3> hits;  // 0: hh, 1: mh, 2: mm
  auto record = [&](int cat, long ord, const std::vector<int>& dom,
                    const std::vector<int>& imgs) {
    std::vector<std::pair<VertexIdx, VertexIdx>> pairs;
    for (std::size_t i = 0; i < dom.size(); ++i)
      pairs.emplace_back(dom[i], imgs[i]);
    hits[cat].ord = ord;
    hits[cat].witness = ExtensionWitness{
        PartialMap::endo(g, std::move(pairs)), blocked_vertex_for(d, dom, imgs)};
  };
  for (long ord = begin; ord < end; ++ord) {
    const auto& dom = domains[ord];
    bool all_found = hits[0].witness && hits[1].witness && hits[2].witness;
    if (all_found) break;
    for_each_partial_hom(g, dom, false, [&](const std::vector<int>& imgs) {
      bool injective = true;
      {
        std::vector<int> sorted = imgs;
        std::sort(sorted.begin(), sorted.end());
        injective =
            std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      }
      if (!hits[0].witness || (injective && !hits[1].witness)) {
        bool extends = total_extension_exists(d, dom, imgs, false);
        if (!extends) {
          if (!hits[0].witness) record(0, ord, dom, imgs);
          if (injective && !hits[1].witness) record(1, ord, dom, imgs);
        }
      }
      if (injective && !hits[2].witness &&
          !total_extension_exists(d, dom, imgs, true))
        record(2, ord, dom, imgs);
      return !(hits[0].witness && hits[1].witness && hits[2].witness);
    });
  }
  return hits;
}

}  // namespace

Classification classify(const ColoredGraph& g, const ClassifyOptions& opts) {
  std::string why;
  if (!validate(g, &why)) throw InvalidGraph("invalid graph: " + why);
  const int n = g.vertex_count();
  const int bound = opts.max_domain < 0 ? n : std::min(opts.max_domain, n);

  Classification result;
  result.search_bound = bound;
  if (n == 0) return result;

  std::vector<std::vector<int>> domains;
  for_each_subset(n, 1, bound, [&](const std::vector<int>& s) {
    domains.push_back(s);
    return true;
  });

  DenseView dense(g);
  const long total = static_cast<long>(domains.size());
  const int threads = std::max(
      1, static_cast<int>(std::min<long>(opts.threads, total > 0 ? total : 1)));

  std::array<CategoryHit, 3> merged;
  if (threads == 1) {
    merged = classify_block(g, dense, domains, 0, total);
  } else {
    std::vector<std::future<std::array<CategoryHit, 3>>> futs;
    const long chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long b = t * chunk;
      long e = std::min(total, b + chunk);
      if (b >= e) break;
      futs.push_back(std::async(std::launch::async, [&, b, e]() {
        return classify_block(g, dense, domains, b, e);
      }));
    }
    for (auto& fu : futs) {
      auto part = fu.get();
      for (int cat = 0; cat < 3; ++cat)
        if (part[cat].witness && part[cat].ord < merged[cat].ord)
          merged[cat] = std::move(part[cat]);
    }
  }

  if (merged[0].witness) {
    result.is_hh = false;
    result.hh_witness = std::move(merged[0].witness);
  }
  if (merged[1].witness) {
    result.is_mh = false;
    result.mh_witness = std::move(merged[1].witness);
  }
  if (merged[2].witness) {
    result.is_mm = false;
    result.mm_witness = std::move(merged[2].witness);
  }
  return result;
}

std::optional<PartialMap> transversal_extend(const PartialMap& f, VertexIdx u) {
  if (!f.source->edge_poset().is_linear())
    throw NonLinearQ("transversal extension needs a linear edge-color order");
  if (!is_homomorphism(f)) throw NotHomomorphism("map is not a homomorphism");
  check_extension_vertex(f, u);
  const ColoredGraph& gs = *f.source;
  const Poset& Q = gs.edge_poset();

  // Pointwise-maximal transversal: per fiber the vertex maximizing xi(u, .),
  // first-seen (least canonical) on ties.
  std::vector<VertexIdx> image = f.image_sorted_unique();
  std::vector<std::pair<VertexIdx, VertexIdx>> transversal;
  for (VertexIdx b : image) {
    VertexIdx best = -1;
    for (const auto& [x, t] : f.pairs) {
      if (t != b) continue;
      if (best < 0 ||
          (Q.leq(gs.xi(u, best), gs.xi(u, x)) && gs.xi(u, x) != gs.xi(u, best)))
        best = x;
    }
    transversal.emplace_back(best, b);
  }
  PartialMap restricted(*f.source, *f.target, std::move(transversal));
  auto targets = one_point_targets(restricted, u);
  if (targets.empty()) return std::nullopt;
  return f.with_pair(u, targets.front());
}

namespace {

// Shared core of the one-point failure scans: visits blocked (f, c) pairs in
// canonical order until the callback declines more.
void scan_blocked(
    const ColoredGraph& g, int max_domain, bool monos_only,
    const std::function<bool(const std::vector<int>&, const std::vector<int>&,
                             int)>& on_blocked) {
  std::string why;
  if (!validate(g, &why)) throw InvalidGraph("invalid graph: " + why);
  DenseView d(g);
  const int n = d.n;
  bool stop = false;

  for_each_subset(n, 1, std::min(max_domain, n), [&](const std::vector<int>& dom) {
    std::vector<int> images(dom.size());
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t idx) -> bool {
      if (idx == dom.size()) {
        std::size_t pos = 0;
        for (int c = 0; c < n; ++c) {
          if (pos < dom.size() && dom[pos] == c) {
            ++pos;
            continue;
          }
          if (first_target(d, dom, images, c) < 0) {
            if (!on_blocked(dom, images, c)) {
              stop = true;
              return false;
            }
          }
        }
        return true;
      }
      int v = dom[idx];
      for (int cand = 0; cand < n; ++cand) {
        if (monos_only && used[cand]) continue;
        if (!d.pleq(d.chi[v], d.chi[cand])) continue;
        bool ok = true;
        for (std::size_t j = 0; j < idx && ok; ++j)
          ok = d.qleq(d.edge(v, dom[j]), d.edge(cand, images[j]));
        if (!ok) continue;
        images[idx] = cand;
        if (monos_only) used[cand] = 1;
        bool keep = rec(idx + 1);
        if (monos_only) used[cand] = 0;
        if (!keep) return false;
      }
      return true;
    };
    rec(0);
    return !stop;
  });
}

PartialMap make_endo(const ColoredGraph& g, const std::vector<int>& dom,
                     const std::vector<int>& imgs) {
  std::vector<std::pair<VertexIdx, VertexIdx>> pairs;
  for (std::size_t i = 0; i < dom.size(); ++i) pairs.emplace_back(dom[i], imgs[i]);
  return PartialMap::endo(g, std::move(pairs));
}

}  // namespace

std::optional<std::pair<PartialMap, VertexIdx>> hh_failure_witness(
    const ColoredGraph& g, int max_domain, bool monos_only) {
  std::optional<std::pair<PartialMap, VertexIdx>> out;
  scan_blocked(g, max_domain, monos_only,
               [&](const std::vector<int>& dom, const std::vector<int>& imgs,
                   int c) {
                 out = std::make_pair(make_endo(g, dom, imgs), c);
                 return false;
               });
  return out;
}

std::vector<std::pair<PartialMap, VertexIdx>> blocked_one_point_witnesses(
    const ColoredGraph& g, int max_domain, bool monos_only, std::size_t limit) {
  std::vector<std::pair<PartialMap, VertexIdx>> out;
  scan_blocked(g, max_domain, monos_only,
               [&](const std::vector<int>& dom, const std::vector<int>& imgs,
                   int c) {
                 out.emplace_back(make_endo(g, dom, imgs), c);
                 return out.size() < limit;
               });
  return out;
}

}  // namespace homlab
