#include "homlab/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "homlab/engine.hpp"
#include "homlab/errors.hpp"

namespace homlab {

namespace {

// Number of (subset, pattern) queries over a base of the given size, clamped
// well above any admissible vertex budget.
long long projected_queries(long long base, long long cap, long long colors) {
  const long long clamp = 4000000000000000LL;
  long long total = 0;
  for (long long s = 1; s <= std::min(cap, base); ++s) {
    long long comb = 1;
    for (long long t = 1; t <= s; ++t) {
      comb = comb * (base - t + 1) / t;
      if (comb > clamp) return clamp;
    }
    long long pw = 1;
    for (long long t = 0; t < s; ++t) {
      pw *= colors;
      if (pw > clamp) return clamp;
    }
    if (comb > clamp / pw) return clamp;
    total += comb * pw;
    if (total > clamp) return clamp;
  }
  return total;
}

void check_budget(long long projected_total, const GeneratorLimits& limits) {
  if (projected_total > limits.max_vertices)
    throw SizeExplosion("projected vertex count " +
                        std::to_string(projected_total) + " exceeds the cap " +
                        std::to_string(limits.max_vertices));
}

std::vector<std::string> all_ids(const ColoredGraph& g) {
  return g.vertex_ids();
}

struct CoreNaming {
  std::function<std::string(int cls, bool is_base, int ordinal)> name;
  std::function<VertexLabels(int cls)> labels;
  std::function<ElemIdx(int cls)> vertex_color;
};

struct CoreResult {
  std::vector<VertexIdx> base;
  std::vector<std::vector<VertexIdx>> classes;  // index cls-1
};

// Appends a partitioned extension-axiom core to g: base vertices round-robin
// over m classes, then for every pass, nonempty base subset of size
// <= subset_cap (by size then lexicographically) and color pattern
// (lexicographic over fn_colors), one fresh witness per class realizing the
// pattern. fn_colors[0] must be the minimum of the edge poset.
CoreResult build_partitioned_core(ColoredGraph& g, LevelCertificate& cert,
                                  const std::vector<ElemIdx>& fn_colors,
                                  int m, int base_size, int subset_cap,
                                  int passes, const CoreNaming& naming,
                                  std::optional<int> copy_tag) {
  const Poset& Q = g.edge_poset();
  CoreResult res;
  res.classes.resize(m);
  std::vector<int> base_count(m, 0);
  for (int j = 0; j < base_size; ++j) {
    int cls = j % m + 1;
    VertexIdx v = g.add_vertex(naming.name(cls, true, base_count[cls - 1]++),
                               naming.vertex_color(cls), naming.labels(cls));
    res.base.push_back(v);
    res.classes[cls - 1].push_back(v);
  }

  std::vector<std::vector<int>> subsets;  // positions into res.base
  for_each_subset(base_size, 1, std::min(subset_cap, base_size),
                  [&](const std::vector<int>& s) {
                    subsets.push_back(s);
                    return true;
                  });

  const int colors = static_cast<int>(fn_colors.size());
  std::vector<int> wit_count(m, 0);
  for (int pass = 0; pass < passes; ++pass) {
    for (const auto& sub : subsets) {
      const int k = static_cast<int>(sub.size());
      std::vector<int> digits(k, 0);
      while (true) {
        for (int cls = 1; cls <= m; ++cls) {
          VertexIdx w =
              g.add_vertex(naming.name(cls, false, wit_count[cls - 1]++),
                           naming.vertex_color(cls), naming.labels(cls));
          CertificateAxiom ax;
          ax.copy = copy_tag;
          ax.cls = cls;
          for (int idx = 0; idx < k; ++idx) {
            VertexIdx y = res.base[sub[idx]];
            ElemIdx c = fn_colors[digits[idx]];
            if (c != Q.min_index()) g.set_edge(w, y, c);
            ax.base.push_back(g.id(y));
            ax.colors.push_back(Q.name(c));
          }
          ax.witness = g.id(w);
          cert.axioms.push_back(std::move(ax));
          res.classes[cls - 1].push_back(w);
        }
        int i = k - 1;
        while (i >= 0 && digits[i] == colors - 1) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
      }
    }
  }
  return res;
}

// Drops axioms whose recorded pattern no longer matches the graph (the later
// nonedge fills overwrite minimum-colored certified pairs).
void prune_certificate(LevelCertificate& cert, const ColoredGraph& g) {
  const Poset& Q = g.edge_poset();
  std::vector<CertificateAxiom> kept;
  kept.reserve(cert.axioms.size());
  for (auto& ax : cert.axioms) {
    bool ok = true;
    VertexIdx w = g.index_of(ax.witness);
    for (std::size_t i = 0; i < ax.base.size() && ok; ++i)
      ok = g.xi(w, g.index_of(ax.base[i])) == Q.index_of(ax.colors[i]);
    if (ok) kept.push_back(std::move(ax));
  }
  cert.axioms = std::move(kept);
}

std::string join_names(const Poset& p) {
  std::string out;
  for (const auto& e : p.elements()) {
    if (!out.empty()) out += ",";
    out += e;
  }
  return out;
}

}  // namespace

ConstructionReport rado_approx(int n, int base_size, int rounds, int subset_cap,
                               const GeneratorLimits& limits) {
  if (n < 1 || base_size < 1 || rounds < 1 || subset_cap < 1)
    throw BadParameter("rado_approx needs n, base_size, rounds, cap >= 1");
  auto P = std::make_shared<const Poset>(Poset::chain(1));
  auto Q = std::make_shared<const Poset>(Poset::antichain_over_zero(n));
  ColoredGraph g(P, Q);
  LevelCertificate cert;
  for (int j = 0; j < base_size; ++j)
    g.add_vertex("b" + std::to_string(j), P->min_index());
  cert.levels.push_back(all_ids(g));

  for (int round = 1; round <= rounds; ++round) {
    const int level_size = g.vertex_count();
    long long planned =
        projected_queries(level_size, subset_cap, n + 1);
    check_budget(level_size + planned, limits);

    std::vector<std::vector<int>> subsets;
    for_each_subset(level_size, 1, std::min(subset_cap, level_size),
                    [&](const std::vector<int>& s) {
                      subsets.push_back(s);
                      return true;
                    });
    int wit = 0;
    for (const auto& sub : subsets) {
      const int k = static_cast<int>(sub.size());
      std::vector<int> digits(k, 0);
      while (true) {
        VertexIdx w = g.add_vertex(
            "r" + std::to_string(round) + "/w" + std::to_string(wit++),
            P->min_index());
        CertificateAxiom ax;
        for (int idx = 0; idx < k; ++idx) {
          ElemIdx c = digits[idx];  // antichain poset: index == color digit
          if (c != Q->min_index()) g.set_edge(w, sub[idx], c);
          ax.base.push_back(g.id(sub[idx]));
          ax.colors.push_back(Q->name(c));
        }
        ax.witness = g.id(w);
        cert.axioms.push_back(std::move(ax));
        int i = k - 1;
        while (i >= 0 && digits[i] == n) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
      }
    }
    cert.levels.push_back(all_ids(g));
  }

  ConstructionReport rep{std::move(g), std::move(cert), {}, {}, std::nullopt};
  rep.parameters = {{"generator", "rado"},
                    {"n", std::to_string(n)},
                    {"base_size", std::to_string(base_size)},
                    {"rounds", std::to_string(rounds)},
                    {"subset_cap", std::to_string(subset_cap)}};
  rep.notes = {"one-point extension axioms certified per level for subsets of "
               "size <= " +
               std::to_string(subset_cap)};
  return rep;
}

ConstructionReport partitioned_rado(int n, int m, int base_size, int subset_cap,
                                    int passes, const GeneratorLimits& limits) {
  if (n < 1 || m < 1 || base_size < 1 || subset_cap < 1 || passes < 1)
    throw BadParameter("partitioned_rado needs positive parameters");
  auto P = std::make_shared<const Poset>(Poset::chain(1));
  auto Q = std::make_shared<const Poset>(Poset::antichain_over_zero(n));
  long long planned = projected_queries(base_size, subset_cap, n + 1);
  check_budget(base_size + planned * m * passes, limits);

  ColoredGraph g(P, Q);
  LevelCertificate cert;
  std::vector<ElemIdx> fn_colors(n + 1);
  std::iota(fn_colors.begin(), fn_colors.end(), 0);
  CoreNaming naming{
      [](int cls, bool is_base, int k) {
        return "C" + std::to_string(cls) + "/" + (is_base ? "b" : "w") +
               std::to_string(k);
      },
      [](int cls) {
        VertexLabels l;
        l.class_index = cls;
        return l;
      },
      [&](int) { return P->min_index(); }};
  CoreResult core = build_partitioned_core(g, cert, fn_colors, m, base_size,
                                           subset_cap, passes, naming,
                                           std::nullopt);
  cert.levels.push_back([&] {
    std::vector<std::string> ids;
    for (VertexIdx v : core.base) ids.push_back(g.id(v));
    return ids;
  }());
  cert.levels.push_back(all_ids(g));

  ConstructionReport rep{std::move(g), std::move(cert), {}, {}, std::nullopt};
  rep.parameters = {{"generator", "partitioned"},
                    {"n", std::to_string(n)},
                    {"m", std::to_string(m)},
                    {"base_size", std::to_string(base_size)},
                    {"subset_cap", std::to_string(subset_cap)},
                    {"passes", std::to_string(passes)}};
  rep.notes = {"every base query has " + std::to_string(passes) +
               " certified witnesses in each of the " + std::to_string(m) +
               " classes"};
  return rep;
}

namespace {

constexpr const char* kDiamondLetters = "abc";

int next_letter(int x) { return (x + 1) % 3; }
int prev_letter(int x) { return (x + 2) % 3; }

}  // namespace

ConstructionReport diamond_m(int clique_size) {
  if (clique_size < 1) throw BadParameter("clique_size must be >= 1");
  auto P = std::make_shared<const Poset>(Poset::chain(1));
  auto Q = std::make_shared<const Poset>(
      Poset({"0", "R", "B", "1"},
            {{"0", "R"}, {"0", "B"}, {"R", "1"}, {"B", "1"}}, "0"));
  ColoredGraph g(P, Q);
  const ElemIdx R = Q->index_of("R");
  const ElemIdx B = Q->index_of("B");
  const ElemIdx one = Q->index_of("1");

  for (int x = 0; x < 3; ++x)
    for (int s = 0; s < 2; ++s)
      for (int k = 0; k < clique_size; ++k) {
        VertexLabels l;
        l.pi = std::string(1, kDiamondLetters[x]);
        l.s = s;
        g.add_vertex(std::string("M") + kDiamondLetters[x] + "^" +
                         std::to_string(s) + "/" + std::to_string(k),
                     P->min_index(), l);
      }
  const int clique_total = 6 * clique_size;
  for (int u = 0; u < clique_total; ++u)
    for (int v = u + 1; v < clique_total; ++v) g.set_edge(u, v, one);

  VertexIdx specials[3];
  for (int x = 0; x < 3; ++x) {
    VertexLabels l;
    l.special = true;
    specials[x] =
        g.add_vertex(std::string(1, kDiamondLetters[x]), P->min_index(), l);
  }
  for (int v = 0; v < clique_total; ++v) {
    int x = (v / (2 * clique_size));      // owning letter
    int s = (v / clique_size) % 2;        // superscript
    g.set_edge(v, specials[x], one);
    for (int z = 0; z < 3; ++z) {
      if (z == x) continue;
      bool red = (s == 0 && z == next_letter(x)) || (s == 1 && z == prev_letter(x));
      g.set_edge(v, specials[z], red ? R : B);
    }
  }

  LevelCertificate cert;
  cert.levels.push_back(all_ids(g));
  ConstructionReport rep{std::move(g), std::move(cert), {}, {}, std::nullopt};
  rep.parameters = {{"generator", "diamond"},
                    {"clique_size", std::to_string(clique_size)}};
  rep.notes = {"finite truncation: each clique holds " +
               std::to_string(clique_size) + " vertices"};
  return rep;
}

// Edge color a vertex of M_y^s shows toward special letter z != y.
namespace {
bool diamond_red(int y, int s, int z) {
  return (s == 0 && z == next_letter(y)) || (s == 1 && z == prev_letter(y));
}
}  // namespace

DiamondContext::DiamondContext(const ColoredGraph& M) : g(&M) {
  const Poset& Q = M.edge_poset();
  for (const char* e : {"0", "R", "B", "1"})
    if (!Q.has_element(e))
      throw WrongGenerator("edge poset is not the diamond color order");
  for (int x = 0; x < 3; ++x) {
    std::string id(1, kDiamondLetters[x]);
    if (!M.has_vertex(id)) throw WrongGenerator("missing special vertex " + id);
    special[x] = M.index_of(id);
    if (!M.labels(special[x]).special)
      throw WrongGenerator("vertex " + id + " is not marked special");
  }
  for (int v = 0; v < M.vertex_count(); ++v) {
    const auto& l = M.labels(v);
    if (l.special) {
      if (v != special[0] && v != special[1] && v != special[2])
        throw WrongGenerator("unexpected special vertex " + M.id(v));
      continue;
    }
    if (!l.pi || !l.s || *l.s < 0 || *l.s > 1)
      throw WrongGenerator("clique vertex without pi/s labels: " + M.id(v));
    int x = static_cast<int>(l.pi->at(0) - 'a');
    if (x < 0 || x > 2) throw WrongGenerator("bad pi label on " + M.id(v));
    clique[x][*l.s].push_back(v);
  }
}

std::optional<VertexIdx> diamond_extend(const ColoredGraph& M,
                                        const PartialMap& f, VertexIdx d,
                                        DiamondExtendInfo* info) {
  return diamond_extend(DiamondContext(M), f, d, info);
}

std::optional<VertexIdx> diamond_extend(const DiamondContext& dv,
                                        const PartialMap& f, VertexIdx d,
                                        DiamondExtendInfo* info) {
  const ColoredGraph& M = *dv.g;
  if (f.source != &M || f.target != &M)
    throw WrongGenerator("map must live on the generated structure");
  if (!is_monomorphism(f)) throw NotMonomorphism("map is not a monomorphism");
  if (d < 0 || d >= M.vertex_count())
    throw UnknownVertex("vertex index out of range");
  if (f.maps(d)) throw VertexInDomain("vertex already mapped: " + M.id(d));

  DiamondExtendInfo local;
  DiamondExtendInfo& out = info ? *info : local;
  out = DiamondExtendInfo{};

  const Poset& P = M.vertex_poset();
  const Poset& Q = M.edge_poset();
  auto in_image = [&](VertexIdx v) {
    for (const auto& [s, t] : f.pairs)
      if (t == v) return true;
    return false;
  };
  auto fresh_in = [&](std::initializer_list<const std::vector<VertexIdx>*> pools)
      -> std::optional<VertexIdx> {
    for (const auto* pool : pools)
      for (VertexIdx v : *pool)
        if (!in_image(v)) return v;
    return std::nullopt;
  };
  auto valid = [&](VertexIdx w) {
    if (!P.leq(M.chi(d), M.chi(w))) return false;
    for (const auto& [s, t] : f.pairs)
      if (!Q.leq(M.xi(d, s), M.xi(w, t))) return false;
    return true;
  };
  auto fallback = [&]() -> std::optional<VertexIdx> {
    for (int cand = 0; cand < M.vertex_count(); ++cand)
      if (valid(cand)) return cand;
    return std::nullopt;
  };

  std::vector<int> image_specials;
  for (int x = 0; x < 3; ++x)
    if (in_image(dv.special[x])) image_specials.push_back(x);

  if (image_specials.size() <= 1) {
    out.route = "easy1";
    std::optional<VertexIdx> w;
    if (image_specials.empty()) {
      w = fresh_in({&dv.clique[0][0], &dv.clique[0][1], &dv.clique[1][0],
                    &dv.clique[1][1], &dv.clique[2][0], &dv.clique[2][1]});
    } else {
      int y = image_specials[0];
      w = fresh_in({&dv.clique[y][0], &dv.clique[y][1]});
    }
    if (!w) return std::nullopt;
    if (!valid(*w)) {
      out.diverged = true;
      return fallback();
    }
    return w;
  }

  const int d_letter = dv.letter_of_special(d);
  if (d_letter >= 0) {
    out.route = "fallback";
    return fallback();
  }
  const int pd = static_cast<int>(M.labels(d).pi->at(0) - 'a');
  const int sd = *M.labels(d).s;

  auto spec_image = [&](int x) -> std::optional<VertexIdx> {
    return f.apply(dv.special[x]);
  };
  auto is_clique_img = [&](std::optional<VertexIdx> v) {
    return v && dv.letter_of_special(*v) < 0;
  };
  auto pick = [&](int letter, int super,
                  const std::string& route) -> std::optional<VertexIdx> {
    out.route = route;
    auto w = fresh_in({&dv.clique[letter][super]});
    if (!w) return std::nullopt;  // finite-scale exhaustion
    if (!valid(*w)) {
      out.diverged = true;
      return fallback();
    }
    return w;
  };

  auto fa = spec_image(0), fb = spec_image(1), fc = spec_image(2);

  if (image_specials.size() == 3) {
    // All three specials hit; the easy route needs the special set mapped
    // onto itself.
    bool bijective = fa && fb && fc && dv.letter_of_special(*fa) >= 0 &&
                     dv.letter_of_special(*fb) >= 0 &&
                     dv.letter_of_special(*fc) >= 0;
    if (bijective) {
      out.route = "easy2";
      int tgt = dv.letter_of_special(*spec_image(pd));
      for (int sp = 0; sp < 2; ++sp) {
        bool dominates = true;
        for (int x = 0; x < 3 && dominates; ++x) {
          if (x == pd) continue;
          int ximg = dv.letter_of_special(*spec_image(x));
          if (ximg == tgt) {
            dominates = false;  // cannot happen for a bijection
            break;
          }
          dominates = diamond_red(tgt, sp, ximg) == diamond_red(pd, sd, x);
        }
        if (dominates) {
          auto w = fresh_in({&dv.clique[tgt][sp]});
          if (!w) return std::nullopt;
          if (!valid(*w)) {
            out.diverged = true;
            return fallback();
          }
          return w;
        }
      }
      out.diverged = true;
      return fallback();
    }
    out.route = "fallback";
    return fallback();
  }

  // Exactly two specials in the image; the case table is written for {b,c}.
  if (image_specials == std::vector<int>{1, 2}) {
    auto letter_img = [&](int x) { return dv.letter_of_special(*spec_image(x)); };
    auto resolve = [&](VertexIdx v) {
      int sp = dv.letter_of_special(v);
      if (sp >= 0) return sp;
      return static_cast<int>(M.labels(v).pi->at(0) - 'a');
    };

    bool b_to_b = fb && dv.special[1] == *fb;
    bool b_to_c = fb && dv.special[2] == *fb;
    bool c_to_b = fc && dv.special[1] == *fc;
    bool c_to_c = fc && dv.special[2] == *fc;
    bool a_to_c = fa && dv.special[2] == *fa;

    if (b_to_b && c_to_c && is_clique_img(fa)) {
      return pick(pd, sd, "case1");
    }
    if (b_to_c && c_to_b && is_clique_img(fa)) {
      if (pd == 1 || pd == 2) return pick(letter_img(pd), 1 - sd, "case2");
      return pick(0, 1 - sd, "case2");
    }
    if (a_to_c && b_to_b && is_clique_img(fc)) {
      int pc = resolve(*fc);
      if (pc == 2 || pc == 0) {  // case 3: image of c lies in M_c or M_a
        if (pd == 0 || pd == 1) return pick(letter_img(pd), 1 - sd, "case3");
        return pick(2, sd, "case3");
      }
      // case 4: image of c lies in M_b
      if (pd == 0) return pick(2, 1 - sd, "case4");
      if (pd == 2) return pick(2, sd, "case4");
      return pick(1, 1 - sd, "case4");
    }
    if (a_to_c && c_to_b && is_clique_img(fb)) {
      int pb = resolve(*fb);
      if (pb == 0 || pb == 1) {  // case 5: image of b lies in M_a or M_b
        if (pd == 0 || pd == 2) return pick(letter_img(pd), sd, "case5");
        return pick(1, 1 - sd, "case5");
      }
      // case 6: image of b lies in M_c
      if (pd == 1 || pd == 2) return pick(resolve(*spec_image(pd)), 1 - sd, "case6");
      return pick(2, sd, "case6");
    }
  }

  out.route = "fallback";
  return fallback();
}

ConstructionReport lattice_counterexample(const Poset& P_in, const Poset& Q_in,
                                          int base_size, int subset_cap,
                                          int passes,
                                          const GeneratorLimits& limits) {
  if (Q_in.is_directed())
    throw DirectedQ("every pair of edge colors has a common upper bound");
  if (passes < 1) throw BadParameter("passes must be >= 1");
  const int m = P_in.size();
  if (base_size < m + 1)
    throw BadParameter("base_size must be >= |P|+1 so one class holds an "
                       "equal-colored pair");
  if (subset_cap < 2)
    throw BadParameter("subset_cap must be >= 2 for the designated witness");

  auto P = std::make_shared<const Poset>(P_in);
  auto Q = std::make_shared<const Poset>(Q_in);
  std::vector<ElemIdx> maximals = Q->maximal_elements();
  const int n = static_cast<int>(maximals.size());  // >= 2 when not directed

  long long planned = projected_queries(base_size, subset_cap, n + 1);
  check_budget(base_size + planned * m * passes, limits);

  ColoredGraph g(P, Q);
  LevelCertificate cert;
  std::vector<ElemIdx> fn_colors{Q->min_index()};
  fn_colors.insert(fn_colors.end(), maximals.begin(), maximals.end());
  CoreNaming naming{
      [](int cls, bool is_base, int k) {
        return "C" + std::to_string(cls) + "/" + (is_base ? "b" : "w") +
               std::to_string(k);
      },
      [](int cls) {
        VertexLabels l;
        l.class_index = cls;
        return l;
      },
      [&](int cls) { return static_cast<ElemIdx>(cls - 1); }};
  CoreResult core = build_partitioned_core(g, cert, fn_colors, m, base_size,
                                           subset_cap, passes, naming,
                                           std::nullopt);

  // Designated equal-colored nonedge: the first two base vertices of class 1.
  VertexIdx u = core.base[0];
  VertexIdx v = core.base[m];
  VertexIdx w = -1;
  for (const auto& ax : cert.axioms) {
    if (ax.cls == 1 && ax.base.size() == 2 && ax.base[0] == g.id(u) &&
        ax.base[1] == g.id(v) && ax.colors[0] == Q->name(maximals[0]) &&
        ax.colors[1] == Q->name(maximals[1])) {
      w = g.index_of(ax.witness);
      break;
    }
  }
  if (w < 0) throw BadParameter("designated witness query was not certified");

  // Partial fill: every second remaining nonedge, cycling through the
  // non-maximal colors, never touching the designated pair.
  std::vector<ElemIdx> palette;
  for (ElemIdx e = 0; e < Q->size(); ++e) {
    if (e == Q->min_index()) continue;
    if (std::find(maximals.begin(), maximals.end(), e) != maximals.end())
      continue;
    palette.push_back(e);
  }
  if (!palette.empty()) {
    long long ordinal = 0, filled = 0;
    const int total = g.vertex_count();
    for (int a = 0; a < total; ++a)
      for (int b = a + 1; b < total; ++b) {
        if (a == u && b == v) continue;
        if (g.xi(a, b) != Q->min_index()) continue;
        if (ordinal++ % 2 == 0)
          g.set_edge(a, b, palette[filled++ % palette.size()]);
      }
    prune_certificate(cert, g);
  }

  for (VertexIdx x : {u, v, w}) {
    VertexLabels l = g.labels(x);
    l.special = true;
    g.set_labels(x, l);
  }

  cert.levels.clear();
  {
    std::vector<std::string> base_ids;
    for (VertexIdx b : core.base) base_ids.push_back(g.id(b));
    cert.levels.push_back(std::move(base_ids));
  }
  cert.levels.push_back(all_ids(g));

  ConstructionReport rep{std::move(g), std::move(cert), {}, {}, std::nullopt};
  rep.designated_triple = {rep.graph.id(u), rep.graph.id(v), rep.graph.id(w)};
  rep.parameters = {{"generator", "lattice"},
                    {"p", join_names(P_in)},
                    {"q", join_names(Q_in)},
                    {"base_size", std::to_string(base_size)},
                    {"subset_cap", std::to_string(subset_cap)},
                    {"passes", std::to_string(passes)}};
  rep.notes = {"designated triple " + rep.graph.id(u) + "," + rep.graph.id(v) +
               "," + rep.graph.id(w) +
               ": equal-colored nonedge joined to a witness by two distinct "
               "maximal colors"};
  return rep;
}

int c_index(int i, int j, int n) {
  if (n < 1) throw BadParameter("n must be >= 1");
  if (i < 1 || i > n + 1 || j < 1 || j > n + 1)
    throw IndexOutOfRange("copy indices must lie in 1.." + std::to_string(n + 1));
  if (i == j) throw EqualIndices("copy indices must differ");
  return j <= i - 1 ? j : j - 1;
}

namespace {

std::vector<std::vector<int>> permutations_lex(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string one_line(const std::vector<int>& perm) {
  std::string s = "[";
  for (int v : perm) s += std::to_string(v);
  return s + "]";
}

}  // namespace

ConstructionReport mainthm_structure(const Poset& Q_in, int base_size,
                                     int subset_cap, int passes,
                                     std::uint64_t fill_seed,
                                     const MainthmOptions& opts,
                                     const GeneratorLimits& limits) {
  if (base_size < 1 || subset_cap < 1 || passes < 1)
    throw BadParameter("mainthm needs positive parameters");
  if (!Q_in.is_directed())
    throw NonDirectedQ("edge-color order must be directed");
  if (Q_in.is_linear()) throw LinearQ("edge-color order must not be linear");

  auto Q = std::make_shared<const Poset>(Q_in);
  const ElemIdx top = *Q->maximum();
  const std::vector<ElemIdx> tops = Q->strict_tops_below_top();
  const int n = static_cast<int>(tops.size());
  if (n < 2)
    throw BadParameter("need at least two maximal colors below the top");
  if (n > 8) throw SizeExplosion("class count n! is out of reach");

  std::shared_ptr<const Poset> P =
      opts.P ? opts.P : std::make_shared<const Poset>(Poset::chain(1));
  ElemIdx special_chi = P->min_index();
  if (opts.vertex_colored) {
    if (P->size() < 2)
      throw BadParameter("vertex-colored variant needs a non-trivial P");
    special_chi = P->maximal_elements().front();
  }

  const auto perms = permutations_lex(n);
  const int m = static_cast<int>(perms.size());
  long long per_copy =
      base_size + projected_queries(base_size, subset_cap, 2) * m * passes;
  check_budget(static_cast<long long>(n + 1) * per_copy + (n + 1), limits);

  ColoredGraph g(P, Q);
  LevelCertificate cert;
  std::vector<std::string> sig;
  sig.reserve(m);
  for (const auto& p : perms) sig.push_back(one_line(p));

  std::vector<std::pair<int, int>> copy_range;  // [begin, end)
  std::vector<std::vector<VertexIdx>> copy_base(n + 1);
  for (int i = 1; i <= n + 1; ++i) {
    int begin = g.vertex_count();
    CoreNaming naming{
        [&, i](int cls, bool is_base, int k) {
          return "M" + std::to_string(i) + "^" + sig[cls - 1] + "/" +
                 (is_base ? "b" : "w") + std::to_string(k);
        },
        [&, i](int cls) {
          VertexLabels l;
          l.copy_index = i;
          l.class_index = cls;
          l.sigma = perms[cls - 1];
          return l;
        },
        [&](int) { return P->min_index(); }};
    CoreResult core =
        build_partitioned_core(g, cert, {Q->min_index(), top}, m, base_size,
                               subset_cap, passes, naming, i);
    copy_base[i - 1] = core.base;
    copy_range.emplace_back(begin, g.vertex_count());
  }

  for (std::size_t i = 0; i < copy_range.size(); ++i)
    for (std::size_t j = i + 1; j < copy_range.size(); ++j)
      for (int u = copy_range[i].first; u < copy_range[i].second; ++u)
        for (int v = copy_range[j].first; v < copy_range[j].second; ++v)
          g.set_edge(u, v, top);

  // Fill every intra-copy nonedge, cycling through Q \ {0} from a seeded
  // offset; the low colors of Q occur only here.
  std::vector<ElemIdx> palette;
  for (ElemIdx e = 0; e < Q->size(); ++e)
    if (e != Q->min_index()) palette.push_back(e);
  std::vector<char> filled_color(Q->size(), 0);
  long long k = 0;
  const std::size_t offset = fill_seed % palette.size();
  for (const auto& [begin, end] : copy_range)
    for (int u = begin; u < end; ++u)
      for (int v = u + 1; v < end; ++v) {
        if (g.xi(u, v) != Q->min_index()) continue;
        ElemIdx c = palette[(offset + k++) % palette.size()];
        g.set_edge(u, v, c);
        filled_color[c] = 1;
      }
  for (ElemIdx e : palette) {
    if (filled_color[e] || e == top) continue;
    if (std::find(tops.begin(), tops.end(), e) != tops.end()) continue;
    throw BadParameter("too few intra-copy nonedges to use color " +
                       Q->name(e) + "; increase base_size");
  }

  std::vector<VertexIdx> xs;
  for (int i = 1; i <= n + 1; ++i) {
    VertexLabels l;
    l.special = true;
    l.copy_index = i;
    xs.push_back(g.add_vertex("x" + std::to_string(i), special_chi, l));
  }
  for (int i = 1; i <= n + 1; ++i) {
    const auto& [begin, end] = copy_range[i - 1];
    for (int v = begin; v < end; ++v) {
      g.set_edge(v, xs[i - 1], top);
      const auto& sigma = *g.labels(v).sigma;
      for (int j = 1; j <= n + 1; ++j) {
        if (j == i) continue;
        g.set_edge(v, xs[j - 1], tops[sigma[c_index(i, j, n) - 1] - 1]);
      }
    }
  }

  prune_certificate(cert, g);
  {
    std::vector<std::string> bases;
    for (const auto& b : copy_base)
      for (VertexIdx v : b) bases.push_back(g.id(v));
    cert.levels.push_back(std::move(bases));
    std::vector<std::string> copies;
    for (const auto& [begin, end] : copy_range)
      for (int v = begin; v < end; ++v) copies.push_back(g.id(v));
    cert.levels.push_back(std::move(copies));
    cert.levels.push_back(all_ids(g));
  }

  ConstructionReport rep{std::move(g), std::move(cert), {}, {}, std::nullopt};
  rep.parameters = {{"generator", "mainthm"},
                    {"q", join_names(Q_in)},
                    {"n", std::to_string(n)},
                    {"base_size", std::to_string(base_size)},
                    {"subset_cap", std::to_string(subset_cap)},
                    {"passes", std::to_string(passes)},
                    {"fill_seed", std::to_string(fill_seed)},
                    {"vertex_colored", opts.vertex_colored ? "1" : "0"}};
  rep.notes = {"top-color cones onto copy bases are certified; intra-copy "
               "nonedges are filled, so only all-top axioms survive"};
  return rep;
}

std::optional<VertexIdx> claim_witness(const ConstructionReport& report,
                                       const std::vector<VertexIdx>& F,
                                       const std::vector<VertexIdx>& S,
                                       const std::vector<ElemIdx>& pattern) {
  bool tagged = false;
  for (const auto& [k, v] : report.parameters)
    tagged |= (k == "generator" && v == "mainthm");
  if (!tagged) throw WrongGenerator("report is not a mainthm structure");

  const ColoredGraph& g = report.graph;
  const Poset& Q = g.edge_poset();
  const ElemIdx top = *Q.maximum();
  const std::vector<ElemIdx> tops = Q.strict_tops_below_top();
  const int n = static_cast<int>(tops.size());

  if (S.size() != pattern.size())
    throw BadParameter("pattern must assign one color per special vertex");
  std::vector<int> s_copy(S.size());
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (S[k] < 0 || S[k] >= g.vertex_count() || !g.labels(S[k]).special)
      throw BadParameter("S must consist of special vertices");
    s_copy[k] = *g.labels(S[k]).copy_index;
  }
  {
    auto sorted = s_copy;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw BadParameter("S contains a repeated special vertex");
  }
  for (VertexIdx v : F)
    if (v < 0 || v >= g.vertex_count() || g.labels(v).special)
      throw BadParameter("F must avoid the special vertices");

  std::vector<int> rank(pattern.size(), 0);  // 0 marks the top color
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    if (pattern[k] == top) continue;
    auto it = std::find(tops.begin(), tops.end(), pattern[k]);
    if (it == tops.end())
      throw BadParameter("pattern colors must be the top or maximal below it");
    rank[k] = static_cast<int>(it - tops.begin()) + 1;
  }
  {
    auto sorted = pattern;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw NonInjectivePattern("pattern must be injective");
  }

  std::vector<int> candidates;
  int forced = -1;
  for (std::size_t k = 0; k < pattern.size(); ++k)
    if (pattern[k] == top) forced = s_copy[k];
  if (forced > 0) {
    candidates.push_back(forced);
  } else {
    for (int i = 1; i <= n + 1; ++i)
      if (std::find(s_copy.begin(), s_copy.end(), i) == s_copy.end())
        candidates.push_back(i);
  }

  const auto perms = permutations_lex(n);
  const std::string top_name = Q.name(top);

  for (int i : candidates) {
    std::vector<int> sigma(n, 0);
    std::vector<char> used(n + 1, 0);
    bool ok = true;
    for (std::size_t k = 0; k < S.size() && ok; ++k) {
      int j = s_copy[k];
      if (j == i) continue;  // the top-valued special
      int pos = c_index(i, j, n);
      int val = rank[k];
      if (sigma[pos - 1] != 0 || used[val]) {
        ok = false;
        break;
      }
      sigma[pos - 1] = val;
      used[val] = 1;
    }
    if (!ok) continue;
    for (int pos = 0; pos < n; ++pos) {
      if (sigma[pos] != 0) continue;
      for (int val = 1; val <= n; ++val)
        if (!used[val]) {
          sigma[pos] = val;
          used[val] = 1;
          break;
        }
    }
    int cls = -1;
    for (std::size_t c = 0; c < perms.size(); ++c)
      if (perms[c] == sigma) {
        cls = static_cast<int>(c) + 1;
        break;
      }

    std::vector<VertexIdx> Y;
    for (VertexIdx v : F)
      if (*g.labels(v).copy_index == i) Y.push_back(v);
    std::sort(Y.begin(), Y.end());

    if (Y.empty()) {
      for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& l = g.labels(v);
        if (l.special || !l.copy_index || *l.copy_index != i) continue;
        if (!l.class_index || *l.class_index != cls) continue;
        if (std::find(F.begin(), F.end(), v) != F.end()) continue;
        return v;
      }
      continue;
    }

    std::vector<std::string> y_ids;
    for (VertexIdx v : Y) y_ids.push_back(g.id(v));
    for (const auto& ax : report.certificate.axioms) {
      if (!ax.copy || *ax.copy != i || !ax.cls || *ax.cls != cls) continue;
      if (ax.base != y_ids) continue;
      bool all_top = true;
      for (const auto& c : ax.colors) all_top &= (c == top_name);
      if (!all_top) continue;
      return g.index_of(ax.witness);
    }
  }
  return std::nullopt;
}

std::vector<CertificateIssue> verify_certificate(const ColoredGraph& g,
                                                 const LevelCertificate& cert) {
  std::vector<CertificateIssue> issues;
  const Poset& Q = g.edge_poset();
  const std::size_t kCertLevel = static_cast<std::size_t>(-1);

  for (std::size_t l = 0; l + 1 < cert.levels.size(); ++l) {
    std::set<std::string> next(cert.levels[l + 1].begin(),
                               cert.levels[l + 1].end());
    for (const auto& id : cert.levels[l])
      if (!next.count(id)) {
        issues.push_back({kCertLevel, "level " + std::to_string(l) +
                                          " is not contained in level " +
                                          std::to_string(l + 1)});
        break;
      }
  }
  for (const auto& level : cert.levels)
    for (const auto& id : level)
      if (!g.has_vertex(id)) {
        issues.push_back({kCertLevel, "level vertex missing: " + id});
        break;
      }

  std::map<std::string, std::set<std::string>> groups;
  for (std::size_t idx = 0; idx < cert.axioms.size(); ++idx) {
    const auto& ax = cert.axioms[idx];
    if (ax.base.size() != ax.colors.size()) {
      issues.push_back({idx, "base and colors differ in length"});
      continue;
    }
    if (!g.has_vertex(ax.witness)) {
      issues.push_back({idx, "witness missing: " + ax.witness});
      continue;
    }
    VertexIdx w = g.index_of(ax.witness);
    bool ok = true;
    for (std::size_t k = 0; k < ax.base.size() && ok; ++k) {
      if (!g.has_vertex(ax.base[k])) {
        issues.push_back({idx, "base vertex missing: " + ax.base[k]});
        ok = false;
        break;
      }
      if (!Q.has_element(ax.colors[k])) {
        issues.push_back({idx, "unknown color: " + ax.colors[k]});
        ok = false;
        break;
      }
      if (ax.base[k] == ax.witness) {
        issues.push_back({idx, "witness lies inside its base"});
        ok = false;
        break;
      }
      ElemIdx want = Q.index_of(ax.colors[k]);
      ElemIdx have = g.xi(w, g.index_of(ax.base[k]));
      if (want != have) {
        issues.push_back({idx, "diagram mismatch at " + ax.base[k] +
                                   ": recorded " + ax.colors[k] + ", graph has " +
                                   Q.name(have)});
        ok = false;
      }
    }
    if (!ok) continue;

    std::string key = (ax.copy ? std::to_string(*ax.copy) : "-") + "|" +
                      (ax.cls ? std::to_string(*ax.cls) : "-") + "|";
    for (const auto& b : ax.base) key += b + ",";
    key += "|";
    for (const auto& c : ax.colors) key += c + ",";
    if (!groups[key].insert(ax.witness).second)
      issues.push_back({idx, "repeated witness " + ax.witness +
                                 " for the same query"});
  }
  return issues;
}

}  // namespace homlab
