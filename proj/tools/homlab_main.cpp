// homlab: generators, classification, witness extraction and certificate
// verification for colored graphs over finite partial orders.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homlab/constructions.hpp"
#include "homlab/engine.hpp"
#include "homlab/errors.hpp"
#include "homlab/io.hpp"
#include "homlab/random_graph.hpp"

namespace {

using homlab::Json;

std::shared_ptr<const homlab::Poset> parse_poset_spec(const std::string& spec) {
  auto all_digits = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  };
  if (spec == "trivial")
    return std::make_shared<const homlab::Poset>(homlab::Poset::chain(1));
  if (spec.size() > 1 && spec[0] == 'F' && all_digits(spec.substr(1)))
    return std::make_shared<const homlab::Poset>(
        homlab::Poset::antichain_over_zero(std::stoi(spec.substr(1))));
  if (spec.size() > 1 && spec[0] == 'D' && all_digits(spec.substr(1)))
    return std::make_shared<const homlab::Poset>(
        homlab::Poset::diamond(std::stoi(spec.substr(1))));
  if (spec.rfind("chain", 0) == 0 && all_digits(spec.substr(5)))
    return std::make_shared<const homlab::Poset>(
        homlab::Poset::chain(std::stoi(spec.substr(5))));
  return std::make_shared<const homlab::Poset>(
      homlab::poset_from_json(homlab::parse_json_file(spec)));
}

homlab::ColoredGraph load_graph(const std::string& path) {
  auto g = homlab::graph_from_json(homlab::parse_json_file(path));
  std::string why;
  if (!homlab::validate(g, &why))
    throw homlab::ParseError("graph fails validation: " + why);
  return g;
}

homlab::PartialMap parse_map_arg(const homlab::ColoredGraph& g,
                                 const std::string& text) {
  if (!text.empty() && text.front() == '{')
    return homlab::map_from_json(g, Json::parse(text, nullptr, true));
  if (text.size() > 5 && text.substr(text.size() - 5) == ".json")
    return homlab::map_from_json(g, homlab::parse_json_file(text));
  return homlab::map_from_compact(g, text);
}

Json file_ref(const std::string& path) {
  Json j;
  j["path"] = path;
  j["digest"] = homlab::digest(homlab::read_file(path));
  return j;
}

Json witness_json(const homlab::ColoredGraph& g, const homlab::PartialMap& f,
                  homlab::VertexIdx blocked_at) {
  Json j;
  Json pairs = Json::array();
  for (const auto& [s, t] : f.pairs) pairs.push_back({g.id(s), g.id(t)});
  j["pairs"] = std::move(pairs);
  j["blocked_at"] = g.id(blocked_at);
  return j;
}

// Independent brute-force verdicts: every total map is enumerated and partial
// maps are checked against the definitions directly. Kept free of the
// engine's search paths on purpose.
struct NaiveVerdicts {
  bool mh = true, hh = true, mm = true;
};

NaiveVerdicts naive_classify(const homlab::ColoredGraph& g) {
  const int n = g.vertex_count();
  if (n > 6)
    throw homlab::BadParameter("naive classification supports at most 6 vertices");
  NaiveVerdicts out;
  if (n == 0) return out;
  const homlab::Poset& P = g.vertex_poset();
  const homlab::Poset& Q = g.edge_poset();

  auto total_is_hom = [&](const std::vector<int>& img) {
    for (int v = 0; v < n; ++v)
      if (!P.leq(g.chi(v), g.chi(img[v]))) return false;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!Q.leq(g.xi(u, v), g.xi(img[u], img[v]))) return false;
    return true;
  };

  std::vector<std::vector<int>> totals, injective_totals;
  std::vector<int> img(n, 0);
  while (true) {
    if (total_is_hom(img)) {
      totals.push_back(img);
      std::vector<int> sorted = img;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
        injective_totals.push_back(img);
    }
    int i = n - 1;
    while (i >= 0 && img[i] == n - 1) img[i--] = 0;
    if (i < 0) break;
    ++img[i];
  }

  homlab::for_each_subset(n, 1, n, [&](const std::vector<int>& dom) {
    const int k = static_cast<int>(dom.size());
    std::vector<int> a(k, 0);
    while (true) {
      bool hom = true;
      for (int i = 0; i < k && hom; ++i)
        hom = P.leq(g.chi(dom[i]), g.chi(a[i]));
      for (int i = 0; i < k && hom; ++i)
        for (int j = i + 1; j < k && hom; ++j)
          hom = Q.leq(g.xi(dom[i], dom[j]), g.xi(a[i], a[j]));
      if (hom) {
        bool inj;
        {
          std::vector<int> sorted = a;
          std::sort(sorted.begin(), sorted.end());
          inj = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        }
        auto extended_by = [&](const std::vector<std::vector<int>>& pool) {
          for (const auto& t : pool) {
            bool ext = true;
            for (int i = 0; i < k && ext; ++i) ext = t[dom[i]] == a[i];
            if (ext) return true;
          }
          return false;
        };
        if (out.hh && !extended_by(totals)) out.hh = false;
        if (inj && out.mh && !extended_by(totals)) out.mh = false;
        if (inj && out.mm && !extended_by(injective_totals)) out.mm = false;
      }
      int i = k - 1;
      while (i >= 0 && a[i] == n - 1) a[i--] = 0;
      if (i < 0) break;
      ++a[i];
    }
    return out.hh || out.mh || out.mm;
  });
  return out;
}

struct GenArgs {
  std::string kind;
  std::string out_prefix;
  int n = 2, m = 1, base = 2, rounds = 1, cap = 2, clique = 1, passes = 1,
      vertices = 5;
  std::uint64_t seed = 0;
  int zero_permille = 500;
  std::string p_spec, q_spec;
  bool vertex_colored = false;
};

int run_gen(const GenArgs& a, Json& report) {
  homlab::ConstructionReport rep = [&] {
    if (a.kind == "rado")
      return homlab::rado_approx(a.n, a.base, a.rounds, a.cap);
    if (a.kind == "partitioned")
      return homlab::partitioned_rado(a.n, a.m, a.base, a.cap, a.passes);
    if (a.kind == "diamond") return homlab::diamond_m(a.clique);
    if (a.kind == "mainthm") {
      homlab::MainthmOptions opts;
      opts.vertex_colored = a.vertex_colored;
      if (!a.p_spec.empty()) opts.P = parse_poset_spec(a.p_spec);
      return homlab::mainthm_structure(*parse_poset_spec(a.q_spec), a.base,
                                       a.cap, a.passes, a.seed, opts);
    }
    if (a.kind == "lattice")
      return homlab::lattice_counterexample(*parse_poset_spec(a.p_spec),
                                            *parse_poset_spec(a.q_spec), a.base,
                                            a.cap, a.passes);
    // random corpus instance: graph only, vacuous certificate
    homlab::ConstructionReport r{
        homlab::random_graph(parse_poset_spec(a.p_spec),
                             parse_poset_spec(a.q_spec), a.vertices, a.seed,
                             a.zero_permille),
        {}, {}, {}, std::nullopt};
    r.parameters = {{"generator", "random"},
                    {"vertices", std::to_string(a.vertices)},
                    {"seed", std::to_string(a.seed)},
                    {"zero_permille", std::to_string(a.zero_permille)}};
    r.certificate.levels.push_back(r.graph.vertex_ids());
    return r;
  }();

  std::string prefix = a.out_prefix.empty() ? a.kind : a.out_prefix;
  std::string graph_path = prefix + ".graph.json";
  std::string cert_path = prefix + ".cert.json";
  homlab::write_file(graph_path, homlab::dump_json(homlab::graph_to_json(rep.graph)));
  homlab::write_file(cert_path,
                     homlab::dump_json(homlab::certificate_to_json(rep.certificate)));

  std::cout << "graph: " << graph_path << " (" << rep.graph.vertex_count()
            << " vertices, " << rep.graph.edge_entry_count() << " stored pairs)\n";
  std::cout << "certificate: " << cert_path << " ("
            << rep.certificate.axioms.size() << " axioms)\n";
  if (rep.designated_triple) {
    const auto& t = *rep.designated_triple;
    std::cout << "designated: " << t[0] << " " << t[1] << " " << t[2] << "\n";
  }

  Json params = Json::object();
  for (const auto& [k, v] : rep.parameters) params[k] = v;
  Json result;
  result["parameters"] = std::move(params);
  result["vertices"] = rep.graph.vertex_count();
  result["stored_pairs"] = rep.graph.edge_entry_count();
  result["axioms"] = rep.certificate.axioms.size();
  if (rep.designated_triple) {
    const auto& t = *rep.designated_triple;
    result["designated_triple"] = {t[0], t[1], t[2]};
  }
  Json outputs;
  outputs["graph"] = file_ref(graph_path);
  outputs["certificate"] = file_ref(cert_path);
  result["outputs"] = std::move(outputs);
  report["result"] = std::move(result);
  return 0;
}

int run_classify(const std::string& graph_path, int max_domain, bool naive,
                 int threads, Json& report) {
  auto g = load_graph(graph_path);
  report["inputs"]["graph"] = file_ref(graph_path);
  Json result;
  if (naive) {
    NaiveVerdicts v = naive_classify(g);
    result["mode"] = "naive";
    result["mh"] = v.mh;
    result["hh"] = v.hh;
    result["mm"] = v.mm;
    std::cout << "MH=" << (v.mh ? "true" : "false") << "\n"
              << "HH=" << (v.hh ? "true" : "false") << "\n"
              << "MM=" << (v.mm ? "true" : "false") << "\n";
  } else {
    homlab::ClassifyOptions opts;
    opts.max_domain = max_domain;
    opts.threads = threads;
    homlab::Classification c = homlab::classify(g, opts);
    result["mode"] = "exact";
    result["mh"] = c.is_mh;
    result["hh"] = c.is_hh;
    result["mm"] = c.is_mm;
    result["search_bound"] = c.search_bound;
    std::cout << "MH=" << (c.is_mh ? "true" : "false") << "\n"
              << "HH=" << (c.is_hh ? "true" : "false") << "\n"
              << "MM=" << (c.is_mm ? "true" : "false") << "\n"
              << "search_bound=" << c.search_bound << "\n";
    auto emit = [&](const char* name,
                    const std::optional<homlab::ExtensionWitness>& w) {
      if (!w) return;
      result[name] = witness_json(g, w->map, w->blocked_at);
      std::cout << name << ": " << homlab::map_to_compact(g, w->map)
                << " blocked_at=" << g.id(w->blocked_at) << "\n";
    };
    emit("hh_witness", c.hh_witness);
    emit("mh_witness", c.mh_witness);
    emit("mm_witness", c.mm_witness);
  }
  report["result"] = std::move(result);
  return 0;
}

int run_witness(const std::string& graph_path, const std::string& mode,
                int max_domain, const std::string& expect, Json& report) {
  auto g = load_graph(graph_path);
  report["inputs"]["graph"] = file_ref(graph_path);
  auto w = homlab::hh_failure_witness(g, max_domain, mode == "mh");
  Json result;
  result["mode"] = mode;
  result["max_domain"] = max_domain;
  result["found"] = w.has_value();
  if (w) {
    result["witness"] = witness_json(g, w->first, w->second);
    std::cout << "witness: " << homlab::map_to_compact(g, w->first)
              << " blocked_at=" << g.id(w->second) << "\n";
  } else {
    std::cout << "none found <= " << max_domain << "\n";
  }
  int code = 0;
  if (!expect.empty()) {
    bool matched = (expect == "found") == w.has_value();
    result["expect"] = expect;
    result["expect_matched"] = matched;
    code = matched ? 0 : 1;
  }
  report["result"] = std::move(result);
  return code;
}

int run_verify_cert(const std::string& graph_path, const std::string& cert_path,
                    Json& report) {
  auto g = load_graph(graph_path);
  auto cert = homlab::certificate_from_json(homlab::parse_json_file(cert_path));
  report["inputs"]["graph"] = file_ref(graph_path);
  report["inputs"]["certificate"] = file_ref(cert_path);
  auto issues = homlab::verify_certificate(g, cert);
  Json result;
  result["axioms"] = cert.axioms.size();
  Json failures = Json::array();
  for (const auto& issue : issues) {
    Json f;
    if (issue.axiom_index != static_cast<std::size_t>(-1))
      f["axiom"] = issue.axiom_index;
    f["reason"] = issue.reason;
    failures.push_back(std::move(f));
  }
  result["failures"] = std::move(failures);
  report["result"] = std::move(result);
  std::cout << "axioms: " << cert.axioms.size() << "\n";
  if (issues.empty()) {
    std::cout << "certificate: ok\n";
    return 0;
  }
  for (const auto& issue : issues) {
    std::cout << "failed";
    if (issue.axiom_index != static_cast<std::size_t>(-1))
      std::cout << " axiom " << issue.axiom_index;
    std::cout << ": " << issue.reason << "\n";
  }
  return 1;
}

int run_check_extension(const std::string& graph_path, const std::string& map_text,
                        const std::string& vertex, bool naive, Json& report) {
  auto g = load_graph(graph_path);
  report["inputs"]["graph"] = file_ref(graph_path);
  auto f = parse_map_arg(g, map_text);
  homlab::VertexIdx c = g.index_of(vertex);
  std::vector<homlab::VertexIdx> targets;
  try {
    targets = naive ? homlab::naive_one_point_targets(f, c)
                    : homlab::one_point_targets(f, c);
  } catch (const homlab::NotHomomorphism& e) {
    throw homlab::ParseError(e.what());
  } catch (const homlab::VertexInDomain& e) {
    throw homlab::ParseError(e.what());
  }
  Json result;
  result["mode"] = naive ? "naive" : "requirement";
  result["map"] = homlab::map_to_compact(g, f);
  result["vertex"] = vertex;
  Json ids = Json::array();
  std::cout << "targets:";
  for (homlab::VertexIdx d : targets) {
    ids.push_back(g.id(d));
    std::cout << " " << g.id(d);
  }
  if (targets.empty()) std::cout << " (none)";
  std::cout << "\n";
  result["targets"] = std::move(ids);
  report["result"] = std::move(result);
  return targets.empty() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"morphism-extension classes of colored graphs over finite "
               "partial orders"};
  app.require_subcommand(1);
  std::string report_path;
  app.add_option("--report", report_path, "write a machine-readable run report");

  int default_threads = 1;
  if (const char* env = std::getenv("HOMLAB_THREADS")) {
    try {
      default_threads = std::max(1, std::stoi(env));
    } catch (...) {
      default_threads = 1;
    }
  }

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a structure");
  cmd_gen->require_subcommand(1);
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", gen.out_prefix, "output file prefix");
  };
  auto* gen_rado = cmd_gen->add_subcommand("rado", "leveled extension-axiom approximant");
  gen_rado->add_option("--n", gen.n, "antichain size")->required();
  gen_rado->add_option("--base", gen.base, "starting vertices");
  gen_rado->add_option("--rounds", gen.rounds, "growth rounds");
  gen_rado->add_option("--cap", gen.cap, "max certified subset size");
  add_out(gen_rado);
  auto* gen_part = cmd_gen->add_subcommand("partitioned", "class-partitioned approximant");
  gen_part->add_option("--n", gen.n, "antichain size")->required();
  gen_part->add_option("--m", gen.m, "number of classes")->required();
  gen_part->add_option("--base", gen.base, "starting vertices");
  gen_part->add_option("--cap", gen.cap, "max certified subset size");
  gen_part->add_option("--passes", gen.passes, "witnesses per query and class");
  add_out(gen_part);
  auto* gen_diamond = cmd_gen->add_subcommand("diamond", "six-clique diamond-order structure");
  gen_diamond->add_option("--clique", gen.clique, "vertices per clique");
  add_out(gen_diamond);
  auto* gen_main = cmd_gen->add_subcommand("mainthm", "copies-plus-specials counterexample");
  gen_main->add_option("--q", gen.q_spec, "edge poset (file or F2/D2/chain3)")->required();
  gen_main->add_option("--p", gen.p_spec, "vertex poset for the colored variant");
  gen_main->add_option("--base", gen.base, "base vertices per copy");
  gen_main->add_option("--cap", gen.cap, "max certified subset size");
  gen_main->add_option("--passes", gen.passes, "witnesses per query and class");
  gen_main->add_option("--seed", gen.seed, "fill seed");
  gen_main->add_flag("--vertex-colored", gen.vertex_colored,
                     "give special vertices a maximal vertex color");
  add_out(gen_main);
  auto* gen_lattice = cmd_gen->add_subcommand("lattice", "non-directed-Q counterexample");
  gen_lattice->add_option("--p", gen.p_spec, "vertex poset")->required();
  gen_lattice->add_option("--q", gen.q_spec, "edge poset (must not be directed)")->required();
  gen_lattice->add_option("--base", gen.base, "base vertices");
  gen_lattice->add_option("--cap", gen.cap, "max certified subset size");
  gen_lattice->add_option("--passes", gen.passes, "witnesses per query and class");
  add_out(gen_lattice);
  auto* gen_random = cmd_gen->add_subcommand("random", "seeded random instance");
  gen_random->add_option("--p", gen.p_spec, "vertex poset")->required();
  gen_random->add_option("--q", gen.q_spec, "edge poset")->required();
  gen_random->add_option("--vertices", gen.vertices, "vertex count")->required();
  gen_random->add_option("--seed", gen.seed, "rng seed")->required();
  gen_random->add_option("--zero-permille", gen.zero_permille,
                         "nonedge probability in permille");
  add_out(gen_random);

  std::string graph_path, cert_path, mode = "hh", expect, map_text, vertex;
  int max_domain = -1, witness_domain = 3;
  bool naive = false;
  int threads = default_threads;

  auto* cmd_classify = app.add_subcommand("classify", "decide MH/HH/MM for a finite graph");
  cmd_classify->add_option("graph", graph_path, "graph file")->required();
  cmd_classify->add_option("--max-domain", max_domain, "bound the examined domain size");
  cmd_classify->add_flag("--naive", naive, "independent brute-force verdicts");
  cmd_classify->add_option("--threads", threads, "worker threads");

  auto* cmd_witness = app.add_subcommand("witness", "first blocked one-point extension");
  cmd_witness->add_option("graph", graph_path, "graph file")->required();
  cmd_witness->add_option("--mode", mode, "hh or mh")
      ->check(CLI::IsMember({"hh", "mh"}));
  cmd_witness->add_option("--max-domain", witness_domain, "max domain size");
  cmd_witness->add_option("--expect", expect, "found or none")
      ->check(CLI::IsMember({"found", "none"}));

  auto* cmd_verify = app.add_subcommand("verify-cert", "recheck a certificate");
  cmd_verify->add_option("graph", graph_path, "graph file")->required();
  cmd_verify->add_option("certificate", cert_path, "certificate file")->required();

  auto* cmd_check = app.add_subcommand("check-extension", "one-point extension targets");
  cmd_check->add_option("graph", graph_path, "graph file")->required();
  cmd_check->add_option("--map", map_text, "partial map (a:b,c:d or file)")->required();
  cmd_check->add_option("--vertex", vertex, "vertex to extend to")->required();
  cmd_check->add_flag("--naive", naive, "definition-checking oracle");

  CLI11_PARSE(app, argc, argv);

  Json report;
  report["tool"] = "homlab";
  report["version"] = "0.1.0";
  Json args_echo = Json::object();
  report["inputs"] = Json::object();

  auto started = std::chrono::steady_clock::now();
  int code = 2;
  try {
    if (cmd_gen->parsed()) {
      for (auto* sub :
           {gen_rado, gen_part, gen_diamond, gen_main, gen_lattice, gen_random})
        if (sub->parsed()) gen.kind = sub->get_name();
      report["command"] = "gen " + gen.kind;
      code = run_gen(gen, report);
    } else if (cmd_classify->parsed()) {
      report["command"] = "classify";
      args_echo["max_domain"] = max_domain;
      args_echo["naive"] = naive;
      args_echo["threads"] = threads;
      code = run_classify(graph_path, max_domain, naive, threads, report);
    } else if (cmd_witness->parsed()) {
      report["command"] = "witness";
      args_echo["mode"] = mode;
      args_echo["max_domain"] = witness_domain;
      code = run_witness(graph_path, mode, witness_domain, expect, report);
    } else if (cmd_verify->parsed()) {
      report["command"] = "verify-cert";
      code = run_verify_cert(graph_path, cert_path, report);
    } else if (cmd_check->parsed()) {
      report["command"] = "check-extension";
      args_echo["naive"] = naive;
      code = run_check_extension(graph_path, map_text, vertex, naive, report);
    }
  } catch (const homlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = e.what();
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = e.what();
    code = 2;
  }
  report["args"] = std::move(args_echo);
  report["exit"] = code;
  if (!report_path.empty()) {
    try {
      homlab::write_file(report_path, homlab::dump_json(report));
    } catch (const std::exception& e) {
      std::cerr << "error: cannot write report: " << e.what() << "\n";
      code = 2;
    }
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "homlab: finished in " << elapsed << " ms\n";
  return code;
}
