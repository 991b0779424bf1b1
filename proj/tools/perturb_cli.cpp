#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "perturb/counting.hpp"
#include "perturb/harness.hpp"
#include "perturb/instance.hpp"
#include "perturb/oracle.hpp"
#include "perturb/pipeline.hpp"

using namespace perturb;

namespace {

// Host generation flags shared by gen, embed and oracle.
struct HostFlags {
  std::size_t n = 60;
  double alpha = 0.3;
  double p = 0.5;
  std::string host = "bipartite";
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("-n,--n", n, "vertex count");
    app->add_option("--alpha", alpha, "minimum-degree fraction of G_alpha");
    app->add_option("-p,--p", p, "edge probability of G(n,p)");
    app->add_option("--host", host, "bipartite | random-dense")
        ->check(CLI::IsMember({"bipartite", "random-dense"}));
    app->add_option("--seed", seed, "seed");
  }

  TrialConfig trial() const {
    TrialConfig c;
    c.n = n;
    c.alpha = alpha;
    c.p = p;
    c.host = parse_host_kind(host);
    c.seed = seed;
    return c;
  }
};

// Writes to `path`, or stdout for "-".
struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open " + path + " for writing");
      out = &file;
    }
  }
};

void save_graph(const std::string& path, const Graph& g) {
  Sink s(path);
  write_edge_list(*s.out, g);
}

Graph load_target(const std::string& file, const std::string& spec, std::size_t n,
                  std::size_t ell) {
  if (!file.empty()) return read_edge_list_file(file);
  return build_f_graph(resolve_spec(spec, n, ell));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanning embeddings of max-degree-2 graphs into randomly perturbed graphs"};
  // Verb options go in a section named after the verb, e.g. [sweep].
  app.set_config("--config", "", "read options from an INI/TOML file (before the verb)");
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate G_alpha, G(n,p) and a target");
  HostFlags gen_host;
  gen_host.add(gen);
  std::string gen_spec = "factor3", gen_dir = ".";
  std::size_t gen_ell = 3;
  gen->add_option("--spec", gen_spec, "target spec, e.g. C5,C4;P1 or factor3");
  gen->add_option("--ell", gen_ell, "girth bound");
  gen->add_option("--out-dir", gen_dir, "directory for galpha.txt, g.txt, target.txt");
  gen->callback([&] {
    TrialConfig c = gen_host.trial();
    Graph ga = build_host(c);
    Graph g = sample_gnp(c.n, c.p, derive_seed(c.seed, 1));
    Graph f = build_f_graph(resolve_spec(gen_spec, c.n, gen_ell));
    save_graph(gen_dir + "/galpha.txt", ga);
    save_graph(gen_dir + "/g.txt", g);
    save_graph(gen_dir + "/target.txt", f);
    std::cout << "galpha: " << ga.edge_count() << " edges, min degree " << ga.min_degree()
              << "\ng: " << g.edge_count() << " edges\ntarget: " << spec_of(f).to_string()
              << "\n";
  });

  // certify
  auto* cert = app.add_subcommand("certify", "sample the pseudorandomness conditions");
  std::string cert_graph, cert_out = "-";
  std::size_t cert_n = 2000, cert_ell = 3, cert_ell0 = 20, cert_samples = 100, cert_maxk = 0;
  double cert_p = 0.0, cert_punit_mult = 0.0;
  std::uint64_t cert_seed = 1;
  cert->add_option("--graph", cert_graph, "edge-list file (default: sample G(n,p))");
  cert->add_option("-n,--n", cert_n, "vertex count when sampling");
  cert->add_option("-p,--p", cert_p, "edge probability when sampling");
  cert->add_option("--p-mult", cert_punit_mult, "edge probability as a multiple of n^-2/3");
  cert->add_option("--ell", cert_ell, "girth bound");
  cert->add_option("--ell0", cert_ell0, "long-cycle bound");
  cert->add_option("--samples", cert_samples, "tuples per condition");
  cert->add_option("--max-k", cert_maxk, "largest A3 cycle length (0: all)");
  cert->add_option("--seed", cert_seed, "seed");
  cert->add_option("--out", cert_out, "report CSV ('-' for stdout)");
  cert->callback([&] {
    Graph g;
    ParamSet ps;
    if (!cert_graph.empty()) {
      g = read_edge_list_file(cert_graph);
      ps.n = g.vertex_count();
      double pairs = static_cast<double>(ps.n) * (ps.n - 1) / 2.0;
      ps.p = cert_p > 0 ? cert_p : static_cast<double>(g.edge_count()) / pairs;
    } else {
      ps.n = cert_n;
      ps.p = cert_punit_mult > 0 ? cert_punit_mult * std::pow(double(cert_n), -2.0 / 3.0) : cert_p;
      g = sample_gnp(cert_n, ps.p, derive_seed(cert_seed, 1));
    }
    ps.ell = cert_ell;
    ps.ell0 = cert_ell0;
    auto reports = certify_pseudorandom(g, ps, cert_samples, derive_seed(cert_seed, 2),
                                        {.max_cycle_length = cert_maxk});
    Sink s(cert_out);
    write_reports_csv(*s.out, reports);
    std::size_t passed = 0;
    for (const auto& r : reports) passed += r.pass;
    std::cerr << passed << "/" << reports.size() << " reports pass\n";
  });

  // embed
  auto* emb = app.add_subcommand("embed", "run the full embedding pipeline once");
  HostFlags emb_host;
  emb_host.add(emb);
  std::string emb_target, emb_spec = "factor3", emb_g, emb_ga, emb_out;
  std::size_t emb_ell = 3, emb_ell0 = 0, emb_retries = 20;
  emb->add_option("--target", emb_target, "target edge-list file");
  emb->add_option("--spec", emb_spec, "target spec when no file is given");
  emb->add_option("--g", emb_g, "G edge-list file (default: sample G(n,p))");
  emb->add_option("--galpha", emb_ga, "G_alpha edge-list file (default: generate)");
  emb->add_option("--ell", emb_ell, "girth bound");
  emb->add_option("--ell0", emb_ell0, "long-cycle bound (0: n+1)");
  emb->add_option("--retries", emb_retries, "retry budget");
  emb->add_option("--out", emb_out, "write the result as JSON");
  emb->callback([&] {
    TrialConfig c = emb_host.trial();
    Graph f;
    if (!emb_target.empty()) {
      f = read_edge_list_file(emb_target);
      c.n = f.vertex_count();
    } else {
      f = load_target("", emb_spec, c.n, emb_ell);
    }
    Graph ga = emb_ga.empty() ? build_host(c) : read_edge_list_file(emb_ga);
    Graph g = emb_g.empty() ? sample_gnp(c.n, c.p, derive_seed(c.seed, 1)) : read_edge_list_file(emb_g);
    ParamSet ps = ParamSet::practical(c.n, effective_alpha(ga, c.alpha), emb_ell, c.p);
    if (emb_ell0) ps.ell0 = emb_ell0;
    ps.retry_budget = emb_retries;
    EmbedResult r = embed_full(f, g, ga, ps, derive_seed(c.seed, 2));
    if (r.success) {
      std::cout << "success after " << r.attempts << " attempt(s), " << r.audits.size()
                << " switch steps\n";
    } else {
      std::cout << "failure: " << r.failure->to_text() << "\n";
    }
    if (!emb_out.empty()) {
      nlohmann::json j;
      j["success"] = r.success;
      j["attempts"] = r.attempts;
      j["embedding"] = r.embedding;
      if (r.failure) j["failure"] = r.failure->to_text();
      if (r.decomposition) j["decomposition"] = nlohmann::json::parse(r.decomposition->to_json());
      Sink s(emb_out);
      *s.out << j.dump(2) << "\n";
    }
  });

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact containment check by backtracking");
  HostFlags orc_host;
  orc_host.add(orc);
  std::string orc_target, orc_spec = "factor3", orc_h;
  std::size_t orc_ell = 3;
  std::uint64_t orc_budget = 50'000'000;
  bool orc_partial = false;
  orc->add_option("--target", orc_target, "target edge-list file");
  orc->add_option("--spec", orc_spec, "target spec when no file is given");
  orc->add_option("--host-graph", orc_h, "host edge-list file (default: G_alpha ∪ G(n,p))");
  orc->add_option("--ell", orc_ell, "girth bound for --spec");
  orc->add_option("--budget", orc_budget, "search node budget");
  orc->add_flag("--non-spanning", orc_partial, "allow targets smaller than the host");
  orc->callback([&] {
    TrialConfig c = orc_host.trial();
    Graph f;
    if (!orc_target.empty()) {
      f = read_edge_list_file(orc_target);
      c.n = f.vertex_count();
    } else {
      f = load_target("", orc_spec, c.n, orc_ell);
    }
    Graph h = orc_h.empty() ? graph_union(build_host(c), sample_gnp(c.n, c.p, derive_seed(c.seed, 1)))
                            : read_edge_list_file(orc_h);
    auto r = oracle_embed(f, h, !orc_partial, orc_budget);
    std::cout << to_string(r.verdict) << " (" << r.nodes << " nodes)\n";
    if (r.verdict == OracleVerdict::Found) {
      for (std::size_t i = 0; i < r.embedding.size(); ++i) {
        std::cout << (i ? " " : "") << r.embedding[i];
      }
      std::cout << "\n";
    }
  });

  // sweep
  auto* sw = app.add_subcommand("sweep", "Monte Carlo sweep over a parameter grid");
  SweepConfig scfg;
  std::string s_unit = "abs", s_host = "bipartite", s_target = "spec";
  std::string s_trials_out = "trials.csv", s_agg_out = "aggregates.csv";
  sw->add_option("-n,--n", scfg.n_grid, "n grid")->delimiter(',');
  sw->add_option("-p,--p", scfg.p_grid, "p grid, in units of --p-unit")->delimiter(',');
  sw->add_option("--p-unit", s_unit, "abs | 1/n | girth | n^-a/b");
  sw->add_option("--alpha", scfg.alpha_grid, "alpha grid")->delimiter(',');
  sw->add_option("--ell", scfg.ell_grid, "ell grid")->delimiter(',');
  sw->add_option("--ell0", scfg.ell0, "long-cycle bound (0: n+1)");
  sw->add_option("--trials", scfg.trials, "trials per cell");
  sw->add_option("--seed", scfg.base_seed, "base seed");
  sw->add_option("--host", s_host, "bipartite | random-dense | file");
  sw->add_option("--host-file", scfg.host_file, "G_alpha edge list for --host file");
  sw->add_option("--target", s_target, "spec | random-spec | all-specs");
  sw->add_option("--spec", scfg.spec, "target spec for --target spec");
  sw->add_option("--retries", scfg.retry_budget, "retry budget per trial");
  sw->add_option("--threads", scfg.threads, "worker threads (0: all cores)");
  sw->add_option("--trials-out", s_trials_out, "per-trial CSV ('-' for stdout)");
  sw->add_option("--agg-out", s_agg_out, "per-cell CSV ('-' for stdout)");
  sw->callback([&] {
    scfg.p_unit = PUnit::parse(s_unit);
    scfg.host = parse_host_kind(s_host);
    scfg.target = parse_target_kind(s_target);
    auto result = sweep(scfg);
    {
      Sink s(s_trials_out);
      write_trials_csv(*s.out, result.records);
    }
    Sink a(s_agg_out);
    write_aggregates_csv(*a.out, result.aggregates);
    if (s_agg_out != "-") {
      for (const auto& c : result.aggregates) {
        std::cerr << "n=" << c.n << " p=" << c.p << " alpha=" << c.alpha << " ell=" << c.ell
                  << " spec=" << c.spec << ": " << c.successes << "/" << c.trials << "\n";
      }
    }
  });

  // enumerate
  auto* en = app.add_subcommand("enumerate", "list the maximal target family up to isomorphism");
  std::size_t en_n = 9, en_ell = 3;
  bool en_count = false;
  en->add_option("-n,--n", en_n, "vertex count")->required();
  en->add_option("--ell", en_ell, "girth bound");
  en->add_flag("--count", en_count, "print only the number of specs");
  en->callback([&] {
    auto specs = enumerate_specs(en_n, en_ell);
    if (en_count) {
      std::cout << specs.size() << "\n";
      return;
    }
    for (const auto& s : specs) std::cout << s.to_string() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
