#include "perturb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "perturb/oracle.hpp"
#include "perturb/pipeline.hpp"

namespace perturb {

std::string to_string(HostKind kind) {
  switch (kind) {
    case HostKind::Bipartite: return "bipartite";
    case HostKind::RandomDense: return "random-dense";
    case HostKind::File: return "file";
  }
  return "?";
}

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::Spec: return "spec";
    case TargetKind::RandomSpec: return "random-spec";
    case TargetKind::AllSpecs: return "all-specs";
  }
  return "?";
}

HostKind parse_host_kind(const std::string& text) {
  if (text == "bipartite") return HostKind::Bipartite;
  if (text == "random-dense") return HostKind::RandomDense;
  if (text == "file") return HostKind::File;
  throw std::invalid_argument("unknown host kind '" + text + "'");
}

TargetKind parse_target_kind(const std::string& text) {
  if (text == "spec") return TargetKind::Spec;
  if (text == "random-spec") return TargetKind::RandomSpec;
  if (text == "all-specs") return TargetKind::AllSpecs;
  throw std::invalid_argument("unknown target kind '" + text + "'");
}

PUnit PUnit::parse(const std::string& text) {
  PUnit u;
  if (text == "abs" || text == "absolute") return u;
  if (text == "1/n") {
    u.kind = Kind::Linear;
    return u;
  }
  if (text == "girth" || text == "n^-(l-1)/l") {
    u.kind = Kind::Girth;
    return u;
  }
  if (text.rfind("n^-", 0) == 0) {
    std::string rest = text.substr(3);
    double value = 0.0;
    try {
      auto slash = rest.find('/');
      std::size_t used = 0;
      if (slash == std::string::npos) {
        value = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing");
      } else {
        double a = std::stod(rest.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("trailing");
        std::string den = rest.substr(slash + 1);
        double b = std::stod(den, &used);
        if (used != den.size() || b == 0.0) throw std::invalid_argument("denominator");
        value = a / b;
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad p unit '" + text + "'");
    }
    u.kind = Kind::Power;
    u.exponent = value;
    return u;
  }
  throw std::invalid_argument("bad p unit '" + text + "'");
}

double PUnit::scale(std::size_t n, std::size_t ell) const {
  const double nn = static_cast<double>(n);
  switch (kind) {
    case Kind::Absolute: return 1.0;
    case Kind::Linear: return 1.0 / nn;
    case Kind::Girth:
      return std::pow(nn, -static_cast<double>(ell - 1) / static_cast<double>(ell));
    case Kind::Power: return std::pow(nn, -exponent);
  }
  return 1.0;
}

std::string PUnit::to_string() const {
  switch (kind) {
    case Kind::Absolute: return "abs";
    case Kind::Linear: return "1/n";
    case Kind::Girth: return "girth";
    case Kind::Power: {
      std::ostringstream s;
      s << "n^-" << exponent;
      return s.str();
    }
  }
  return "?";
}

CycleTypeSpec resolve_spec(const std::string& text, std::size_t n, std::size_t ell) {
  if (text.rfind("factor", 0) != 0) {
    auto spec = CycleTypeSpec::parse(text);
    if (spec.vertex_count() != n) {
      throw std::invalid_argument("spec '" + text + "' has " +
                                  std::to_string(spec.vertex_count()) + " vertices, n = " +
                                  std::to_string(n));
    }
    return spec;
  }
  std::size_t k = 0;
  try {
    k = std::stoul(text.substr(6));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad factor spec '" + text + "'");
  }
  if (k < std::max<std::size_t>(3, ell) || k > n) {
    throw std::invalid_argument("factor length out of range: " + text);
  }
  CycleTypeSpec spec;
  spec.cycle_lengths.assign(n / k, k);
  const std::size_t r = n % k;
  if (r > 0) {
    if (r < ell) {
      spec.path_length = r - 1;
    } else {
      spec.cycle_lengths.back() += r;
    }
  }
  spec.normalize();
  return spec;
}

Graph build_host(const TrialConfig& cfg) {
  switch (cfg.host) {
    case HostKind::Bipartite: return make_bipartite_host(cfg.n, cfg.alpha);
    case HostKind::RandomDense:
      return make_random_dense_host(cfg.n, cfg.alpha, derive_seed(cfg.seed, 3));
    case HostKind::File: {
      Graph g = read_edge_list_file(cfg.host_file);
      if (g.vertex_count() != cfg.n) {
        throw std::invalid_argument("host file has " + std::to_string(g.vertex_count()) +
                                    " vertices, n = " + std::to_string(cfg.n));
      }
      return g;
    }
  }
  throw std::invalid_argument("unknown host kind");
}

double effective_alpha(const Graph& g_alpha, double requested) {
  if (g_alpha.vertex_count() == 0) return 0.0;
  double a = static_cast<double>(g_alpha.min_degree()) / static_cast<double>(g_alpha.vertex_count());
  return std::min(a, requested);
}

TrialRecord run_trial(const TrialConfig& cfg) {
  if (cfg.n == 0) throw std::invalid_argument("run_trial: n = 0");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw std::invalid_argument("run_trial: p outside [0,1]");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
    throw std::invalid_argument("run_trial: alpha outside (0,1]");
  }
  if (cfg.spec.vertex_count() != cfg.n) {
    throw std::invalid_argument("run_trial: spec size differs from n");
  }

  TrialRecord rec;
  rec.seed = cfg.seed;
  rec.n = cfg.n;
  rec.p = cfg.p;
  rec.alpha = cfg.alpha;
  rec.ell = cfg.ell;
  rec.host = to_string(cfg.host);
  rec.spec = cfg.spec.to_string();

  const auto t0 = std::chrono::steady_clock::now();
  Graph g_alpha = build_host(cfg);
  Graph g = sample_gnp(cfg.n, cfg.p, derive_seed(cfg.seed, 1));
  Graph f = build_f_graph(cfg.spec);
  ParamSet ps = ParamSet::practical(cfg.n, effective_alpha(g_alpha, cfg.alpha), cfg.ell, cfg.p);
  if (cfg.ell0 != 0) ps.ell0 = cfg.ell0;
  ps.retry_budget = cfg.retry_budget;

  EmbedResult r = embed_full(f, g, g_alpha, ps, derive_seed(cfg.seed, 2));
  if (r.success) {
    // Independent of the pipeline's own final check.
    bool ok = verify_embedding(f, graph_union(g, g_alpha), r.embedding, true).valid;
    rec.outcome = ok ? "success" : "unsound";
  } else {
    rec.outcome = std::string(to_string(r.failure->stage)) + ":" +
                  std::string(to_string(r.failure->kind));
  }
  rec.retries = r.retries();
  rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

void SweepConfig::validate() const {
  if (n_grid.empty() || p_grid.empty() || alpha_grid.empty() || ell_grid.empty()) {
    throw std::invalid_argument("sweep: every grid needs at least one value");
  }
  if (trials == 0) throw std::invalid_argument("sweep: trials must be >= 1");
  for (std::size_t n : n_grid)
    if (n < 3) throw std::invalid_argument("sweep: n must be >= 3");
  for (double a : alpha_grid)
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("sweep: alpha outside (0,1]");
  for (std::size_t l : ell_grid)
    if (l < 3) throw std::invalid_argument("sweep: ell must be >= 3");
  for (double p : p_grid)
    if (!(p >= 0.0)) throw std::invalid_argument("sweep: negative p");
  if (host == HostKind::File && host_file.empty()) {
    throw std::invalid_argument("sweep: file host needs a host file");
  }
  if (retry_budget == 0) throw std::invalid_argument("sweep: retry budget must be >= 1");
}

namespace {

struct Cell {
  TrialConfig base;
  std::string spec_label;
  std::optional<CycleTypeSpec> fixed_spec;  // unset: random per trial
};

std::vector<Cell> expand_cells(const SweepConfig& cfg) {
  std::vector<Cell> cells;
  for (std::size_t n : cfg.n_grid)
    for (double pm : cfg.p_grid)
      for (double a : cfg.alpha_grid)
        for (std::size_t ell : cfg.ell_grid) {
          Cell c;
          c.base.n = n;
          c.base.p = std::min(1.0, pm * cfg.p_unit.scale(n, ell));
          c.base.alpha = a;
          c.base.ell = ell;
          c.base.ell0 = cfg.ell0;
          c.base.host = cfg.host;
          c.base.host_file = cfg.host_file;
          c.base.retry_budget = cfg.retry_budget;
          switch (cfg.target) {
            case TargetKind::Spec:
              c.fixed_spec = resolve_spec(cfg.spec, n, ell);
              c.spec_label = c.fixed_spec->to_string();
              cells.push_back(c);
              break;
            case TargetKind::RandomSpec:
              c.spec_label = "random";
              cells.push_back(c);
              break;
            case TargetKind::AllSpecs:
              for (const auto& s : enumerate_specs(n, ell)) {
                c.fixed_spec = s;
                c.spec_label = s.to_string();
                cells.push_back(c);
              }
              break;
          }
        }
  return cells;
}

}  // namespace

SweepResult sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto cells = expand_cells(cfg);
  const std::size_t total = cells.size() * cfg.trials;
  std::vector<TrialConfig> jobs(total);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      TrialConfig job = cells[c].base;
      job.seed = derive_seed(cfg.base_seed, c, t);
      if (cells[c].fixed_spec) {
        job.spec = *cells[c].fixed_spec;
      } else {
        Rng rng(derive_seed(job.seed, 4));
        job.spec = random_spec(job.n, job.ell, rng);
      }
      jobs[c * cfg.trials + t] = std::move(job);
    }
  }

  SweepResult result;
  result.records.resize(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed) {
      std::size_t i = next++;
      if (i >= total) return;
      try {
        result.records[i] = run_trial(jobs[i]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellAggregate agg;
    agg.n = cells[c].base.n;
    agg.p = cells[c].base.p;
    agg.alpha = cells[c].base.alpha;
    agg.ell = cells[c].base.ell;
    agg.host = to_string(cells[c].base.host);
    agg.spec = cells[c].spec_label;
    agg.trials = cfg.trials;
    double retries = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto& r = result.records[c * cfg.trials + t];
      if (r.success()) {
        ++agg.successes;
        retries += static_cast<double>(r.retries);
      }
    }
    agg.mean_retries = agg.successes ? retries / static_cast<double>(agg.successes) : 0.0;
    result.aggregates.push_back(agg);
  }
  return result;
}

namespace {

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(8) << x;
  return s.str();
}

}  // namespace

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "seed,n,p,alpha,ell,host,spec,outcome,retries,ms\n";
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << num(r.p) << ',' << num(r.alpha) << ',' << r.ell << ','
        << r.host << ",\"" << r.spec << "\"," << r.outcome << ',' << r.retries << ','
        << std::fixed << std::setprecision(3) << r.ms << std::defaultfloat << '\n';
  }
}

void write_aggregates_csv(std::ostream& out, const std::vector<CellAggregate>& cells) {
  out << "n,p,alpha,ell,host,spec,trials,successes,rate,mean_retries\n";
  for (const auto& c : cells) {
    out << c.n << ',' << num(c.p) << ',' << num(c.alpha) << ',' << c.ell << ',' << c.host << ",\""
        << c.spec << "\"," << c.trials << ',' << c.successes << ',' << num(c.rate()) << ','
        << num(c.mean_retries) << '\n';
  }
}

bool monotone_within_band(const std::vector<CellAggregate>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const double ri = cells[i].rate(), rj = cells[j].rate();
      const double var = ri * (1 - ri) / static_cast<double>(cells[i].trials) +
                         rj * (1 - rj) / static_cast<double>(cells[j].trials);
      if (rj < ri - 2.0 * std::sqrt(var)) return false;
    }
  }
  return true;
}

}  // namespace perturb
