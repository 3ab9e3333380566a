// bfly: experiments on butterfly permutations.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fftw3.h>
#include <gmp.h>
#include <json.hpp>

#include "bfly/bounds.hpp"
#include "bfly/butterfly.hpp"
#include "bfly/cycles.hpp"
#include "bfly/experiments.hpp"
#include "bfly/fixed_points.hpp"
#include "bfly/lis_stats.hpp"
#include "bfly/moments.hpp"
#include "table.hpp"
#include "verify.hpp"

namespace {

using namespace bfly;
using namespace bfly::cli;
using nlohmann::json;

constexpr const char* kVersion = "1.0.0";
constexpr std::uint64_t kDefaultSeed = 20240601;

// "a..b", "a,b,c" or "a".
std::vector<unsigned> parse_range(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<unsigned>(std::stoul(part)));
      continue;
    }
    const unsigned a = static_cast<unsigned>(std::stoul(part.substr(0, dots)));
    const unsigned b = static_cast<unsigned>(std::stoul(part.substr(dots + 2)));
    if (b < a) throw std::invalid_argument("empty range: " + part);
    for (unsigned v = a; v <= b; ++v) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty range");
  return out;
}

struct Options {
  std::size_t trials = 0;  // 0: subcommand default
  std::string m = "2";
  std::string n = "";
  std::string mode = "exact";
  bool exact_flag = false;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;

  // subcommand specific
  std::string kind = "nonsimple";
  std::string models = "all";
  std::string from = "lis-table";
  std::string model = "nonsimple_scalar";
  std::string stat = "counts";
  unsigned k_max = 10;
  bool polys = false;
  double t_min = 0.1, t_max = 5.0, t_step = 0.01;
  bool quick = false;
};

struct Run {
  std::string subcommand;
  std::uint64_t seed = kDefaultSeed;
  std::string seed_source = "default";
  json parameters = json::object();
};

Mode parse_mode(const Options& o) {
  if (o.exact_flag || o.mode == "exact") return Mode::exact;
  if (o.mode == "float") return Mode::floating;
  throw std::invalid_argument("--mode must be exact or float");
}

std::vector<unsigned> n_values(const Options& o, const std::string& fallback) {
  return parse_range(o.n.empty() ? fallback : o.n);
}

std::size_t trials_or(const Options& o, std::size_t fallback) { return o.trials ? o.trials : fallback; }

// -- subcommands -------------------------------------------------------------

void cmd_sample(const Options& o, Run& run, std::ostream& os) {
  const bool simple = o.kind == "simple";
  if (!simple && o.kind != "nonsimple") throw std::invalid_argument("--kind must be simple or nonsimple");
  const unsigned m = parse_range(o.m).front();
  const unsigned n = n_values(o, "3").front();
  const std::size_t count = trials_or(o, 10);
  run.parameters.update({{"kind", o.kind}, {"m", m}, {"n", n}, {"trials", count}});
  json out = json::array();
  Table t{{"m", "n", "kind", "exponents", "permutation"}, {}};
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = Rng::substream(run.seed, i);
    std::vector<unsigned> exps;
    Permutation perm;
    if (simple) {
      const SimpleButterfly s = sample_simple(m, n, rng);
      exps = s.digits;
      perm = materialize(s);
    } else {
      const NonsimpleButterfly s = sample_nonsimple(m, n, rng);
      exps = s.exponents;
      perm = materialize(s);
    }
    std::string joined;
    for (std::size_t j = 0; j < exps.size(); ++j) joined += (j ? " " : "") + std::to_string(exps[j]);
    t.add(m, n, o.kind, joined, perm.to_string());
    std::vector<std::size_t> one_based;
    for (std::size_t k = 0; k < perm.size(); ++k) one_based.push_back(perm[k] + 1);
    out.push_back({{"m", m}, {"n", n}, {"kind", o.kind}, {"exponents", exps}, {"permutation", one_based}});
  }
  if (o.format == "json") {
    os << "[\n";
    for (std::size_t i = 0; i < out.size(); ++i) os << "  " << out[i].dump() << (i + 1 < out.size() ? "," : "") << '\n';
    os << "]\n";
  }
  else
    write_csv(os, t);
}

Table cmd_lis_table(const Options& o, Run& run) {
  const unsigned m = parse_range(o.m).front();
  const Mode mode = parse_mode(o);
  const std::vector<unsigned> ns = n_values(o, "1..4");
  run.parameters.update({{"m", m}, {"n", ns}, {"mode", mode == Mode::exact ? "exact" : "float"}, {"stat", o.stat}});
  Table t;
  if (o.stat == "moments") {
    t.columns = {"n", "mean", "second_moment", "ratio"};
    for (unsigned n : ns) {
      if (mode == Mode::exact) {
        const ExactLisMoments e = nonsimple_lis_moments_exact(n, m);
        const double mean = e.mean.get_d(), second = e.second.get_d();
        t.rows.push_back({cell(n), cell(e.mean), cell(e.second), cell(std::sqrt(second) / mean)});
      } else {
        const LisMoments f = nonsimple_lis_moments(n, m);
        t.add(n, f.mean, f.second, std::sqrt(f.second) / f.mean);
      }
    }
    return t;
  }
  if (o.stat != "counts") throw std::invalid_argument("--stat must be counts or moments");
  if (mode == Mode::exact) {
    t.columns = {"n", "k", "count", "cdf"};
    for (unsigned n : ns) {
      const CountPmf c = nonsimple_lis_counts(n, m);
      mpz_class acc = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        acc += c.mass[i];
        t.add(n, c.offset + static_cast<std::int64_t>(i), c.mass[i], make_q(acc, c.total));
      }
    }
  } else {
    t.columns = {"n", "k", "probability", "cdf"};
    for (unsigned n : ns) {
      const FloatPmf f = nonsimple_lis_probs(n, m);
      const std::vector<double> F = cumulative(f);
      for (std::size_t i = 0; i < f.size(); ++i) t.add(n, f.offset + static_cast<std::int64_t>(i), f.mass[i], F[i]);
    }
  }
  return t;
}

Table cmd_lis_mc(const Options& o, Run& run) {
  std::vector<LisModel> models;
  if (o.models == "all") {
    models.assign(all_lis_models.begin(), all_lis_models.end());
  } else {
    std::stringstream ss(o.models);
    std::string name;
    while (std::getline(ss, name, ',')) models.push_back(parse_lis_model(name));
  }
  const std::vector<unsigned> ns = n_values(o, "1..8");
  const std::size_t trials = trials_or(o, 100);
  std::vector<std::string> names;
  for (LisModel m : models) names.push_back(to_string(m));
  run.parameters.update({{"models", names}, {"n", ns}, {"trials", trials}, {"threads", o.threads}});
  Table t{{"ensemble", "N", "sample_mean", "sample_std", "trials"}, {}};
  std::uint64_t stream = 0;
  for (LisModel m : models)
    for (unsigned n : ns) {
      // Each (model, n) cell gets its own derived seed.
      const std::uint64_t cell_seed = Rng::substream(run.seed, stream++).next();
      const SampleSummary s = lis_monte_carlo(m, n, trials, cell_seed, o.threads);
      t.add(to_string(m), std::uint64_t{1} << n, s.mean, s.sd, s.trials);
    }
  return t;
}

Table cmd_fit(const Options& o, Run& run) {
  const std::vector<unsigned> ns = n_values(o, "3..15");
  std::vector<std::pair<double, double>> pts;
  if (o.from == "lis-table") {
    run.parameters.update({{"from", o.from}, {"n", ns}});
    for (unsigned n : ns) {
      const double mean = (std::size_t{1} << n) <= lis_exact_cap ? nonsimple_lis_moments_exact(n).mean.get_d()
                                                                  : nonsimple_lis_moments(n).mean;
      pts.emplace_back(std::ldexp(1.0, static_cast<int>(n)), mean);
    }
  } else if (o.from == "lis-mc") {
    const LisModel model = parse_lis_model(o.model);
    const std::size_t trials = trials_or(o, 100);
    run.parameters.update({{"from", o.from}, {"model", o.model}, {"n", ns}, {"trials", trials}});
    std::uint64_t stream = 0;
    for (unsigned n : ns) {
      const std::uint64_t cell_seed = Rng::substream(run.seed, stream++).next();
      pts.emplace_back(std::ldexp(1.0, static_cast<int>(n)), lis_monte_carlo(model, n, trials, cell_seed, o.threads).mean);
    }
  } else {
    throw std::invalid_argument("--from must be lis-table or lis-mc");
  }
  const FitResult f = fit_exponent(pts);
  Table t{{"source", "n_min", "n_max", "alpha_hat", "intercept", "r_squared"}, {}};
  t.add(o.from, ns.front(), ns.back(), f.alpha_hat, f.intercept, f.r_squared);
  return t;
}

Table cmd_bounds(const Options& o, Run& run) {
  const std::vector<unsigned> ms = parse_range(o.m);
  run.parameters.update({{"m", ms}});
  Table t{{"m", "alpha", "beta", "beta_star", "c_star", "mu", "nu", "n0"}, {}};
  for (unsigned m : ms) {
    const BoundsTable b = bounds(m);
    t.add(m, b.alpha, b.beta, b.beta_star, b.c_star, b.mu, b.nu, b.n0);
  }
  return t;
}

Table cmd_cycles_table(const Options& o, Run& run) {
  const unsigned p = parse_range(o.m).front();
  const Mode mode = parse_mode(o);
  const std::vector<unsigned> ns = n_values(o, "1..4");
  run.parameters.update({{"p", p}, {"n", ns}, {"mode", mode == Mode::exact ? "exact" : "float"}});
  Table t;
  t.columns = {"n", "k", mode == Mode::exact ? "count" : "probability"};
  for (unsigned n : ns) {
    const CyclePmf c = nonsimple_cycle_dist(p, n, mode);
    if (mode == Mode::exact) {
      for (std::size_t i = 0; i < c.counts.size(); ++i)
        if (c.counts.mass[i] != 0) t.add(n, c.counts.offset + static_cast<std::int64_t>(i), c.counts.mass[i]);
    } else {
      for (std::size_t i = 0; i < c.probs.size(); i += p - 1)
        t.add(n, c.probs.offset + static_cast<std::int64_t>(i), c.probs.mass[i]);
    }
  }
  return t;
}

Table cmd_moments(const Options& o, Run& run) {
  const unsigned p = parse_range(o.m).front();
  run.parameters.update({{"p", p}, {"k_max", o.k_max}, {"polys", o.polys}});
  Table t;
  if (o.polys) {
    const MomentTable m = moment_polynomials(p, o.k_max);
    t.columns = {"k", "j", "coefficient"};
    for (unsigned k = 0; k <= o.k_max; ++k)
      for (std::size_t j = 0; j < m.polys[k].size(); ++j) t.add(k, j, m.polys[k][j]);
    return t;
  }
  const std::vector<mpq_class> m = limit_moments(p, o.k_max);
  t.columns = {"k", "m_k", "m_k_float"};
  for (unsigned k = 0; k <= o.k_max; ++k) t.add(k, m[k], m[k].get_d());
  return t;
}

Table cmd_density(const Options& o, Run& run) {
  const unsigned p = parse_range(o.m).front();
  const unsigned n = n_values(o, p == 2 ? "20" : "9").front();
  if (!(o.t_step > 0) || o.t_max < o.t_min) throw std::invalid_argument("bad t grid");
  run.parameters.update({{"p", p}, {"n", n}, {"t_min", o.t_min}, {"t_max", o.t_max}, {"t_step", o.t_step}});
  std::vector<double> ts;
  const long steps = std::lround((o.t_max - o.t_min) / o.t_step);
  for (long i = 0; i <= steps; ++i) ts.push_back(o.t_min + static_cast<double>(i) * o.t_step);
  Table t{{"t", "density"}, {}};
  for (const auto& [x, f] : density_grid(p, n, ts)) t.add(x, f);
  return t;
}

Table cmd_fixed_points(const Options& o, Run& run) {
  const std::vector<unsigned> ms = parse_range(o.m);
  const std::vector<unsigned> ns = n_values(o, "0..10");
  run.parameters.update({{"m", ms}, {"n", ns}});
  Table t{{"m", "n", "p_no_fixed_point", "x_star"}, {}};
  for (unsigned m : ms)
    for (unsigned n : ns) t.add(m, n, no_fixed_point_prob(m, n), x_star(m));
  return t;
}

Table cmd_verify(const Options& o, Run& run, bool& all_passed) {
  run.parameters.update({{"quick", o.quick}});
  Table t{{"check", "passed", "detail"}, {}};
  all_passed = true;
  for (const CheckResult& r : run_verify(o.quick, run.seed)) {
    t.add(r.name, r.passed, r.detail);
    all_passed = all_passed && r.passed;
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
  }
  return t;
}

json manifest(const Run& run, const Options& o, const char* env_seed) {
  return {{"tool", "bfly"},
          {"version", kVersion},
          {"subcommand", run.subcommand},
          {"seed", run.seed},
          {"seed_source", run.seed_source},
          {"BFLY_SEED", env_seed ? json(env_seed) : json(nullptr)},
          {"format", o.format},
          {"output", o.out.empty() ? json(nullptr) : json(o.out)},
          {"parameters", run.parameters},
          {"libraries", {{"gmp", std::string(gmp_version)}, {"fftw", std::string(fftw_version)}, {"cli11", CLI11_VERSION}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Butterfly permutation experiments"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed_flag = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_flag, "RNG seed (default: $BFLY_SEED, else built-in)");
    sub->add_option("--out", o.out, "output file; manifest goes to <out>.manifest.json");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    return sub;
  };
  auto sized = [&](CLI::App* sub) {
    sub->add_option("--m,--p", o.m, "radix or prime (range a..b where accepted)");
    sub->add_option("--n,--n-range", o.n, "level n or range a..b");
    return sub;
  };

  auto* sample = sized(common(app.add_subcommand("sample", "emit uniform butterfly permutations")));
  sample->add_option("--kind", o.kind, "simple or nonsimple");
  sample->add_option("--trials", o.trials, "number of permutations");

  auto* lis_table = sized(common(app.add_subcommand("lis-table", "exact or float LIS law b(n,k)")));
  lis_table->add_option("--mode", o.mode, "exact or float");
  lis_table->add_flag("--exact", o.exact_flag, "same as --mode exact");
  lis_table->add_option("--stat", o.stat, "counts or moments");

  auto* lis_mc = sized(common(app.add_subcommand("lis-mc", "sample-mean LIS curves over ensembles")));
  lis_mc->add_option("--models", o.models, "comma list or all");
  lis_mc->add_option("--trials", o.trials, "samples per size (default 100)");
  lis_mc->add_option("--threads", o.threads, "worker threads (0: hardware)");

  auto* fit = sized(common(app.add_subcommand("fit", "log-log exponent regression of mean LIS")));
  fit->add_option("--from", o.from, "lis-table or lis-mc");
  fit->add_option("--model", o.model, "model for --from lis-mc");
  fit->add_option("--trials", o.trials, "samples per size for --from lis-mc");
  fit->add_option("--threads", o.threads, "worker threads (0: hardware)");

  auto* bnds = sized(common(app.add_subcommand("bounds", "alpha/beta/mu/nu/N0 table")));
  auto* cycles = sized(common(app.add_subcommand("cycles-table", "butterfly Stirling numbers")));
  cycles->add_option("--mode", o.mode, "exact or float");
  cycles->add_flag("--exact", o.exact_flag, "same as --mode exact");

  auto* moments = sized(common(app.add_subcommand("moments", "limit moments m_k or polynomials p_k")));
  moments->add_option("--k-max", o.k_max, "largest k");
  moments->add_flag("--polys", o.polys, "emit coefficients of p_k instead of m_k");

  auto* density = sized(common(app.add_subcommand("density", "density grid of the limit law")));
  density->add_option("--t-min", o.t_min);
  density->add_option("--t-max", o.t_max);
  density->add_option("--t-step", o.t_step);

  auto* fixed = sized(common(app.add_subcommand("fixed-points", "P(no fixed point) and x*_m")));
  auto* verify = common(app.add_subcommand("verify", "run the cross-module oracle suite"));
  verify->add_flag("--quick", o.quick, "smaller sizes");

  CLI11_PARSE(app, argc, argv);

  Run run;
  run.subcommand = app.get_subcommands().front()->get_name();
  const char* env_seed = std::getenv("BFLY_SEED");
  if (app.get_subcommands().front()->count("--seed")) {
    run.seed = seed_flag;
    run.seed_source = "flag";
  } else if (env_seed) {
    run.seed = std::stoull(env_seed);
    run.seed_source = "BFLY_SEED";
  }

  std::ostringstream body;
  int status = 0;
  try {
    std::optional<Table> table;
    auto* sub = app.get_subcommands().front();
    if (sub == sample) cmd_sample(o, run, body);
    else if (sub == lis_table) table = cmd_lis_table(o, run);
    else if (sub == lis_mc) table = cmd_lis_mc(o, run);
    else if (sub == fit) table = cmd_fit(o, run);
    else if (sub == bnds) table = cmd_bounds(o, run);
    else if (sub == cycles) table = cmd_cycles_table(o, run);
    else if (sub == moments) table = cmd_moments(o, run);
    else if (sub == density) table = cmd_density(o, run);
    else if (sub == fixed) table = cmd_fixed_points(o, run);
    else if (sub == verify) {
      bool ok = true;
      table = cmd_verify(o, run, ok);
      status = ok ? 0 : 1;
    }
    if (table) {
      if (o.format == "json") write_json(body, *table);
      else write_csv(body, *table);
    }
  } catch (const std::exception& e) {
    std::cerr << "bfly " << run.subcommand << ": " << e.what() << '\n';
    return 2;
  }

  const std::string man = manifest(run, o, env_seed).dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << body.str();
    std::cerr << man;
  } else {
    std::ofstream(o.out, std::ios::binary) << body.str();
    std::ofstream(o.out + ".manifest.json", std::ios::binary) << man;
  }
  return status;
}
