// Command-line front end for the NURS sampler and its verification tools.
//
// Subcommands: sample | verify | mix | couple | stats. All outputs are
// deterministic for a fixed config and seed. NURS_LOG={error,info,debug}
// controls stderr chatter.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nurs/couple.hpp"
#include "nurs/diag.hpp"
#include "nurs/exact.hpp"
#include "nurs/kernel.hpp"

using json = nlohmann::json;
using namespace nurs;

namespace {

constexpr const char* kVersion = "nurs 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitResidual = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int log_level() {
  const char* v = std::getenv("NURS_LOG");
  if (v == nullptr) return 0;
  const std::string s = v;
  if (s == "debug") return 2;
  if (s == "info") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[debug] " << msg << "\n";
}

struct RunConfig {
  std::uint32_t n = 50;
  std::string distance = "cayley";
  double beta = 0.0;
  std::string direction = "uniform";
  double eps = 0.01;          // section-5 default
  std::uint32_t max_doublings = 7;
  std::uint64_t iters = 10000;
  std::uint64_t burnin = 0;
  std::uint64_t seed = 1;
  std::uint32_t chains = 1;
  std::string start = "reference";  // reference (= sigma0) or uniform
  std::string out;

  std::string describe(const std::string& command) const {
    std::ostringstream s;
    s << kVersion << " " << command << " n=" << n << " distance=" << distance
      << " beta=" << beta << " direction=" << direction << " eps=" << eps
      << " max_doublings=" << max_doublings << " iters=" << iters << " burnin=" << burnin
      << " seed=" << seed << " chains=" << chains << " start=" << start;
    return s.str();
  }
};

MallowsModel model_from(const RunConfig& cfg) {
  return MallowsModel::make(cfg.n, cfg.beta, parse_distance(cfg.distance));
}

void run_one_chain(const RunConfig& cfg, std::uint32_t chain, const std::string& path) {
  const MallowsModel model = model_from(cfg);
  const DirectionLaw law = DirectionLaw::parse(cfg.direction);
  const NursParams params{cfg.eps, cfg.max_doublings};
  params.validate();
  if (cfg.iters <= cfg.burnin) throw CLI::ValidationError("--iters must exceed --burnin");
  if (cfg.start != "reference" && cfg.start != "uniform")
    throw CLI::ValidationError("--start must be reference or uniform");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  out << "# " << cfg.describe("sample") << " chain=" << chain << "\n";
  out << "iter,signed_index,orbit_len,stop_reason,energy,fixed_points,cycle_len_1,lis\n";

  Rng rng(cfg.seed, chain);
  Permutation state =
      cfg.start == "uniform" ? fisher_yates(rng, cfg.n) : model.sigma0;
  for (std::uint64_t it = 0; it < cfg.iters; ++it) {
    auto [next, rec] = nurs_step(state, model, law, params, rng);
    state = std::move(next);
    if (it < cfg.burnin) continue;
    const TraceRow row = trace_row(it, state, model, rec);
    out << row.iter << ',' << row.signed_index << ',' << row.orbit_len << ','
        << stop_reason_name(row.reason) << ',' << row.energy << ',' << row.fixed_points << ','
        << row.cycle_len_1 << ',' << row.lis << '\n';
  }
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

int cmd_sample(const RunConfig& cfg) {
  if (cfg.chains < 1) throw CLI::ValidationError("--chains must be >= 1");
  std::vector<std::string> paths;
  for (std::uint32_t c = 0; c < cfg.chains; ++c)
    paths.push_back(cfg.chains == 1 ? cfg.out : cfg.out + "." + std::to_string(c));
  std::exception_ptr failure;
#pragma omp parallel for schedule(static, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(cfg.chains); ++c) {
    try {
      run_one_chain(cfg, static_cast<std::uint32_t>(c), paths[static_cast<std::size_t>(c)]);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  log_info("sample: wrote " + std::to_string(cfg.chains) + " chain file(s)");
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, double tolerance, bool perturb) {
  const MallowsModel model = model_from(cfg);
  const DirectionLaw law = DirectionLaw::parse(cfg.direction);
  const NursParams params{cfg.eps, cfg.max_doublings};
  TransitionMatrix k = nurs_matrix(model, law, params);
  if (perturb) k.entries[1] += 1e-3;  // negative-control hook
  const ExactPmf pmf = exact_pmf(model);
  const double db = detailed_balance_residual(k, pmf);
  const double st = stationarity_residual(k, pmf);
  const bool pass = db <= tolerance && st <= tolerance;

  json report;
  report["command"] = "verify";
  report["version"] = kVersion;
  report["n"] = cfg.n;
  report["distance"] = cfg.distance;
  report["beta"] = cfg.beta;
  report["direction"] = cfg.direction;
  report["eps"] = cfg.eps;
  report["max_doublings"] = cfg.max_doublings;
  report["detailed_balance_residual"] = db;
  report["stationarity_residual"] = st;
  report["tolerance"] = tolerance;
  report["perturbed"] = perturb;
  report["pass"] = pass;
  std::cout << report.dump() << "\n";
  return pass ? kExitOk : kExitResidual;
}

int cmd_mix(const RunConfig& cfg, std::uint32_t t_max) {
  const MallowsModel model = model_from(cfg);
  const TransitionMatrix k = shiftable_matrix(model);
  const ExactPmf pmf = exact_pmf(model);
  const std::vector<double> curve = tv_mixing_curve(k, pmf, t_max);

  const double l_e = table_local_jump(model.kind, model.n);
  const std::uint32_t d_cross = cross_orbit_diameter(model.n);
  const double delta = delta_beta(model.n, model.beta, l_e, d_cross);

  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file: " + cfg.out);
  out << "# " << cfg.describe("mix") << " t_max=" << t_max << " l_e=" << l_e
      << " d_cross=" << d_cross << " delta=" << delta << "\n";
  out << "t,tv,envelope\n";
  out.precision(17);
  for (std::uint32_t t = 1; t <= t_max; ++t)
    out << t << ',' << curve[t - 1] << ','
        << static_cast<double>(model.n - 1) * std::pow(delta, t) << '\n';
  if (!out) throw std::ios_base::failure("write failed: " + cfg.out);
  log_info("mix: wrote " + cfg.out);
  return kExitOk;
}

int cmd_couple(const RunConfig& cfg, std::uint64_t samples, const std::string& sigma_mode) {
  const MallowsModel model = model_from(cfg);
  if (sigma_mode != "id" && sigma_mode != "random")
    throw CLI::ValidationError("--sigma must be id or random");
  Rng seeder(cfg.seed);
  const Permutation sigma =
      sigma_mode == "random" ? fisher_yates(seeder, cfg.n) : Permutation::identity(cfg.n);

  std::ostream* sink = &std::cout;
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open output file: " + cfg.out);
    sink = &file;
  }
  std::uint64_t edge_idx = 0;
  for (std::uint32_t i = 1; i <= cfg.n; ++i) {
    for (std::uint32_t j = i + 1; j <= cfg.n; ++j, ++edge_idx) {
      Rng rng(cfg.seed, edge_idx + 1);
      const ContractionReport rep =
          edge_contraction_experiment(EdgePair{sigma, i, j}, model, samples, rng);
      json line;
      line["version"] = kVersion;
      line["n"] = rep.n;
      line["beta"] = rep.beta;
      line["distance"] = cfg.distance;
      line["i"] = i;
      line["j"] = j;
      line["samples"] = rep.samples;
      line["empirical_mean_dist"] = rep.empirical_mean_dist;
      line["std_error"] = rep.std_error;
      line["delta_bound"] = rep.delta_bound;
      line["delta_bound_brute"] = rep.delta_bound_brute;
      line["l_e_table"] = rep.l_e_table;
      line["l_e_brute"] = rep.l_e_brute;
      line["d_cross"] = rep.d_cross;
      line["aligned_fraction"] = rep.aligned_fraction;
      (*sink) << line.dump() << "\n";
      log_debug("couple: edge (" + std::to_string(i) + "," + std::to_string(j) + ") done");
    }
  }
  if (!*sink) throw std::ios_base::failure("write failed");
  return kExitOk;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) return columns[c];
    throw CLI::ValidationError("no such column: " + name);
  }
};

CsvTable read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open input file: " + path);
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      cells.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
      if (comma == line.size()) break;
    }
    if (table.header.empty()) {
      table.header = cells;
      table.columns.resize(cells.size());
      continue;
    }
    if (cells.size() != table.header.size())
      throw std::ios_base::failure("ragged csv row in " + path);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      try {
        table.columns[c].push_back(std::stod(cells[c]));
      } catch (const std::exception&) {
        table.columns[c].push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
  }
  if (table.header.empty() || table.columns[0].empty())
    throw std::ios_base::failure("empty input: " + path);
  return table;
}

std::map<std::int64_t, double> reference_pmf(const std::string& spec, const Histogram& hist) {
  std::map<std::int64_t, double> pmf;
  if (spec.rfind("poisson:", 0) == 0) {
    const double lambda = std::stod(spec.substr(8));
    if (!(lambda > 0)) throw CLI::ValidationError("poisson reference needs lambda > 0");
    std::int64_t hi = hist.bins.empty() ? 0 : hist.bins.rbegin()->first;
    hi = std::max<std::int64_t>(hi, static_cast<std::int64_t>(lambda + 12 * std::sqrt(lambda) + 30));
    for (std::int64_t k = 0; k <= hi; ++k)
      pmf[k] = poisson_pmf(lambda, static_cast<std::uint64_t>(k));
    return pmf;
  }
  if (spec.rfind("triangular:", 0) == 0) {
    const std::string rest = spec.substr(11);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("triangular reference needs M:variant");
    const int m = std::stoi(rest.substr(0, colon));
    const std::string variant = rest.substr(colon + 1);
    if (m < 1 || m > 20) throw CLI::ValidationError("triangular reference needs 1 <= M <= 20");
    TriangularVariant v;
    if (variant == "paper")
      v = TriangularVariant::Paper;
    else if (variant == "derived")
      v = TriangularVariant::Derived;
    else
      throw CLI::ValidationError("triangular variant must be paper or derived");
    const std::int64_t span = std::int64_t{1} << m;
    for (std::int64_t k = -span; k <= span; ++k)
      pmf[k] = triangular_pmf(static_cast<std::uint32_t>(m), k, v);
    return pmf;
  }
  throw CLI::ValidationError("unknown reference spec: " + spec);
}

int cmd_stats(const std::string& in_path, const std::string& report, const std::string& ref,
              const std::string& column, std::size_t max_lag, const std::string& out_path) {
  const CsvTable table = read_sample_csv(in_path);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file: " + out_path);
  out.precision(17);

  if (report == "fixed_points" || report == "index") {
    const std::string col = report == "index" ? "signed_index" : "fixed_points";
    Histogram hist;
    for (double v : table.column(col)) hist.add(static_cast<std::int64_t>(v));
    std::map<std::int64_t, double> pmf;
    if (!ref.empty()) pmf = reference_pmf(ref, hist);
    out << "# " << kVersion << " stats report=" << report << " ref=" << (ref.empty() ? "none" : ref)
        << " in=" << in_path << " total=" << hist.total;
    if (!ref.empty()) out << " empirical_tv=" << empirical_tv(hist, pmf);
    out << "\n";
    out << "k,count,empirical_p,reference_p\n";
    std::map<std::int64_t, std::uint64_t> merged = hist.bins;
    for (const auto& [k, p] : pmf) merged.emplace(k, 0);
    for (const auto& [k, c] : merged) {
      const double emp = static_cast<double>(c) / static_cast<double>(hist.total);
      const double refp = pmf.count(k) ? pmf.at(k) : 0.0;
      out << k << ',' << c << ',' << emp << ',' << refp << '\n';
    }
  } else if (report == "acf") {
    const std::vector<double>& series = table.column(column);
    const AcfResult res = autocorr_ess(series, max_lag);
    out << "# " << kVersion << " stats report=acf column=" << column << " in=" << in_path
        << " n=" << series.size() << " ess=" << res.ess << "\n";
    out << "lag,acf\n";
    for (std::size_t lag = 0; lag < res.acf.size(); ++lag)
      out << lag << ',' << res.acf[lag] << '\n';
  } else {
    throw CLI::ValidationError("--report must be fixed_points, index, or acf");
  }
  if (!out) throw std::ios_base::failure("write failed: " + out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete no-underrun sampler for Mallows permutation models"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_model_flags = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "permutation size")->required();
    sub->add_option("--distance", cfg.distance,
                    "kendall|l1|l2|hamming|cayley|ulam");
    sub->add_option("--beta", cfg.beta, "inverse temperature (>= 0)");
  };

  CLI::App* sample = app.add_subcommand("sample", "run a NURS chain, write the trace CSV");
  add_model_flags(sample);
  sample->add_option("--direction", cfg.direction, "uniform|block:B|local:L|shiftable|transposition");
  sample->add_option("--eps", cfg.eps, "no-underrun threshold in (0,1)");
  sample->add_option("--max-doublings", cfg.max_doublings, "maximum doublings M");
  sample->add_option("--iters", cfg.iters, "total iterations including burn-in")->required();
  sample->add_option("--burnin", cfg.burnin, "discarded leading iterations");
  sample->add_option("--seed", cfg.seed, "64-bit seed");
  sample->add_option("--chains", cfg.chains, "independent chains (files suffixed .<k>)");
  sample->add_option("--start", cfg.start, "reference|uniform start state");
  sample->add_option("--out", cfg.out, "output CSV path")->required();

  double tolerance = 1e-12;
  bool perturb = false;
  CLI::App* verify = app.add_subcommand("verify", "exact detailed-balance check (small n)");
  add_model_flags(verify);
  verify->add_option("--direction", cfg.direction, "enumerable direction law");
  verify->add_option("--eps", cfg.eps, "no-underrun threshold in (0,1)");
  verify->add_option("--max-doublings", cfg.max_doublings, "maximum doublings M (<= 4)");
  verify->add_option("--tolerance", tolerance, "residual tolerance");
  verify->add_flag("--perturb", perturb, "negative-control hook: damage one entry");

  std::uint32_t t_max = 200;
  CLI::App* mix = app.add_subcommand("mix", "shiftable-kernel TV mixing curve vs envelope");
  add_model_flags(mix);
  mix->add_option("--t-max", t_max, "curve length (<= 500)");
  mix->add_option("--out", cfg.out, "output CSV path")->required();

  std::uint64_t samples = 100000;
  std::string sigma_mode = "id";
  CLI::App* couple = app.add_subcommand("couple", "edge contraction experiments, JSON lines");
  add_model_flags(couple);
  couple->add_option("--samples", samples, "coupled draws per edge");
  couple->add_option("--seed", cfg.seed, "64-bit seed");
  couple->add_option("--sigma", sigma_mode, "id|random edge base state");
  couple->add_option("--out", cfg.out, "output path (default stdout)");

  std::string in_path, report, ref, column = "energy";
  std::size_t max_lag = 100;
  CLI::App* stats = app.add_subcommand("stats", "histograms / ACF / ESS over a trace CSV");
  stats->add_option("--in", in_path, "input trace CSV")->required();
  stats->add_option("--report", report, "fixed_points|index|acf")->required();
  stats->add_option("--ref", ref, "poisson:LAMBDA or triangular:M:paper|derived");
  stats->add_option("--column", column, "acf column name");
  stats->add_option("--max-lag", max_lag, "acf maximum lag");
  stats->add_option("--out", cfg.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sample->parsed()) return cmd_sample(cfg);
    if (verify->parsed()) return cmd_verify(cfg, tolerance, perturb);
    if (mix->parsed()) return cmd_mix(cfg, t_max);
    if (couple->parsed()) return cmd_couple(cfg, samples, sigma_mode);
    if (stats->parsed()) return cmd_stats(in_path, report, ref, column, max_lag, cfg.out);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
