#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>

#include "experiment.hpp"
#include "permsim/geometry.hpp"
#include "permsim/oracle.hpp"
#include "permsim/pipeline.hpp"
#include "permsim/serialize.hpp"

namespace permsim::cli {

namespace {

/// Input problem (unreadable file, malformed text); maps to kUsage.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw InputError(std::string(kSeedEnv) + " is not an unsigned integer");
    }
  }
  return 0;
}

std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream file(path);
  if (!file) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(file), {}};
}

std::vector<Permutation> load_perms(const std::string& path, const std::string& format,
                                    std::istream& in) {
  const std::string text = slurp(path, in);
  try {
    if (format == "json") return permutations_from_json(text);
    std::istringstream is(text);
    return permutations_from_text(is);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
}

PointCloud load_cloud(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InputError("cannot open " + path);
  try {
    return read_cloud_csv(file);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit_perms(std::ostream& out, const std::vector<Permutation>& perms, const std::string& format) {
  out << (format == "json" ? permutations_to_json(perms) + "\n" : permutations_to_text(perms));
}

const std::map<std::string, Metric> kMetrics{{"euclidean", Metric::euclidean},
                                             {"chebyshev", Metric::chebyshev}};
const std::map<std::string, MatchingMode> kMatchingModes{
    {"exact", MatchingMode::exact},
    {"doubling", MatchingMode::threshold_doubling},
    {"auto", MatchingMode::automatic}};
const std::map<std::string, SamplerMode> kSamplers{{"uniform", SamplerMode::uniform},
                                                   {"poisson", SamplerMode::poisson}};
const std::vector<std::string> kFormats{"text", "json"};

struct PipelineFlags {
  std::size_t k = 2;
  std::string metric = "euclidean";
  std::string matching = "auto";
  std::string sampler = "uniform";
  double rate = 2.0;
  std::size_t grid = 0;

  void add_to(CLI::App& cmd) {
    cmd.add_option("-k,--k", k, "Number of permutations")->check(CLI::Range(2, 64));
    cmd.add_option("--metric", metric, "Matching distance")->check(CLI::IsMember({"euclidean", "chebyshev"}));
    cmd.add_option("--matching", matching, "Bottleneck matching mode")
        ->check(CLI::IsMember({"exact", "doubling", "auto"}));
    cmd.add_option("--sampler", sampler, "Cloud sampler for --fresh")->check(CLI::IsMember({"uniform", "poisson"}));
    cmd.add_option("--rate", rate, "Poisson rate multiplier")->check(CLI::PositiveNumber);
    cmd.add_option("--grid", grid, "Override the grid side M")->check(CLI::PositiveNumber);
  }

  PipelineConfig config(std::uint64_t seed) const {
    PipelineConfig cfg;
    cfg.k = k;
    cfg.metric = kMetrics.at(metric);
    cfg.matching_mode = kMatchingModes.at(matching);
    cfg.sampler.mode = kSamplers.at(sampler);
    cfg.sampler.rate_multiplier = rate;
    if (grid > 0) cfg.M_override = grid;
    cfg.seed = seed;
    return cfg;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Decompose random permutations into order-isomorphic parts"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t seed = 0;
  bool seed_given = false;
  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { seed = s, seed_given = true; },
        std::string("RNG seed (default: $") + kSeedEnv + " or 0)");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Emit k independent uniform random permutations");
  std::size_t gen_n = 0, gen_k = 2;
  std::string gen_format = "text", gen_clouds;
  gen->add_option("-n,--n", gen_n, "Permutation length")->required()->check(CLI::PositiveNumber);
  gen->add_option("-k,--k", gen_k, "Number of permutations")->check(CLI::PositiveNumber);
  gen->add_option("--format", gen_format)->check(CLI::IsMember(kFormats));
  gen->add_option("--clouds", gen_clouds,
                  "Sample point clouds instead and write DIR/cloud_<j>.csv; the permutations are read off the clouds");
  add_seed(gen);

  // decompose / baseline share input handling
  auto* dec = app.add_subcommand("decompose", "Run the grid/matching/colouring decomposition");
  std::string dec_input = "-", dec_format = "text", dec_perms_out;
  std::size_t dec_fresh = 0;
  std::vector<std::string> dec_clouds;
  bool dec_baseline = false, dec_pretty = false;
  PipelineFlags flags;
  dec->add_option("input", dec_input, "Permutation file, '-' for stdin");
  dec->add_option("--format", dec_format)->check(CLI::IsMember(kFormats));
  dec->add_option("--fresh", dec_fresh, "Decompose k fresh random permutations of this length")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  dec->add_option("--clouds", dec_clouds, "Replay point-cloud CSV files (one per permutation)");
  dec->add_flag("--baseline", dec_baseline, "Use the decreasing-pile baseline instead");
  dec->add_option("--perms-out", dec_perms_out, "Also write the permutations to this file");
  dec->add_flag("--pretty", dec_pretty, "Indent the JSON output");
  flags.add_to(*dec);
  add_seed(dec);

  auto* base = app.add_subcommand("baseline", "Decreasing-pile (Dilworth) baseline decomposition");
  std::string base_input = "-", base_format = "text";
  bool base_increasing = false, base_pretty = false;
  base->add_option("input", base_input, "Permutation file, '-' for stdin");
  base->add_option("--format", base_format)->check(CLI::IsMember(kFormats));
  base->add_flag("--increasing", base_increasing, "Use increasing piles");
  base->add_flag("--pretty", base_pretty, "Indent the JSON output");

  auto* ver = app.add_subcommand("verify", "Check a decomposition against its permutations");
  std::string ver_perms, ver_dec = "-", ver_format = "text";
  ver->add_option("--perms", ver_perms, "Permutation file")->required();
  ver->add_option("--format", ver_format)->check(CLI::IsMember(kFormats));
  ver->add_option("decomposition", ver_dec, "Decomposition JSON, '-' for stdin");

  auto* orc = app.add_subcommand("oracle", "Brute-force oracles for small instances");
  orc->require_subcommand(1);
  std::string orc_perms = "-", orc_format = "text", orc_red, orc_blue, orc_metric = "euclidean";
  double tail_lambda = 0.0, tail_x = 0.0;
  std::size_t orc_cap = 0;
  auto* orc_u = orc->add_subcommand("u", "Minimum number of order-isomorphic parts");
  auto* orc_lcp = orc->add_subcommand("lcp", "Longest common pattern of two permutations");
  auto* orc_lis = orc->add_subcommand("lis", "Longest increasing subsequence by enumeration");
  for (auto* c : {orc_u, orc_lcp, orc_lis}) {
    c->add_option("input", orc_perms, "Permutation file, '-' for stdin");
    c->add_option("--format", orc_format)->check(CLI::IsMember(kFormats));
    c->add_option("--cap", orc_cap, "Override the size cap")->check(CLI::PositiveNumber);
  }
  auto* orc_bn = orc->add_subcommand("bottleneck", "Brute-force bottleneck matching value");
  orc_bn->add_option("--red", orc_red, "Red cloud CSV")->required();
  orc_bn->add_option("--blue", orc_blue, "Blue cloud CSV")->required();
  orc_bn->add_option("--metric", orc_metric)->check(CLI::IsMember({"euclidean", "chebyshev"}));
  auto* orc_tail = orc->add_subcommand("tail", "Poisson upper-tail bound");
  orc_tail->add_option("--lambda", tail_lambda)->required();
  orc_tail->add_option("--x", tail_x)->required();

  auto* exp = app.add_subcommand("experiment", "Scaling experiment, CSV output");
  std::vector<std::size_t> exp_n;
  std::size_t exp_min = 0, exp_max = 0, exp_trials = 1, exp_threads = 1;
  std::string exp_out = "-";
  bool exp_omit_timing = false;
  PipelineFlags exp_flags;
  exp_flags.matching = "exact";
  exp->add_option("--n", exp_n, "Explicit sizes (comma separated)")->delimiter(',');
  exp->add_option("--n-min", exp_min, "Smallest size of a doubling sweep");
  exp->add_option("--n-max", exp_max, "Largest size of a doubling sweep");
  exp->add_option("--trials", exp_trials, "Trials per size")->check(CLI::PositiveNumber);
  exp->add_option("--threads", exp_threads, "Worker threads")->check(CLI::PositiveNumber);
  exp->add_option("-o,--out", exp_out, "Output CSV, '-' for stdout");
  exp->add_flag("--omit-timing", exp_omit_timing, "Write wall_ms as 0");
  exp_flags.add_to(*exp);
  add_seed(exp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return kUsage;
  }

  try {
    if (!seed_given) seed = default_seed();

    if (gen->parsed()) {
      std::vector<Permutation> perms;
      if (!gen_clouds.empty()) {
        std::filesystem::create_directories(gen_clouds);
        SamplerConfig sc;
        sc.seed = seed;
        for (std::size_t j = 0; j < gen_k; ++j) {
          const auto cloud = sample_cloud(gen_n, sc, j);
          const auto path = std::filesystem::path(gen_clouds) / ("cloud_" + std::to_string(j + 1) + ".csv");
          std::ofstream file(path);
          if (!file) throw InputError("cannot write " + path.string());
          write_cloud_csv(file, cloud);
          perms.push_back(permutation_of_cloud(cloud));
        }
      } else {
        perms = random_permutations(gen_n, gen_k, seed);
      }
      emit_perms(out, perms, gen_format);
      return kOk;
    }

    if (dec->parsed()) {
      DecomposeResult result;
      const auto cfg = flags.config(seed);
      if (dec_baseline) {
        std::vector<Permutation> perms =
            dec_fresh ? random_permutations(dec_fresh, flags.k, seed) : load_perms(dec_input, dec_format, in);
        result = baseline_decompose(perms);
      } else if (dec_fresh) {
        result = decompose_fresh(dec_fresh, cfg);
      } else if (!dec_clouds.empty()) {
        std::vector<PointCloud> clouds;
        for (const auto& path : dec_clouds) clouds.push_back(load_cloud(path));
        auto replay = cfg;
        replay.k = clouds.size();
        result = decompose_clouds(std::move(clouds), replay);
      } else {
        auto perms = load_perms(dec_input, dec_format, in);
        auto given = cfg;
        given.k = perms.size();
        if (given.k < 2) throw InputError("decompose needs at least two permutations");
        result = decompose(perms, given);
      }
      if (!dec_perms_out.empty()) {
        std::ofstream file(dec_perms_out);
        if (!file) throw InputError("cannot write " + dec_perms_out);
        emit_perms(file, result.perms, dec_format);
      }
      out << decomposition_to_json(result.decomposition, dec_pretty ? 2 : -1) << "\n";
      err << run_record_to_json(result.record) << "\n";
      return kOk;
    }

    if (base->parsed()) {
      const auto perms = load_perms(base_input, base_format, in);
      const auto result =
          baseline_decompose(perms, base_increasing ? PileOrder::increasing : PileOrder::decreasing);
      out << decomposition_to_json(result.decomposition, base_pretty ? 2 : -1) << "\n";
      err << run_record_to_json(result.record) << "\n";
      return kOk;
    }

    if (ver->parsed()) {
      const auto perms = load_perms(ver_perms, ver_format, in);
      Decomposition d;
      try {
        d = decomposition_from_json(slurp(ver_dec, in));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      Verdict verdict;
      try {
        verdict = verify_decomposition(perms, d);
      } catch (const std::invalid_argument& e) {
        verdict = Verdict::fail(e.what());
      }
      if (verdict) {
        out << "valid: " << d.part_count() << " parts\n";
        return kOk;
      }
      out << "invalid: " << verdict.violation << "\n";
      return kInvalid;
    }

    if (orc->parsed()) {
      if (orc_tail->parsed()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g\n", poisson_tail_bound(tail_lambda, tail_x));
        out << buf;
        return kOk;
      }
      if (orc_bn->parsed()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g\n",
                      brute_bottleneck(load_cloud(orc_red), load_cloud(orc_blue), kMetrics.at(orc_metric)));
        out << buf;
        return kOk;
      }
      const auto perms = load_perms(orc_perms, orc_format, in);
      if (orc_u->parsed()) {
        auto budget = OracleBudget::exact_u();
        if (orc_cap) budget.max_n = orc_cap;
        out << exact_U(perms, budget) << "\n";
      } else if (orc_lcp->parsed()) {
        if (perms.size() != 2) throw InputError("lcp needs exactly two permutations");
        auto budget = OracleBudget::common_pattern();
        if (orc_cap) budget.max_n = orc_cap;
        out << longest_common_pattern(perms[0], perms[1], budget) << "\n";
      } else {
        auto budget = OracleBudget::lis();
        if (orc_cap) budget.max_n = orc_cap;
        for (const auto& p : perms) out << brute_lis(p, budget) << "\n";
      }
      return kOk;
    }

    if (exp->parsed()) {
      ExperimentPlan plan;
      plan.n_values = exp_n;
      if (exp_min || exp_max) {
        if (exp_min < 2 || exp_max < exp_min) throw InputError("need 2 <= --n-min <= --n-max");
        for (std::size_t n = exp_min; n <= exp_max; n *= 2) plan.n_values.push_back(n);
      }
      std::sort(plan.n_values.begin(), plan.n_values.end());
      plan.k = exp_flags.k;
      plan.trials_per_n = exp_trials;
      plan.seed = seed;
      plan.sampler = kSamplers.at(exp_flags.sampler);
      plan.metric = kMetrics.at(exp_flags.metric);
      plan.matching_mode = kMatchingModes.at(exp_flags.matching);
      plan.threads = exp_threads;
      try {
        validate(plan);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      std::ofstream file;
      if (exp_out != "-") {
        file.open(exp_out);
        if (!file) throw InputError("cannot write " + exp_out);
      }
      const auto rows = run_experiment(plan);
      write_experiment_csv(exp_out == "-" ? out : file, rows, exp_omit_timing);
      return kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OracleRefusal& e) {
    err << "refused: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace permsim::cli
