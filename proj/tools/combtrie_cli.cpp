// combtrie: comb-source experiments, mixing/return-time computation, and
// suffix-trie sweeps. All commands are deterministic functions of their
// configuration; randomness enters only through the seed.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "combtrie/experiment.hpp"
#include "combtrie/mixing.hpp"
#include "combtrie/return_time.hpp"
#include "combtrie/stream.hpp"
#include "combtrie/verify.hpp"

using json = nlohmann::json;
using namespace combtrie;

namespace {

struct CliConfig {
  std::string comb = "logn";
  std::vector<double> q_values;  // custom comb q-list
  uint64_t seed = 1;
  int runs = 25;
  long order = 256;
  std::vector<long> checkpoints;
  long letter_budget = 100'000'000;
  long enum_budget = 14;  // brute-force comparison cutoff for mixing tables
  bool timing = false;
  std::string out;
};

// Config file first, then flag overrides on top.
void load_config_file(CliConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j = json::parse(in);
  if (j.contains("comb")) cfg.comb = j["comb"].get<std::string>();
  if (j.contains("q0")) cfg.q_values = j["q0"].get<std::vector<double>>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("runs")) cfg.runs = j["runs"].get<int>();
  if (j.contains("order")) cfg.order = j["order"].get<long>();
  if (j.contains("checkpoints"))
    cfg.checkpoints = j["checkpoints"].get<std::vector<long>>();
  if (j.contains("letter_budget"))
    cfg.letter_budget = j["letter_budget"].get<long>();
  if (j.contains("enum_budget")) cfg.enum_budget = j["enum_budget"].get<long>();
  if (j.contains("timing")) cfg.timing = j["timing"].get<bool>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
}

CombSpec comb_spec(const CliConfig& cfg) {
  CombSpec spec = CombSpec::parse(cfg.comb);
  spec.q_values = cfg.q_values;
  if (spec.kind == CombKind::Custom) {
    if (spec.q_values.empty())
      throw CLI::ValidationError("--comb", "custom comb needs q0 in --config");
    for (double q : spec.q_values)
      if (!(q > 0.0 && q < 1.0))
        throw CLI::ValidationError("--config", "q0 values must lie in (0,1)");
  }
  return spec;
}

// Output path resolution: explicit --out wins; otherwise default_name inside
// $COMBTRIE_OUT (or the current directory).
std::string out_path(const CliConfig& cfg, const std::string& default_name) {
  if (!cfg.out.empty()) return cfg.out;
  const char* dir = std::getenv("COMBTRIE_OUT");
  if (dir && *dir)
    return (std::filesystem::path(dir) / default_name).string();
  return default_name;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int cmd_verify(const CliConfig& cfg) {
  comb_spec(cfg);  // reject malformed custom combs before running anything
  VerifyOptions options;
  options.seed = cfg.seed;
  auto results = verify_battery(options);
  for (const auto& r : results)
    std::cout << (r.pass ? "pass  " : "FAIL  ") << r.name << "  ("
              << r.detail << ")\n";
  bool ok = all_passed(results);
  std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_trie_sweep(const CliConfig& cfg) {
  SweepConfig sc;
  sc.comb = comb_spec(cfg);
  sc.seed = cfg.seed;
  sc.runs = cfg.runs;
  sc.checkpoints =
      cfg.checkpoints.empty() ? power_of_two_checkpoints(10, 18)
                              : cfg.checkpoints;
  sc.letter_budget = cfg.letter_budget;
  sc.timing = cfg.timing;
  auto records = trie_sweep(sc);
  std::string path = out_path(cfg, "trie_sweep.csv");
  auto out = open_out(path);
  write_csv(out, records);
  std::cerr << "wrote " << records.size() << " rows to " << path << "\n";
  for (const auto& s : summarize(records))
    std::cout << "n=" << s.n << " mean_height=" << s.mean_height
              << " mean_saturation=" << s.mean_saturation << "\n";
  return 0;
}

int cmd_mixing(const CliConfig& cfg, const std::string& a_str,
               const std::string& b_str, long n_max) {
  CombSpec spec = comb_spec(cfg);
  Word A(a_str), B(b_str);
  MixCase mc = classify(A, B);
  long order = std::max(cfg.order, n_max + 2);

  json rows = json::array();
  if (spec.kind == CombKind::Custom || cfg.order >= 1024) {
    // float mode for custom combs and large orders
    Comb<double> comb = make_comb(spec);
    auto head = psi_head(comb, A, B, n_max, order);
    for (long n = 1; n <= n_max; ++n)
      rows.push_back({{"n", n}, {"psi", head[static_cast<size_t>(n - 1)]}});
  } else {
    Comb<Rat> comb = make_comb_rational(spec);
    auto head = psi_head(comb, A, B, n_max, order);
    for (long n = 1; n <= n_max; ++n) {
      double psi_n = to_double(head[static_cast<size_t>(n - 1)]);
      json row = {{"n", n}, {"psi", psi_n}};
      if (n <= std::min(cfg.enum_budget, kBruteForceMaxN)) {
        Rat brute = psi_brute_force(comb, A, B, n);
        row["brute_force"] = to_double(brute);
        row["difference"] =
            to_double(head[static_cast<size_t>(n - 1)] - brute);
      }
      rows.push_back(row);
    }
  }
  json doc = {{"comb", cfg.comb},
              {"A", a_str},
              {"B", b_str},
              {"case", mix_case_name(mc.case_id)},
              {"a", mc.a},
              {"b", mc.b},
              {"values", rows}};
  std::string path = out_path(cfg, "mixing.json");
  open_out(path) << doc.dump(2) << "\n";
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_return_time(const CliConfig& cfg, long k, int mc_runs, long dist_head) {
  CombSpec spec = comb_spec(cfg);
  if (spec.kind == CombKind::Custom)
    throw CLI::ValidationError("--comb",
                               "return-time needs a builtin comb (exact tails)");
  Comb<Rat> comb = make_comb_rational(spec);
  Tau2Moments moments = moments_tau2(comb, k);  // throws if not square-integrable

  long order = std::max(cfg.order, std::max(dist_head, 2 * k) + 2);
  auto ps = phi_series(comb, k, order);
  json dist = json::array();
  for (long m = 0; m <= dist_head; ++m)
    dist.push_back(to_double(ps.phi2.coeff(m)));

  // Monte Carlo: per-run seeds derived as for sweeps
  std::vector<double> samples;
  Word w("1" + std::string(static_cast<size_t>(k - 1), '0'));
  for (int run = 0; run < mc_runs; ++run) {
    LetterStream stream(make_comb(spec),
                        cfg.seed ^ static_cast<uint64_t>(run));
    auto occ = scan_second_occurrence(
        [&stream](long i) { return stream.at(i); }, w);
    samples.push_back(static_cast<double>(occ.tau2));
  }
  auto mc = mean_stderr(samples);

  json doc = {{"comb", cfg.comb},
              {"k", k},
              {"mean_tau2", moments.mean},
              {"variance", moments.variance},
              {"mean_T_k", moments.mean_tk},
              {"distribution_head", dist},
              {"mc_runs", mc_runs},
              {"mc_mean", mc.mean},
              {"mc_stderr", mc.stderr_}};
  std::string path = out_path(cfg, "return_time.json");
  open_out(path) << doc.dump(2) << "\n";
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_pi(const CliConfig& cfg, const std::string& word_str) {
  CombSpec spec = comb_spec(cfg);
  Word w(word_str);
  if (spec.kind == CombKind::Custom) {
    std::cout << to_double(pi_word(make_comb(spec), w)) << "\n";
  } else {
    Rat p = pi_word(make_comb_rational(spec), w);
    std::cout << p.get_str() << " = " << to_double(p) << "\n";
  }
  return 0;
}

int cmd_generate(const CliConfig& cfg, long count) {
  CombSpec spec = comb_spec(cfg);
  LetterStream stream(make_comb(spec), cfg.seed);
  std::string path = out_path(cfg, "letters.txt");
  auto out = open_out(path);
  for (long i = 1; i <= count; ++i) out << (stream.at(i) ? '1' : '0');
  out << "\n";
  std::cerr << "wrote " << count << " letters to " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infinite-comb sources, mixing coefficients, return times, "
               "and suffix-trie experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CliConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  app.add_option("--comb", cfg.comb,
                 "logarithmic | factorial | logn | custom");
  app.add_option("--seed", cfg.seed, "64-bit master seed");
  app.add_option("--runs", cfg.runs, "number of seeded runs");
  app.add_option("--order", cfg.order, "series truncation order");
  app.add_option("--out", cfg.out, "output path (default: $COMBTRIE_OUT)");
  app.add_option("--checkpoints", cfg.checkpoints,
                 "trie sizes to record (strictly increasing)");
  app.add_option("--letter-budget", cfg.letter_budget,
                 "abort a run past this many source letters");
  app.add_flag("--timing", cfg.timing,
               "fill the millis column (off by default: deterministic CSV)");

  auto* verify = app.add_subcommand("verify", "run the oracle battery");

  auto* sweep =
      app.add_subcommand("trie-sweep", "grow tries, emit height/saturation CSV");

  std::string a_str = "1", b_str = "1";
  long n_max = 50;
  auto* mixing = app.add_subcommand("mixing", "psi mixing-coefficient table");
  mixing->add_option("--A", a_str, "left word (binary)");
  mixing->add_option("--B", b_str, "right word (binary)");
  mixing->add_option("--n-max", n_max, "largest gap n");

  long k = 10, dist_head = 64;
  int mc_runs = 1000;
  auto* rt = app.add_subcommand("return-time",
                                "moments and distribution of tau2(10^{k-1})");
  rt->add_option("-k,--k", k, "pattern parameter (w = 10^{k-1})")
      ->check(CLI::PositiveNumber);
  rt->add_option("--mc-runs", mc_runs, "Monte Carlo sample size");
  rt->add_option("--dist-head", dist_head, "distribution coefficients to emit");

  std::string word_str;
  auto* pi = app.add_subcommand("pi", "stationary probability of a word");
  pi->add_option("word", word_str, "binary word")->required();

  long count = 1000;
  auto* gen = app.add_subcommand("generate", "raw letter stream to a file");
  gen->add_option("--count", count, "letters to emit")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      // re-apply flag overrides on top of the file
      CliConfig from_file;
      load_config_file(from_file, config_path);
      CliConfig flags = cfg;
      cfg = from_file;
      for (const auto* opt :
           {"--comb", "--seed", "--runs", "--order", "--out", "--checkpoints",
            "--letter-budget", "--timing"}) {
        if (app.count(opt) == 0) continue;
        if (std::string(opt) == "--comb") cfg.comb = flags.comb;
        if (std::string(opt) == "--seed") cfg.seed = flags.seed;
        if (std::string(opt) == "--runs") cfg.runs = flags.runs;
        if (std::string(opt) == "--order") cfg.order = flags.order;
        if (std::string(opt) == "--out") cfg.out = flags.out;
        if (std::string(opt) == "--checkpoints")
          cfg.checkpoints = flags.checkpoints;
        if (std::string(opt) == "--letter-budget")
          cfg.letter_budget = flags.letter_budget;
        if (std::string(opt) == "--timing") cfg.timing = flags.timing;
      }
    }
    if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");

    if (verify->parsed()) return cmd_verify(cfg);
    if (sweep->parsed()) return cmd_trie_sweep(cfg);
    if (mixing->parsed()) return cmd_mixing(cfg, a_str, b_str, n_max);
    if (rt->parsed()) return cmd_return_time(cfg, k, mc_runs, dist_head);
    if (pi->parsed()) return cmd_pi(cfg, word_str);
    if (gen->parsed()) return cmd_generate(cfg, count);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
