#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "combtrie/comb.hpp"
#include "combtrie/fit.hpp"

namespace combtrie {

/// Which comb to run, plus the q-list for custom combs: q0(n) = q_values[n],
/// with the last entry repeated for all larger n (geometric tail, so the
/// stationary measure always exists).
struct CombSpec {
  CombKind kind = CombKind::LogN;
  std::vector<double> q_values;

  static CombSpec parse(const std::string& name);
};

Comb<double> make_comb(const CombSpec& spec);
Comb<Rat> make_comb_rational(const CombSpec& spec);

struct SweepConfig {
  CombSpec comb;
  uint64_t seed = 1;
  int runs = 25;
  std::vector<long> checkpoints;  // strictly increasing trie sizes
  long letter_budget = 100'000'000;
  bool timing = false;  // when false the millis column is emitted as 0
  int threads = 0;      // 0 = hardware concurrency
};

/// One CSV row. An aborted run (letter budget hit before the checkpoint) is
/// flagged with height = saturation = -1; the sweep continues with the other
/// runs.
struct RunRecord {
  CombKind comb = CombKind::LogN;
  uint64_t seed = 0;  // the per-run derived seed
  int run_id = 0;
  long n = 0;
  long height = 0;
  long saturation = 0;
  long letters = 0;
  long millis = 0;
  bool aborted = false;
};

/// Grows one trie per run (per-run seed = config.seed ^ run_id), recording a
/// row at every checkpoint. Runs execute on a worker pool; rows come back
/// sorted by (run_id, n) so equal configs give byte-identical CSV.
std::vector<RunRecord> trie_sweep(const SweepConfig& config);

inline constexpr char kCsvHeader[] =
    "comb,seed,run_id,n,height,saturation,letters,millis";

/// Header + one line per record, LF endings.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

struct CheckpointSummary {
  long n = 0;
  double mean_height = 0.0;
  double mean_saturation = 0.0;
};

/// Per-checkpoint means across runs; aborted rows are skipped.
std::vector<CheckpointSummary> summarize(const std::vector<RunRecord>& records);

/// Checkpoints 2^lo, 2^(lo+1), ..., 2^hi.
std::vector<long> power_of_two_checkpoints(int lo, int hi);

/// Growth of one trie observed along a fixed infinite direction s:
/// x_by_n[n-1] = X_n(s) after inserting n suffixes, and t_by_k[k-1] = first
/// n with X_n(s) >= k for every depth k reached. monotone reports that
/// (X_n) never decreased (it cannot; checked anyway as an invariant).
struct DualityTrace {
  std::vector<long> x_by_n;
  std::vector<long> t_by_k;
  bool monotone = true;
};

/// s is given by its letters (1-based); the source stream is seeded comb
/// sampling as in trie_sweep.
DualityTrace duality_trace(const CombSpec& spec, uint64_t seed, long n_max,
                           const std::vector<int>& s_prefix_then_zeros);

/// The direction s = 10^infinity used by the return-time cross-checks.
std::vector<int> direction_one_zeros();

}  // namespace combtrie
