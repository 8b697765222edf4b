#include "combtrie/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "combtrie/stream.hpp"
#include "combtrie/suffix_trie.hpp"

namespace combtrie {

CombSpec CombSpec::parse(const std::string& name) {
  if (name == "logarithmic" || name == "log") return {CombKind::Logarithmic, {}};
  if (name == "factorial") return {CombKind::Factorial, {}};
  if (name == "logn") return {CombKind::LogN, {}};
  if (name == "custom") return {CombKind::Custom, {}};
  throw std::invalid_argument("unknown comb: " + name);
}

namespace {

template <class S>
Comb<S> make_comb_impl(const CombSpec& spec) {
  switch (spec.kind) {
    case CombKind::Logarithmic: return Comb<S>::logarithmic();
    case CombKind::Factorial: return Comb<S>::factorial();
    case CombKind::LogN: return Comb<S>::log_n();
    case CombKind::Custom: break;
  }
  if (spec.q_values.empty())
    throw std::invalid_argument("custom comb needs a q-list");
  for (double q : spec.q_values)
    if (!(q > 0.0 && q < 1.0))
      throw std::invalid_argument("custom comb: q values must lie in (0,1)");
  std::vector<double> qs = spec.q_values;
  return Comb<S>::custom([qs](long n) {
    size_t i = std::min(static_cast<size_t>(n), qs.size() - 1);
    return static_cast<S>(qs[i]);
  });
}

}  // namespace

Comb<double> make_comb(const CombSpec& spec) {
  return make_comb_impl<double>(spec);
}

Comb<Rat> make_comb_rational(const CombSpec& spec) {
  if (spec.kind == CombKind::Custom)
    throw std::invalid_argument("custom combs run in float mode only");
  return make_comb_impl<Rat>(spec);
}

std::vector<long> power_of_two_checkpoints(int lo, int hi) {
  std::vector<long> cps;
  for (int e = lo; e <= hi; ++e) cps.push_back(1L << e);
  return cps;
}

namespace {

std::vector<RunRecord> sweep_one_run(const SweepConfig& config, int run_id) {
  const uint64_t run_seed = config.seed ^ static_cast<uint64_t>(run_id);
  LetterStream stream(make_comb(config.comb), run_seed);
  SuffixTrie trie([&stream](long i) { return stream.at(i); },
                  config.letter_budget);
  std::vector<RunRecord> rows;
  auto started = std::chrono::steady_clock::now();
  bool dead = false;
  long inserted = 0;
  for (long cp : config.checkpoints) {
    RunRecord row;
    row.comb = config.comb.kind;
    row.seed = run_seed;
    row.run_id = run_id;
    row.n = cp;
    if (!dead) {
      try {
        while (inserted < cp) {
          trie.insert_next_suffix();
          ++inserted;
        }
      } catch (const std::runtime_error&) {
        dead = true;  // letter budget: flag this and all later checkpoints
      }
    }
    if (dead) {
      row.height = -1;
      row.saturation = -1;
      row.aborted = true;
    } else {
      row.height = trie.height();
      row.saturation = trie.saturation();
    }
    row.letters = trie.letters_consumed();
    if (config.timing)
      row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<RunRecord> trie_sweep(const SweepConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("trie_sweep: runs >= 1");
  for (size_t i = 1; i < config.checkpoints.size(); ++i)
    if (config.checkpoints[i] <= config.checkpoints[i - 1])
      throw std::invalid_argument("trie_sweep: checkpoints must increase");
  if (config.checkpoints.empty() || config.checkpoints.front() < 1)
    throw std::invalid_argument("trie_sweep: need checkpoints >= 1");

  unsigned workers = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(config.runs));

  std::vector<std::vector<RunRecord>> per_run(
      static_cast<size_t>(config.runs));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int run_id = next.fetch_add(1);
      if (run_id >= config.runs) return;
      per_run[static_cast<size_t>(run_id)] = sweep_one_run(config, run_id);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<RunRecord> rows;
  rows.reserve(static_cast<size_t>(config.runs) * config.checkpoints.size());
  for (auto& run_rows : per_run)
    rows.insert(rows.end(), run_rows.begin(), run_rows.end());
  return rows;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << "\n";
  for (const auto& r : records)
    out << comb_kind_name(r.comb) << ',' << r.seed << ',' << r.run_id << ','
        << r.n << ',' << r.height << ',' << r.saturation << ',' << r.letters
        << ',' << r.millis << "\n";
}

std::vector<CheckpointSummary> summarize(
    const std::vector<RunRecord>& records) {
  std::vector<CheckpointSummary> out;
  std::vector<long> counts;
  for (const auto& r : records) {
    if (r.aborted) continue;
    size_t i = 0;
    while (i < out.size() && out[i].n != r.n) ++i;
    if (i == out.size()) {
      out.push_back({r.n, 0.0, 0.0});
      counts.push_back(0);
    }
    out[i].mean_height += static_cast<double>(r.height);
    out[i].mean_saturation += static_cast<double>(r.saturation);
    ++counts[i];
  }
  for (size_t i = 0; i < out.size(); ++i) {
    out[i].mean_height /= static_cast<double>(counts[i]);
    out[i].mean_saturation /= static_cast<double>(counts[i]);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  return out;
}

std::vector<int> direction_one_zeros() { return {1}; }

DualityTrace duality_trace(const CombSpec& spec, uint64_t seed, long n_max,
                           const std::vector<int>& s_prefix_then_zeros) {
  LetterStream stream(make_comb(spec), seed);
  SuffixTrie trie([&stream](long i) { return stream.at(i); });
  auto s_letter = [&s_prefix_then_zeros](long i) {
    return i <= static_cast<long>(s_prefix_then_zeros.size())
               ? s_prefix_then_zeros[static_cast<size_t>(i - 1)]
               : 0;
  };
  DualityTrace trace;
  trace.x_by_n.reserve(static_cast<size_t>(n_max));
  long prev = 0;
  for (long n = 1; n <= n_max; ++n) {
    trie.insert_next_suffix();
    long x = trie.probe_x(s_letter);
    if (x < prev) trace.monotone = false;
    while (static_cast<long>(trace.t_by_k.size()) < x)
      trace.t_by_k.push_back(n);  // first n reaching depth k
    trace.x_by_n.push_back(x);
    prev = x;
  }
  return trace;
}

}  // namespace combtrie
