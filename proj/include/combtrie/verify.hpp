#pragma once

#include <string>
#include <utility>
#include <vector>

namespace combtrie {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  long renewal_n_max = 200;   // renewal identity checked for n <= this
  long oracle_n_max = 8;      // brute-force psi comparisons for n <= this
  long oracle_ab_max = 2;     // (a,b) grid bound for the five cases
  long duality_runs = 5;      // seeded runs per builtin comb
  long duality_n = 500;       // suffixes per duality run
  long measure_n_max = 10;    // exact sum-to-one depth
  unsigned long long seed = 424242;
};

/// The oracle/invariant battery: renewal identity, five-case brute-force
/// equivalence, return-time cross-checks, the 13-letter reference trie,
/// duality traces, and measure sanity. Pure function of its options.
std::vector<CheckResult> verify_battery(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

/// Reference trie: first 10 suffixes of "1001011001110". Checks height 4,
/// saturation 2, that only the 13 given letters are read, and that every
/// leaf sits exactly one letter past the longest common prefix of its
/// suffix with any other (the independent shape oracle).
CheckResult reference_trie_check();

/// One seeded duality run along s: grows a trie while recording X_n(s) and
/// T_k(s), checks {X_n >= k} = {T_k <= n} for every recorded pair, and that
/// each T_k equals the second-occurrence start of the corresponding prefix
/// word in an identically seeded stream.
CheckResult duality_check(const std::string& comb_name,
                          unsigned long long seed, long n_max);

/// Representative (A,B) for each of the five mixing shapes at block sizes
/// (a,b); words are built so classify() lands in the requested case.
std::pair<std::string, std::string> five_case_words(int case_index, long a,
                                                    long b);

}  // namespace combtrie
