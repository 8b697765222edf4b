#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "combtrie/suffix_trie.hpp"
#include "combtrie/verify.hpp"

using namespace combtrie;

namespace {

SuffixTrie trie_over(const std::string& text, long budget = 1000000) {
  return SuffixTrie(
      [text](long i) {
        // periodic extension keeps fixed test words effectively infinite
        return text[static_cast<size_t>((i - 1) %
                                        static_cast<long>(text.size()))] == '1'
                   ? 1
                   : 0;
      },
      budget);
}

}  // namespace

TEST_CASE("the 13-letter reference trie") {
  CheckResult r = reference_trie_check();
  CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("incremental statistics match a full recount") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    std::string text;
    for (int i = 0; i < 400; ++i) text.push_back(rng() & 1 ? '1' : '0');
    SuffixTrie trie = trie_over(text);
    for (int n = 1; n <= 120; ++n) {
      trie.insert_next_suffix();
      if (n % 17 == 0 || n == 120) {
        auto rc = trie.recount();
        CHECK(rc.height == trie.height());
        CHECK(rc.saturation == trie.saturation());
        CHECK(rc.profile == trie.depth_profile());
        CHECK(rc.leaves == n);
      }
    }
  }
}

TEST_CASE("height and saturation never decrease, H >= saturation") {
  std::mt19937_64 rng(7);
  std::string text;
  for (int i = 0; i < 600; ++i) text.push_back(rng() % 3 ? '0' : '1');
  SuffixTrie trie = trie_over(text);
  long h = 0, sat = 0;
  for (int n = 1; n <= 200; ++n) {
    trie.insert_next_suffix();
    CHECK(trie.height() >= h);
    CHECK(trie.saturation() >= sat);
    CHECK(trie.height() >= trie.saturation());
    h = trie.height();
    sat = trie.saturation();
  }
}

TEST_CASE("saturation counts complete levels") {
  // every 3-letter word appears twice among the 16 rotations of this de
  // Bruijn cycle, so the first three levels fill up completely
  SuffixTrie trie = trie_over("0000100110101111");
  for (int n = 1; n <= 16; ++n) trie.insert_next_suffix();
  CHECK(trie.saturation() >= 2);
  auto profile = trie.depth_profile();
  for (long j = 1; j <= trie.saturation(); ++j)
    CHECK(profile[static_cast<size_t>(j)] == (1L << j));
}

TEST_CASE("probe_x walks the internal skeleton only") {
  SuffixTrie trie = trie_over("1001011001110");
  for (int n = 1; n <= 10; ++n) trie.insert_next_suffix();
  // s = 10^inf: path 1-0-0-1... X_10 is the deepest internal prefix
  auto s = [](long i) { return i == 1 ? 1 : 0; };
  long x = trie.probe_x(s);
  CHECK(x >= 0);
  CHECK(x <= trie.height());
  // the all-ones direction
  auto ones = [](long) { return 1; };
  CHECK(trie.probe_x(ones) <= trie.height());
}

TEST_CASE("letter budget aborts pathological repetition") {
  // constant text: suffixes never separate
  SuffixTrie trie(
      [](long) { return 0; }, 64);
  trie.insert_next_suffix();
  CHECK_THROWS_AS(trie.insert_next_suffix(), std::runtime_error);
}

TEST_CASE("letters consumed never exceeds the budget high-water mark") {
  std::mt19937_64 rng(11);
  std::string text;
  for (int i = 0; i < 200; ++i) text.push_back(rng() & 1 ? '1' : '0');
  SuffixTrie trie = trie_over(text);
  long prev = 0;
  for (int n = 1; n <= 40; ++n) {
    auto report = trie.insert_next_suffix();
    CHECK(report.letters_consumed >= prev);
    CHECK(report.leaf_depth >= 1);
    prev = report.letters_consumed;
  }
  CHECK(trie.letters_consumed() == prev);
}

TEST_CASE("leaf paths spell distinguishing prefixes") {
  std::string text = "11010001101001011";
  SuffixTrie trie = trie_over(text);
  const int n = 12;
  for (int i = 0; i < n; ++i) trie.insert_next_suffix();
  auto leaves = trie.leaf_paths();
  CHECK(static_cast<int>(leaves.size()) == n);
  for (const auto& [path, suffix] : leaves) {
    // the path letters are the suffix's first letters
    for (size_t d = 0; d < path.size(); ++d) {
      char expect =
          text[static_cast<size_t>((suffix - 1 + static_cast<long>(d)) %
                                   static_cast<long>(text.size()))];
      CHECK(path[d] == expect);
    }
  }
}
