#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "combtrie/word.hpp"

using namespace combtrie;

namespace {

Word random_word(std::mt19937_64& rng, long len) {
  std::string s;
  for (long i = 0; i < len; ++i) s.push_back(rng() & 1 ? '1' : '0');
  return Word(s);
}

}  // namespace

TEST_CASE("word parsing and block decomposition") {
  Word w("0010110");
  CHECK(w.size() == 7);
  CHECK(w.leading_zeros() == 2);
  CHECK(w.trailing_zeros() == 1);
  CHECK(w.zero_blocks() == std::vector<long>{2, 1, 0, 1});
  CHECK(Word("").zero_blocks() == std::vector<long>{0});
  CHECK(Word::zeros(4).str() == "0000");
  CHECK_THROWS_AS(Word("01a"), std::invalid_argument);
}

TEST_CASE("pi of elementary cylinders") {
  auto comb = Comb<Rat>::logarithmic();
  Rat s1 = comb.s1();
  CHECK(pi_word(comb, Word("1")) == Rat(1) / s1);
  for (long n = 1; n <= 12; ++n) {
    // pi(10^n) = c_n / S(1) and pi(0^n 1) is the same cylinder mass
    Word ten("1" + std::string(n, '0'));
    Word zo(std::string(n, '0') + "1");
    CHECK(pi_word(comb, ten) == comb.c(n) / s1);
    CHECK(pi_word(comb, zo) == pi_word(comb, ten));
    CHECK(pi_word(comb, Word::zeros(n)) == comb.r(n) / s1);
  }
}

TEST_CASE("extension consistency: pi(w) = pi(w0) + pi(w1)") {
  auto comb = Comb<Rat>::factorial();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = random_word(rng, static_cast<long>(rng() % 10));
    CHECK(pi_word(comb, w + Word("0")) + pi_word(comb, w + Word("1")) ==
          pi_word(comb, w));
  }
}

TEST_CASE("renewal factorization through an inner 1") {
  auto comb = Comb<Rat>::logarithmic();
  Word one("1");
  Rat pi1 = pi_word(comb, one);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Word u = random_word(rng, static_cast<long>(rng() % 12));
    Word v = random_word(rng, static_cast<long>(rng() % 12));
    CHECK(pi_word(comb, u + one + v) * pi1 ==
          pi_word(comb, u + one) * pi_word(comb, one + v));
  }
}

TEST_CASE("length-n masses sum to one") {
  auto comb = Comb<Rat>::logarithmic();
  for (long n = 1; n <= 12; ++n) {
    Rat total(0);
    std::string w(static_cast<size_t>(n), '0');
    for (unsigned long bits = 0; bits < (1ul << n); ++bits) {
      for (long i = 0; i < n; ++i)
        w[static_cast<size_t>(i)] = (bits >> i) & 1 ? '1' : '0';
      total += pi_word(comb, Word(w));
    }
    CHECK(total == Rat(1));
  }
}
