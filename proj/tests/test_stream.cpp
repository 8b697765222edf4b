#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "combtrie/stream.hpp"
#include "combtrie/word.hpp"

using namespace combtrie;

TEST_CASE("equal seeds give identical streams") {
  LetterStream a(Comb<double>::log_n(), 31337);
  LetterStream b(Comb<double>::log_n(), 31337);
  for (long i = 1; i <= 5000; ++i) CHECK(a.at(i) == b.at(i));
  LetterStream c(Comb<double>::log_n(), 31338);
  bool differs = false;
  for (long i = 1; i <= 5000 && !differs; ++i) differs = c.at(i) != a.at(i);
  CHECK(differs);
}

TEST_CASE("positions are 1-based and lazily extended") {
  LetterStream s(Comb<double>::factorial(), 5);
  CHECK_THROWS_AS(s.at(0), std::invalid_argument);
  CHECK(s.generated() == 0);
  s.at(10);
  CHECK(s.generated() == 10);
  int tenth = s.at(10);
  s.at(3);
  CHECK(s.at(10) == tenth);  // re-reads are stable
}

TEST_CASE("initial context follows the stationary law") {
  // P(initial zeros = k) = c_k / S(1); compare frequencies over many seeds
  auto comb = Comb<double>::logarithmic();
  int runs = 20000;
  std::vector<long> counts(4, 0);
  for (int run = 0; run < runs; ++run) {
    LetterStream s(comb, 0xabcdefULL + static_cast<unsigned long long>(run));
    long k = s.initial_context();
    if (k < 4) ++counts[static_cast<size_t>(k)];
  }
  double s1 = comb.s1();
  for (long k = 0; k < 4; ++k) {
    double expect = comb.c(k) / s1;
    double freq = static_cast<double>(counts[static_cast<size_t>(k)]) / runs;
    double sigma = std::sqrt(expect * (1.0 - expect) / runs);
    CHECK(std::fabs(freq - expect) <= 4.0 * sigma + 1e-9);
  }
}

TEST_CASE("pattern frequencies match the stationary measure") {
  // one long stream; occurrences of 10^j counted at every position, with
  // batch-means error bars (positions are dependent)
  auto comb_d = Comb<double>::logarithmic();
  auto comb_r = Comb<Rat>::logarithmic();
  LetterStream stream(comb_d, 777);
  const long n = 2'000'000;
  const int batches = 50;
  const long batch_len = n / batches;
  for (long j = 0; j <= 3; ++j) {
    Word w("1" + std::string(static_cast<size_t>(j), '0'));
    std::vector<double> batch_freq;
    for (int b = 0; b < batches; ++b) {
      long hits = 0;
      for (long p = b * batch_len + 1; p <= (b + 1) * batch_len; ++p) {
        bool hit = true;
        for (long i = 0; i < w.size() && hit; ++i)
          hit = stream.at(p + i) == w.at(i);
        if (hit) ++hits;
      }
      batch_freq.push_back(static_cast<double>(hits) / batch_len);
    }
    double mean = 0;
    for (double f : batch_freq) mean += f;
    mean /= batches;
    double var = 0;
    for (double f : batch_freq) var += (f - mean) * (f - mean);
    var /= (batches - 1);
    double stderr_ = std::sqrt(var / batches);
    double expect = to_double(pi_word(comb_r, w));
    CAPTURE(j);
    CHECK(std::fabs(mean - expect) <= 3.5 * stderr_);
  }
}
