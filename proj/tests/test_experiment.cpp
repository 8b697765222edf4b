#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "combtrie/experiment.hpp"
#include "combtrie/fit.hpp"
#include "combtrie/verify.hpp"

using namespace combtrie;

TEST_CASE("comb specs parse and validate") {
  CHECK(CombSpec::parse("logarithmic").kind == CombKind::Logarithmic);
  CHECK(CombSpec::parse("factorial").kind == CombKind::Factorial);
  CHECK(CombSpec::parse("logn").kind == CombKind::LogN);
  CHECK_THROWS_AS(CombSpec::parse("fibonacci"), std::invalid_argument);
  CombSpec bad{CombKind::Custom, {0.5, 1.5}};
  CHECK_THROWS_AS(make_comb(bad), std::invalid_argument);
  CombSpec empty{CombKind::Custom, {}};
  CHECK_THROWS_AS(make_comb(empty), std::invalid_argument);
  CombSpec ok{CombKind::Custom, {0.9, 0.5, 0.25}};
  CHECK(make_comb(ok).q0(0) == 0.9);
  CHECK(make_comb(ok).q0(7) == 0.25);  // last value repeats
  CHECK_THROWS_AS(make_comb_rational(ok), std::invalid_argument);
}

TEST_CASE("sweeps are deterministic and well-formed") {
  SweepConfig config;
  config.comb = CombSpec::parse("logn");
  config.seed = 99;
  config.runs = 4;
  config.checkpoints = {64, 128, 256};
  auto records = trie_sweep(config);
  REQUIRE(records.size() == 12);
  int idx = 0;
  for (int run = 0; run < 4; ++run) {
    for (long cp : {64L, 128L, 256L}) {
      const auto& r = records[static_cast<size_t>(idx++)];
      CHECK(r.run_id == run);
      CHECK(r.n == cp);
      CHECK(r.seed == (99ULL ^ static_cast<unsigned long long>(run)));
      CHECK(r.height >= r.saturation);
      CHECK(r.millis == 0);  // timing off by default
      CHECK_FALSE(r.aborted);
    }
  }
  // byte-identical CSV on a second sweep with the same config
  auto again = trie_sweep(config);
  std::ostringstream csv1, csv2;
  write_csv(csv1, records);
  write_csv(csv2, again);
  CHECK(csv1.str() == csv2.str());
  CHECK(csv1.str().substr(0, csv1.str().find('\n')) == kCsvHeader);
}

TEST_CASE("single-threaded and parallel sweeps agree") {
  SweepConfig config;
  config.comb = CombSpec::parse("factorial");
  config.seed = 5;
  config.runs = 6;
  config.checkpoints = {32, 64};
  config.threads = 1;
  auto serial = trie_sweep(config);
  config.threads = 4;
  auto parallel = trie_sweep(config);
  std::ostringstream a, b;
  write_csv(a, serial);
  write_csv(b, parallel);
  CHECK(a.str() == b.str());
}

TEST_CASE("summarize averages per checkpoint") {
  std::vector<RunRecord> rows;
  for (int run = 0; run < 2; ++run) {
    RunRecord r;
    r.run_id = run;
    r.n = 10;
    r.height = 4 + run;  // 4 and 5
    r.saturation = 2;
    rows.push_back(r);
  }
  auto s = summarize(rows);
  REQUIRE(s.size() == 1);
  CHECK(s[0].mean_height == doctest::Approx(4.5));
  CHECK(s[0].mean_saturation == doctest::Approx(2.0));
}

TEST_CASE("invalid sweep configs are rejected") {
  SweepConfig config;
  config.checkpoints = {10, 10};
  CHECK_THROWS_AS(trie_sweep(config), std::invalid_argument);
  config.checkpoints = {};
  CHECK_THROWS_AS(trie_sweep(config), std::invalid_argument);
  config.checkpoints = {16};
  config.runs = 0;
  CHECK_THROWS_AS(trie_sweep(config), std::invalid_argument);
}

TEST_CASE("aborted runs are flagged, the sweep continues") {
  SweepConfig config;
  config.comb = CombSpec::parse("logarithmic");
  config.seed = 3;
  config.runs = 3;
  config.checkpoints = {512, 1024};
  config.letter_budget = 600;  // far too small for 1024 suffixes
  auto records = trie_sweep(config);
  CHECK(records.size() == 6);
  bool saw_abort = false;
  for (const auto& r : records) {
    if (r.aborted) {
      saw_abort = true;
      CHECK(r.height == -1);
      CHECK(r.saturation == -1);
    }
  }
  CHECK(saw_abort);
}

TEST_CASE("least squares fit recovers a line") {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(3.0 * v - 1.0);
  auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(3.0));
  CHECK(f.intercept == doctest::Approx(-1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), std::invalid_argument);
}

TEST_CASE("duality traces stay consistent across combs") {
  for (const char* comb : {"logarithmic", "factorial", "logn"}) {
    CheckResult r = duality_check(comb, 12345, 300);
    CHECK_MESSAGE(r.pass, r.detail);
  }
}
