#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "combtrie/comb.hpp"

namespace combtrie {

/// Deterministic, lazily extended letter stream distributed as the
/// stationary comb source. PRNG is std::mt19937_64 seeded with the given
/// 64-bit seed (per-run substreams are derived as seed ^ run_index by the
/// callers); equal seeds give identical streams.
///
/// The sampler state is a = number of zeros emitted since the last 1; the
/// next letter is 0 with probability q0(a). The initial a is drawn from the
/// stationary context law P(a = k) = c_k/S(1) by inverse transform, so
/// pattern frequencies are unbiased from the first letter on.
///
/// Only q0 is ever used as a float while emitting letters; c_n floats enter
/// the initial draw alone, where factorial-comb underflow is harmless (the
/// affected contexts have probability below 1e-300).
class LetterStream {
 public:
  template <class S>
  LetterStream(const Comb<S>& comb, uint64_t seed)
      : rng_(seed) {
    const Comb<S> cb = comb;  // share memo tables, copy is cheap
    q0_ = [cb](long n) { return to_double(cb.q0(n)); };
    double s1 = to_double(cb.s1());
    c_over_s1_ = [cb, s1](long n) { return to_double(cb.c(n)) / s1; };
    zeros_since_one_ = draw_initial_context();
  }

  /// Letter at 1-based position i (matching the U_1 U_2 ... convention).
  int at(long i) {
    if (i < 1) throw std::invalid_argument("stream: positions are 1-based");
    ensure(i);
    return buf_[static_cast<size_t>(i - 1)];
  }

  /// Number of letters generated so far.
  long generated() const { return static_cast<long>(buf_.size()); }

  /// The initial stationary context (zeros preceding letter 1); exposed for
  /// distribution tests.
  long initial_context() const { return initial_context_; }

 private:
  void ensure(long i) {
    while (generated() < i) {
      bool zero = unit_(rng_) < q0_cached(zeros_since_one_);
      buf_.push_back(zero ? 0 : 1);
      zeros_since_one_ = zero ? zeros_since_one_ + 1 : 0;
    }
  }

  double q0_cached(long a) {
    while (static_cast<long>(q0_memo_.size()) <= a)
      q0_memo_.push_back(q0_(static_cast<long>(q0_memo_.size())));
    return q0_memo_[static_cast<size_t>(a)];
  }

  long draw_initial_context() {
    double u = unit_(rng_);
    double acc = 0.0;
    long k = 0;
    for (;; ++k) {
      acc += c_over_s1_(k);
      if (u < acc || k > 100000) break;  // total mass is 1; k cap is paranoia
    }
    initial_context_ = k;
    return k;
  }

  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::function<double(long)> q0_;
  std::function<double(long)> c_over_s1_;
  std::vector<double> q0_memo_;
  std::vector<uint8_t> buf_;
  long zeros_since_one_ = 0;
  long initial_context_ = 0;
};

}  // namespace combtrie
