#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "combtrie/comb.hpp"

namespace combtrie {

/// A finite word over {0,1}, with the block decomposition
/// w = 0^{a0} 1 0^{a1} 1 ... 1 0^{am} used by the measure formulas.
class Word {
 public:
  Word() = default;

  explicit Word(std::string_view bits) {
    letters_.reserve(bits.size());
    for (char ch : bits) {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("word: letters must be 0 or 1");
      letters_.push_back(ch == '1');
    }
  }

  static Word zeros(long n) { return Word(std::string(n, '0')); }

  long size() const { return static_cast<long>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  int at(long i) const { return letters_[i]; }

  bool has_one() const {
    for (auto b : letters_)
      if (b) return true;
    return false;
  }

  long leading_zeros() const {
    long n = 0;
    while (n < size() && !letters_[n]) ++n;
    return n;
  }

  long trailing_zeros() const {
    long n = 0;
    while (n < size() && !letters_[size() - 1 - n]) ++n;
    return n;
  }

  /// Zero-block lengths a0..am; m = number of ones. Always nonempty
  /// (the empty word decomposes as a single empty block).
  std::vector<long> zero_blocks() const {
    std::vector<long> blocks{0};
    for (auto b : letters_) {
      if (b)
        blocks.push_back(0);
      else
        ++blocks.back();
    }
    return blocks;
  }

  std::string str() const {
    std::string s;
    s.reserve(letters_.size());
    for (auto b : letters_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend Word operator+(const Word& a, const Word& b) {
    Word w;
    w.letters_ = a.letters_;
    w.letters_.insert(w.letters_.end(), b.letters_.begin(), b.letters_.end());
    return w;
  }

  bool operator==(const Word&) const = default;

 private:
  std::vector<uint8_t> letters_;
};

/// Stationary measure pi(w) of the cylinder of words ending (equivalently,
/// of streams starting) with w. Composition of pi(10^n) = c_n/S(1),
/// pi(0^n) = r_n/S(1), the symmetry pi(10^n) = pi(0^n 1) and the renewal
/// identity pi(u1v) pi(1) = pi(u1) pi(1v):
///   pi(0^a)                      = r_a / S(1)
///   pi(0^{a0} 1 ... 1 0^{am})    = c_{a0} c_{am} / S(1) * prod rho_{ai+1}
/// where the product runs over the inner blocks a1..a_{m-1}.
template <class S>
S pi_word(const Comb<S>& comb, const Word& w) {
  auto blocks = w.zero_blocks();
  long m = static_cast<long>(blocks.size()) - 1;  // number of ones
  if (m == 0) return comb.r(blocks[0]) / comb.s1();
  S val = comb.c(blocks[0]) * comb.c(blocks[m]) / comb.s1();
  for (long i = 1; i < m; ++i) val *= comb.rho(blocks[i] + 1);
  return val;
}

}  // namespace combtrie
