#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "combtrie/scalar.hpp"

namespace combtrie {

enum class CombKind { Logarithmic, Factorial, LogN, Custom };

inline const char* comb_kind_name(CombKind k) {
  switch (k) {
    case CombKind::Logarithmic: return "logarithmic";
    case CombKind::Factorial: return "factorial";
    case CombKind::LogN: return "logn";
    case CombKind::Custom: return "custom";
  }
  return "?";
}

/// An infinite-comb VLMC source, parameterized by the conditional
/// probabilities q0(n) = q_{0^n 1}(0), or equivalently by the products
/// c_n = prod_{k<n} q0(k). Scalar is Rat (exact) or double.
///
/// Tail quantities r(n) = sum_{k>=n} c_k and s1() = S(1) = r(0) are exact
/// closed forms for the logarithmic comb. For the factorial and log-n combs
/// they are truncated partial sums with certified tiny tails (< 1e-80 in
/// rational mode); exact_tail() reports which. All r(n) for n <= tail_cut()
/// share one truncation point, so r(n) - r(n+1) == c(n) holds exactly.
template <class S>
class Comb {
 public:
  using Q0Fn = std::function<S(long)>;

  static Comb logarithmic() {
    Comb cb(CombKind::Logarithmic, [](long n) {
      // q0(0) = 1/24, q0(n) = 1 - 4/(n+4) = n/(n+4)
      return n == 0 ? scalar_traits<S>::frac(1, 24)
                    : scalar_traits<S>::frac(n, n + 4);
    });
    cb.exact_tail_ = true;
    return cb;
  }

  static Comb factorial() {
    Comb cb(CombKind::Factorial,
            [](long n) { return scalar_traits<S>::frac(1, n + 2); });
    cb.exact_tail_ = false;
    cb.tail_cut_ = 260;
    return cb;
  }

  static Comb log_n() {
    Comb cb(CombKind::LogN, [](long n) {
      // q0(0) = 1/3, q0(n) = 1/3 + 1/(n+1)^2 for n >= 1
      S q = scalar_traits<S>::frac(1, 3);
      if (n >= 1) q += scalar_traits<S>::frac(1, (n + 1) * (n + 1));
      return q;
    });
    cb.exact_tail_ = false;
    cb.tail_cut_ = 220;
    return cb;
  }

  /// q0 supplied by the caller; convergence of sum(c_n) is checked
  /// heuristically within `horizon` and refused otherwise.
  static Comb custom(Q0Fn q0, long horizon = 4096) {
    Comb cb(CombKind::Custom, std::move(q0));
    cb.exact_tail_ = false;
    cb.tail_cut_ = cb.find_custom_tail_cut(horizon);
    return cb;
  }

  CombKind kind() const { return kind_; }
  const char* name() const { return comb_kind_name(kind_); }
  bool exact_tail() const { return exact_tail_; }
  long tail_cut() const { return tail_cut_; }

  /// q_{0^n 1}(0); validated to lie in (0,1).
  S q0(long n) const {
    S q = q0_(n);
    if (!(q > S(0) && q < S(1)))
      throw std::invalid_argument("comb: q0(n) outside (0,1)");
    return q;
  }

  /// c_n = prod_{k<n} q0(k), c_0 = 1.
  S c(long n) const {
    if (n < 0) throw std::invalid_argument("comb: c(n) needs n >= 0");
    std::lock_guard<std::mutex> lock(st_->mu);
    auto& memo = st_->c_memo;
    while (static_cast<long>(memo.size()) <= n)
      memo.push_back(memo.back() * q0(static_cast<long>(memo.size()) - 1));
    return memo[n];
  }

  /// rho_n = c_{n-1} - c_n (first-return probabilities), rho_0 = 0.
  S rho(long n) const {
    if (n == 0) return S(0);
    return c(n - 1) - c(n);
  }

  /// r_n = sum_{k>=n} c_k; r_0 = S(1).
  S r(long n) const {
    if (n < 0) throw std::invalid_argument("comb: r(n) needs n >= 0");
    if (kind_ == CombKind::Logarithmic) {
      // r_n = 1/(3n(n+1)(n+2)) for n >= 1 (telescoping), r_0 = 19/18
      if (n == 0) return scalar_traits<S>::frac(19, 18);
      return scalar_traits<S>::frac(1, 3 * n * (n + 1) * (n + 2));
    }
    if (n > tail_cut_)
      throw std::runtime_error("comb: r(n) beyond certified tail cut");
    c(tail_cut_);  // make sure c_memo covers the truncation point
    std::lock_guard<std::mutex> lock(st_->mu);
    if (st_->r_memo.empty()) {
      // One backward sweep from the shared truncation point.
      st_->r_memo.assign(tail_cut_ + 2, S(0));
      for (long k = tail_cut_; k >= 0; --k)
        st_->r_memo[k] = st_->r_memo[k + 1] + st_->c_memo[k];
    }
    return st_->r_memo[n];
  }

  /// S(1) = sum c_n.
  S s1() const { return r(0); }

 private:
  Comb(CombKind kind, Q0Fn q0)
      : kind_(kind), q0_(std::move(q0)), st_(std::make_shared<State>()) {
    st_->c_memo.push_back(S(1));
  }

  long find_custom_tail_cut(long horizon) const {
    // Partial sums must stabilize to 1e-12 for a stretch before the horizon.
    double total = 0.0;
    long quiet = 0;
    for (long n = 0; n <= horizon; ++n) {
      double cn = to_double(c(n));
      total += cn;
      quiet = (cn < 1e-12 * std::max(1.0, total)) ? quiet + 1 : 0;
      if (quiet >= 32) return n;
    }
    throw std::runtime_error("comb: unbounded tail");
  }

  struct State {
    std::mutex mu;
    std::vector<S> c_memo;
    std::vector<S> r_memo;
  };

  CombKind kind_;
  Q0Fn q0_;
  bool exact_tail_ = false;
  long tail_cut_ = 0;
  std::shared_ptr<State> st_;  // memo tables; Comb is cheap to copy
};

}  // namespace combtrie
