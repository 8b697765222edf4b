#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "combtrie/comb_series.hpp"
#include "combtrie/word.hpp"

namespace combtrie {

/// The five word-pair shapes of the mixing-coefficient generating functions.
/// With a = trailing-zero count of A and b = leading-zero count of B:
///   I   A = A'1,    B = 1B'          (a = b = 0)
///   II  A = A'10^a, B = 0^b1B',      a + b >= 1
///   III A = 0^a,    B = 0^b
///   IV  A = A'10^a, B = 0^b
///   V   A = 0^a,    B = 0^b1B'
enum class MixCaseId { I, II, III, IV, V };

struct MixCase {
  MixCaseId case_id;
  long a = 0;
  long b = 0;
};

inline const char* mix_case_name(MixCaseId id) {
  switch (id) {
    case MixCaseId::I: return "I";
    case MixCaseId::II: return "II";
    case MixCaseId::III: return "III";
    case MixCaseId::IV: return "IV";
    case MixCaseId::V: return "V";
  }
  return "?";
}

inline MixCase classify(const Word& A, const Word& B) {
  if (A.empty() || B.empty())
    throw std::invalid_argument("classify: words must be nonempty");
  bool oneA = A.has_one(), oneB = B.has_one();
  long a = oneA ? A.trailing_zeros() : A.size();
  long b = oneB ? B.leading_zeros() : B.size();
  if (oneA && oneB)
    return {a + b == 0 ? MixCaseId::I : MixCaseId::II, a, b};
  if (!oneA && !oneB) return {MixCaseId::III, a, b};
  if (oneA) return {MixCaseId::IV, a, b};
  return {MixCaseId::V, a, b};
}

/// Generating function M^{A,B} with psi(n,A,B) = [x^{n+1}] M^{A,B}(x).
///
/// Case I is built as Q(x)/S(x) with [x^n]Q = r_{n+1}, which equals
/// (S(x)-S(1))/((x-1)S(x)) coefficientwise but avoids the S(1)u_n - 1
/// cancellation in float mode.
///
/// Cases iv and v: the bracket terms here carry 1/r_b resp. 1/r_a only.
/// The extra 1/c_a resp. 1/c_b factors found in some statements of these
/// two cases fail the brute-force enumeration oracle; the forms below are
/// re-derived with the same decomposition as cases ii/iii and match the
/// oracle exactly.
template <class S>
Series<S> mix_series(const Comb<S>& comb, const Word& A, const Word& B,
                     long order) {
  MixCase mc = classify(A, B);
  const long a = mc.a, b = mc.b;
  S s1 = comb.s1();

  if (mc.case_id == MixCaseId::I) {
    Series<S> q(order);
    for (long n = 0; n <= order; ++n) q.set_coeff(n, comb.r(n + 1));
    return q.divided_by(series_S(comb, order));
  }

  Series<S> u = series_U(comb, order);
  Series<S> s = series_S(comb, order);

  switch (mc.case_id) {
    case MixCaseId::II: {
      Series<S> lead = series_Pa(comb, a + b, order)
                           .scaled(s1 * comb.c(a + b) / (comb.c(a) * comb.c(b)));
      Series<S> brk =
          (series_Pa(comb, a, order) * series_Pa(comb, b, order)).scaled(s1) -
          s;
      return lead + u * brk;
    }
    case MixCaseId::III: {
      Series<S> lead(order);
      for (long n = 1; n <= order; ++n)
        lead.set_coeff(n, comb.r(a + b + n - 1));
      lead = lead.scaled(s1 / (comb.r(a) * comb.r(b)));
      Series<S> brk = (series_R(comb, a, order) * series_R(comb, b, order))
                          .scaled(s1 / (comb.r(a) * comb.r(b)))
                          .mul_xpow(-(a + b - 2))
                          .normalized() -
                      s;
      return lead + u * brk;
    }
    case MixCaseId::IV: {
      Series<S> lead = series_R(comb, a + b, order)
                           .scaled(s1 / (comb.c(a) * comb.r(b)))
                           .mul_xpow(-(a + b - 1))
                           .normalized();
      Series<S> brk = (series_Pa(comb, a, order) * series_R(comb, b, order))
                          .scaled(s1 / comb.r(b))
                          .mul_xpow(-(b - 1))
                          .normalized() -
                      s;
      return lead + u * brk;
    }
    case MixCaseId::V: {
      Series<S> lead = series_R(comb, a + b, order)
                           .scaled(s1 / (comb.r(a) * comb.c(b)))
                           .mul_xpow(-(a + b - 1))
                           .normalized();
      Series<S> brk = (series_R(comb, a, order) * series_Pa(comb, b, order))
                          .scaled(s1 / comb.r(a))
                          .mul_xpow(-(a - 1))
                          .normalized() -
                      s;
      return lead + u * brk;
    }
    default:
      throw std::logic_error("mix_series: unreachable");
  }
}

/// psi(n, A, B) via coefficient extraction.
template <class S>
S psi(const Comb<S>& comb, const Word& A, const Word& B, long n, long order) {
  if (n < 1) throw std::invalid_argument("psi: n >= 1 required");
  Series<S> m = mix_series(comb, A, B, order);
  if (n + 1 > m.order())
    throw std::invalid_argument("psi: truncation order too small for n");
  return m.coeff(n + 1);
}

/// Same coefficients, whole head of the series at once (cheaper for sweeps).
template <class S>
std::vector<S> psi_head(const Comb<S>& comb, const Word& A, const Word& B,
                        long n_max, long order) {
  Series<S> m = mix_series(comb, A, B, order);
  if (n_max + 1 > m.order())
    throw std::invalid_argument("psi_head: truncation order too small");
  std::vector<S> out;
  out.reserve(n_max);
  for (long n = 1; n <= n_max; ++n) out.push_back(m.coeff(n + 1));
  return out;
}

inline constexpr long kBruteForceMaxN = 22;

/// Enumeration oracle: psi(n,A,B) = (sum_{|w|=n} pi(AwB) - pi(A)pi(B))
/// over pi(A)pi(B), summed over all 2^n middle words.
template <class S>
S psi_brute_force(const Comb<S>& comb, const Word& A, const Word& B, long n) {
  if (n < 1) throw std::invalid_argument("psi_brute_force: n >= 1 required");
  if (n > kBruteForceMaxN)
    throw std::invalid_argument("psi_brute_force: enumeration budget exceeded");
  S total(0);
  std::string mid(static_cast<size_t>(n), '0');
  for (unsigned long bits = 0; bits < (1ul << n); ++bits) {
    for (long i = 0; i < n; ++i)
      mid[static_cast<size_t>(i)] = (bits >> i) & 1 ? '1' : '0';
    total += pi_word(comb, A + Word(mid) + B);
  }
  S pab = pi_word(comb, A) * pi_word(comb, B);
  return (total - pab) / pab;
}

/// Finite-n proxies for the decay-rate bounds h-/h+:
/// (1/n) min and (1/n) max of ln(1/pi(w)) over all words of length n.
/// DFS with the incremental measure ratios of the block decomposition.
template <class S>
std::pair<double, double> h_bounds_estimate(const Comb<S>& comb, long n) {
  if (n < 1 || n > kBruteForceMaxN)
    throw std::invalid_argument("h_bounds_estimate: n outside budget");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  double log_s1 = std::log(to_double(comb.s1()));
  // state: depth, trailing zeros t, whether a 1 occurred, log pi(w)
  auto rec = [&](auto&& self, long depth, long t, bool has_one,
                 double logpi) -> void {
    if (depth == n) {
      lo = std::min(lo, -logpi);
      hi = std::max(hi, -logpi);
      return;
    }
    double lc_t = std::log(to_double(comb.c(t)));
    if (!has_one) {
      double lr_t = std::log(to_double(comb.r(t)));
      self(self, depth + 1, t + 1, false,
           logpi + std::log(to_double(comb.r(t + 1))) - lr_t);
      self(self, depth + 1, 0, true, lc_t - log_s1);
    } else {
      self(self, depth + 1, t + 1, true,
           logpi + std::log(to_double(comb.c(t + 1))) - lc_t);
      self(self, depth + 1, 0, true,
           logpi + std::log(to_double(comb.rho(t + 1))) - lc_t);
    }
  };
  rec(rec, 0, 0, false, 0.0);
  return {lo / n, hi / n};
}

}  // namespace combtrie
