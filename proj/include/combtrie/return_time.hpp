#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "combtrie/comb_series.hpp"
#include "combtrie/word.hpp"

namespace combtrie {

/// Return-time generating functions for the pattern w = 10^{k-1}:
///   S_w(x)      = 1 + c_{k-1} x^{k-1} (U(x) - 1)      (C_w = 1, no overlap)
///   Phi1(x)     = c_{k-1} x^k / (S(1)(1-x) S_w(x))
///   Phi2(x)     = c_{k-1}^2 x^{2k-1} (U(x)-1) / (S(1)(1-x) S_w(x)^2)
/// Phi2 is assembled directly from that formula and checked coefficientwise
/// against Phi1 * (1 - 1/S_w).
///
/// These are renewal-style objects: between occurrences the zero-run state
/// is regenerated at the renewal point (U - 1) rather than at the k-1 zeros
/// the pattern leaves behind. For k = 1 the two agree and the coefficients
/// are the exact law of tau2; for k >= 2 they differ by terms that vanish
/// rapidly in k (about 1.4% on the mean at k = 2, 0.007% at k = 4, checked
/// against an exact Markov-chain evaluation of the scanning law), and deep
/// coefficients can dip slightly negative for thin-tailed combs. Moments and
/// asymptotics computed here refer to these generating functions.
template <class S>
struct PatternStats {
  long k = 1;
  Series<S> phi1;
  Series<S> phi2;
  Series<S> sw;
};

template <class S>
PatternStats<S> phi_series(const Comb<S>& comb, long k, long order) {
  if (k < 1) throw std::invalid_argument("phi_series: k >= 1 required");
  if (order < 2 * k)
    throw std::invalid_argument("phi_series: truncation order below 2k");
  S ck = comb.c(k - 1);
  S s1 = comb.s1();
  Series<S> u = series_U(comb, order);
  Series<S> u_minus_1 = u - Series<S>::constant(S(1), order);
  Series<S> sw = Series<S>::constant(S(1), order) +
                 u_minus_1.scaled(ck).mul_xpow(k - 1).truncated(order);
  Series<S> omx = Series<S>::one_minus_x(order);

  Series<S> phi1 = Series<S>::monomial(ck / s1, k, order).divided_by(omx * sw);
  Series<S> phi2 = u_minus_1.scaled(ck * ck / s1)
                       .mul_xpow(2 * k - 1)
                       .truncated(order)
                       .divided_by(omx * sw * sw);
  Series<S> one = Series<S>::constant(S(1), order);
  Series<S> alt = phi1 * (one - one.divided_by(sw));
  bool agree = true;
  if constexpr (scalar_traits<S>::exact) {
    agree = phi2.agrees_with(alt);
  } else {
    // float mode: once the true tail underflows the division noise floor,
    // only absolute agreement is meaningful (the total mass is <= 1)
    for (long m = 0; m <= order && agree; ++m)
      agree = std::fabs(to_double(phi2.coeff(m)) - to_double(alt.coeff(m))) <=
              1e-9;
  }
  if (!agree)
    throw std::logic_error("phi_series: Phi2 and Phi1*(1-1/S_w) disagree");
  return {k, std::move(phi1), std::move(phi2), std::move(sw)};
}

/// P(tau2 = m) head, straight off Phi2.
template <class S>
std::vector<S> tau2_distribution(const PatternStats<S>& ps) {
  std::vector<S> dist(static_cast<size_t>(ps.phi2.order()) + 1, S(0));
  for (long m = 0; m <= ps.phi2.order(); ++m)
    dist[static_cast<size_t>(m)] = ps.phi2.coeff(m);
  return dist;
}

/// Second-order Taylor data (f(1), f'(1), f''(1)) used to evaluate the
/// moment formulas at x=1 without touching the (1-x) pole: every factor of
/// Phi2 = c^2 x^{2k-1} G / (S(1) D^2), with G = 1/S - (1-x) and
/// D = (1-x) + c x^{k-1} G, is analytic in these data as long as
/// sum n^2 c_n < infinity.
template <class S>
struct Jet {
  S v, d1, d2;

  Jet operator*(const Jet& o) const {
    return {v * o.v, v * o.d1 + d1 * o.v,
            v * o.d2 + S(2) * d1 * o.d1 + d2 * o.v};
  }
  Jet operator/(const Jet& o) const {
    S q0 = v / o.v;
    S q1 = (d1 - q0 * o.d1) / o.v;
    S q2 = (d2 - S(2) * q1 * o.d1 - q0 * o.d2) / o.v;
    return {q0, q1, q2};
  }
  Jet operator+(const Jet& o) const { return {v + o.v, d1 + o.d1, d2 + o.d2}; }
  Jet operator-(const Jet& o) const { return {v - o.v, d1 - o.d1, d2 - o.d2}; }
  Jet scaled(const S& s) const { return {s * v, s * d1, s * d2}; }
  static Jet constant(S c) { return {std::move(c), S(0), S(0)}; }
  static Jet xpow(long m) {
    return {S(1), scalar_traits<S>::from_int(m),
            scalar_traits<S>::from_int(m * (m - 1))};
  }
};

/// S(1), S'(1) = sum n c_n, S''(1) = sum n(n-1) c_n. Closed forms for the
/// builtin rational tails; truncated sums with negligible-tail checks
/// otherwise. Throws for combs without a certified finite second moment.
template <class S>
Jet<S> s_jet(const Comb<S>& comb) {
  switch (comb.kind()) {
    case CombKind::Logarithmic:
      // sum n c_n = sum 1/((n+1)(n+2)(n+3)) = 1/12 (telescoping)
      // sum n(n-1) c_n = H_2 - 3H_3 + 2H_4 = 1/6 (partial fractions)
      return {comb.s1(), scalar_traits<S>::frac(1, 12),
              scalar_traits<S>::frac(1, 6)};
    case CombKind::Factorial:
      // sum n/(n+1)! = 1, sum n(n-1)/(n+1)! = e - 2 = S(1) - 1
      return {comb.s1(), S(1), comb.s1() - S(1)};
    default: {
      long cut = comb.tail_cut();
      S d1(0), d2(0);
      for (long n = 1; n <= cut; ++n) {
        S cn = comb.c(n);
        d1 += scalar_traits<S>::from_int(n) * cn;
        d2 += scalar_traits<S>::from_int(n * (n - 1)) * cn;
      }
      double tail = to_double(comb.c(cut)) * cut * cut;
      if (!(tail < 1e-12 * (1.0 + to_double(d2))))
        throw std::runtime_error("s_jet: second moment not certified finite");
      return {comb.s1(), d1, d2};
    }
  }
}

struct Tau2Moments {
  double mean;       // E(tau2)
  double variance;   // Var(tau2) = Var(T_k)
  double mean_tk;    // E(T_k) = E(tau2) - k
};

/// Exact evaluation (exact rationals in rational mode) of the first two
/// moments of tau2(10^{k-1}) via the Taylor jets of Phi1/Phi2 at x = 1.
/// Closed-form first-derivative expressions are asserted along the way.
template <class S>
Tau2Moments moments_tau2(const Comb<S>& comb, long k) {
  if (k < 1) throw std::invalid_argument("moments_tau2: k >= 1 required");
  Jet<S> sj = s_jet(comb);
  S s1 = sj.v;
  S ck = comb.c(k - 1);
  Jet<S> one = Jet<S>::constant(S(1));
  Jet<S> omx{S(0), S(-1), S(0)};  // 1-x at x=1
  Jet<S> g = one / sj - omx;      // (1-x)(U-1) = 1/S - (1-x)
  Jet<S> d = omx + (Jet<S>::xpow(k - 1) * g).scaled(ck);  // (1-x) S_w
  Jet<S> phi1 = Jet<S>::xpow(k).scaled(ck / s1) / d;
  Jet<S> phi2 = (Jet<S>::xpow(2 * k - 1) * g).scaled(ck * ck / s1) / (d * d);

  // Closed-form derivative-at-1 expressions, exact cross-checks.
  S phi1_prime = s1 / ck - s1 + S(1) + sj.d1 / s1;
  if (!scalar_traits<S>::close(phi1.v, S(1), 1e-9) ||
      !scalar_traits<S>::close(phi2.v, S(1), 1e-9) ||
      !scalar_traits<S>::close(phi1.d1, phi1_prime, 1e-9) ||
      !scalar_traits<S>::close(phi2.d1, phi1.d1 + s1 / ck, 1e-9))
    throw std::logic_error("moments_tau2: jet vs closed-form derivative mismatch");

  double mean = to_double(phi2.d1);
  double second_fact = to_double(phi2.d2);  // E[tau2(tau2-1)]
  return {mean, second_fact + mean - mean * mean, mean - k};
}

/// Closed form of Phi2 special to the factorial comb (c_n = 1/(n+1)!),
/// where S(x) = (e^x - 1)/x gives U(x) = x/((1-x)(e^x - 1)) and
///   Phi2(x) = (e^x-1)/(e-1) * x^{2k-1} (1 - e^x(1-x))
///             / [ k!(e^x-1)(1-x) + x^{k-1}(1 - e^x(1-x)) ]^2.
/// The truncated exponential and the comb's own S(1) surrogate for e-1 are
/// used, so in rational mode this agrees with the generic assembly exactly.
template <class S>
Series<S> phi2_factorial_closed_form(const Comb<S>& comb, long k, long order) {
  if (comb.kind() != CombKind::Factorial)
    throw std::invalid_argument("closed form: factorial comb only");
  if (k < 1) throw std::invalid_argument("closed form: k >= 1 required");
  Series<S> e1(order);  // e^x - 1
  S term(1);
  for (long m = 1; m <= order; ++m) {
    term /= scalar_traits<S>::from_int(m);
    e1.set_coeff(m, term);
  }
  Series<S> omx = Series<S>::one_minus_x(order);
  Series<S> one = Series<S>::constant(S(1), order);
  Series<S> g = one - (e1 + one) * omx;  // 1 - e^x(1-x), valuation 2
  S kfact(1);
  for (long m = 2; m <= k; ++m) kfact *= scalar_traits<S>::from_int(m);
  Series<S> d = (e1 * omx).scaled(kfact) + g.mul_xpow(k - 1).truncated(order);
  Series<S> dx = d.valuation_shifted(1);  // d / x, unit constant term k!
  Series<S> numer = (e1 * g).scaled(S(1) / comb.s1());
  return numer.divided_by(dx * dx)
      .mul_xpow(2 * k - 3)
      .normalized()
      .truncated(order);
}

/// Start index T of the second occurrence of w in the 1-based stream, and
/// tau2 = T + |w| (the end of that occurrence). Occurrences are counted at
/// every start index, so overlapping occurrences of a general w count.
struct SecondOccurrence {
  long t;
  long tau2;
};

inline SecondOccurrence scan_second_occurrence(
    const std::function<int(long)>& stream, const Word& w,
    long letter_cap = 1'000'000'000) {
  long len = w.size();
  if (len < 1)
    throw std::invalid_argument("scan_second_occurrence: empty pattern");
  int seen = 0;
  for (long start = 1;; ++start) {
    if (start + len - 1 > letter_cap)
      throw std::runtime_error("scan_second_occurrence: letter cap exceeded");
    bool hit = true;
    for (long i = 0; i < len; ++i) {
      if (stream(start + i) != w.at(i)) {
        hit = false;
        break;
      }
    }
    if (hit && ++seen == 2) return {start, start + len};
  }
}

}  // namespace combtrie
