#pragma once

#include <stdexcept>

#include "combtrie/comb.hpp"
#include "combtrie/series.hpp"

namespace combtrie {

/// S(x) = sum c_n x^n.
template <class S>
Series<S> series_S(const Comb<S>& comb, long order) {
  if (order < 1) throw std::invalid_argument("series_S: order >= 1 required");
  Series<S> s(order);
  for (long n = 0; n <= order; ++n) s.set_coeff(n, comb.c(n));
  return s;
}

/// P(x) = sum_{n>=1} rho_n x^n with rho_n = c_{n-1} - c_n.
template <class S>
Series<S> series_P(const Comb<S>& comb, long order) {
  Series<S> s(order);
  for (long n = 1; n <= order; ++n) s.set_coeff(n, comb.rho(n));
  return s;
}

/// R_a(x) = sum_{k>=a} c_k x^k.
template <class S>
Series<S> series_R(const Comb<S>& comb, long a, long order) {
  if (a < 0) throw std::invalid_argument("series_R: a >= 0 required");
  Series<S> s(order);
  for (long k = a; k <= order; ++k) s.set_coeff(k, comb.c(k));
  return s;
}

/// U(x) = sum u_n x^n, built two independent ways and cross-checked:
/// the renewal convolution recurrence u_n = rho_n + sum u_k rho_{n-k}
/// with u_0 = 1, and the series division 1/((1-x) S(x)). A mismatch means
/// an arithmetic bug, not bad input.
template <class S>
Series<S> series_U(const Comb<S>& comb, long order) {
  Series<S> rec(order);
  rec.set_coeff(0, S(1));
  for (long n = 1; n <= order; ++n) {
    S acc = comb.rho(n);
    for (long k = 1; k < n; ++k) acc += rec.coeff(k) * comb.rho(n - k);
    rec.set_coeff(n, acc);
  }
  Series<S> div = Series<S>::constant(S(1), order)
                      .divided_by(Series<S>::one_minus_x(order) *
                                  series_S(comb, order));
  if (!rec.agrees_with(div, 1e-9))
    throw std::logic_error("series_U: recurrence and division disagree");
  return rec;
}

/// Shifted first-return series
///   P_a(x) = (1/c_a) sum_{n>=1} rho_{a+n} x^n
///          = x + (x-1)/(c_a x^a) * R_{a+1}(x),
/// built both ways and cross-checked up to order - a.
template <class S>
Series<S> series_Pa(const Comb<S>& comb, long a, long order) {
  if (a < 0) throw std::invalid_argument("series_Pa: a >= 0 required");
  S ca = comb.c(a);
  Series<S> shifted(order);
  for (long n = 1; n <= order; ++n) shifted.set_coeff(n, comb.rho(a + n) / ca);

  Series<S> closed =
      Series<S>::monomial(S(1), 1, order) +
      (Series<S>::one_minus_x(order).scaled(S(-1) / ca) *
       series_R(comb, a + 1, order).mul_xpow(-a))
          .normalized();
  if (!shifted.truncated(order - a).agrees_with(closed, 1e-9))
    throw std::logic_error("series_Pa: shifted sum and closed form disagree");
  return shifted;
}

}  // namespace combtrie
