#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "combtrie/scalar.hpp"

namespace combtrie {

/// Truncated formal power series with coefficients of type S and an integer
/// valuation offset. Coefficients are tracked for exponents in
/// [offset(), order()]; everything outside reads as zero. A negative offset
/// (Laurent part) is legal during intermediate computation; normalized()
/// checks that it cancels before a series leaves the engine.
///
/// In rational mode all arithmetic is exact up to the truncation order.
template <class S>
class Series {
 public:
  static constexpr long kDefaultOrder = 256;

  explicit Series(long order, long offset = 0)
      : offset_(offset), coef_(static_cast<size_t>(order - offset + 1), S(0)) {
    if (order < offset) throw std::invalid_argument("series: order < offset");
  }

  static Series constant(S v, long order) {
    Series s(order);
    s.coef_[0] = std::move(v);
    return s;
  }

  static Series monomial(S v, long k, long order) {
    Series s(order);
    s.set_coeff(k, std::move(v));
    return s;
  }

  /// 1 - x, handy factor.
  static Series one_minus_x(long order) {
    Series s(order);
    s.coef_[0] = S(1);
    s.set_coeff(1, S(-1));
    return s;
  }

  long offset() const { return offset_; }
  long order() const { return offset_ + static_cast<long>(coef_.size()) - 1; }

  S coeff(long k) const {
    if (k < offset_ || k > order()) return S(0);
    return coef_[static_cast<size_t>(k - offset_)];
  }

  void set_coeff(long k, S v) {
    if (k < offset_ || k > order())
      throw std::out_of_range("series: coefficient outside tracked range");
    coef_[static_cast<size_t>(k - offset_)] = std::move(v);
  }

  Series operator+(const Series& o) const { return combined(o, +1); }
  Series operator-(const Series& o) const { return combined(o, -1); }

  Series operator*(const Series& o) const {
    long off = offset_ + o.offset_;
    long ord = std::min(order() + o.offset_, o.order() + offset_);
    Series out(ord, off);
    for (size_t i = 0; i < coef_.size(); ++i) {
      if (coef_[i] == S(0)) continue;
      long ei = offset_ + static_cast<long>(i);
      long room = ord - ei - o.offset_ + 1;
      if (room <= 0) continue;
      size_t jmax = std::min(o.coef_.size(), static_cast<size_t>(room));
      for (size_t j = 0; j < jmax; ++j)
        out.coef_[static_cast<size_t>(ei + o.offset_ + static_cast<long>(j) -
                                      off)] += coef_[i] * o.coef_[j];
    }
    return out;
  }

  Series scaled(const S& v) const {
    Series out = *this;
    for (auto& c : out.coef_) c *= v;
    return out;
  }

  /// Multiply by x^k (k may be negative): pure offset shift.
  Series mul_xpow(long k) const {
    Series out = *this;
    out.offset_ += k;
    return out;
  }

  /// this / o. The divisor's coefficient at its own offset must be nonzero
  /// (for offset 0 this is the usual nonzero-constant-term requirement).
  Series divided_by(const Series& o) const {
    if (o.coef_.empty() || o.coef_[0] == S(0))
      throw std::domain_error("series: division by series with zero leading coefficient");
    long off = offset_ - o.offset_;
    long ord = order() - o.offset_;
    Series out(ord, off);
    for (size_t n = 0; n < out.coef_.size(); ++n) {
      S acc = coef_[n];
      size_t kmax = std::min(n, o.coef_.size() - 1);
      for (size_t k = 1; k <= kmax; ++k) acc -= out.coef_[n - k] * o.coef_[k];
      out.coef_[n] = acc / o.coef_[0];
    }
    return out;
  }

  /// Strips the Laurent part, asserting it cancelled. Series handed out of
  /// the engine go through this.
  Series normalized(double rel_tol = 1e-9) const {
    if (offset_ >= 0) return *this;
    double scale = 0.0;
    if constexpr (!scalar_traits<S>::exact) {
      for (const auto& c : coef_) scale = std::max(scale, std::abs(c));
    }
    Series out(order(), 0);
    for (long k = offset_; k < 0; ++k) {
      bool ok;
      if constexpr (scalar_traits<S>::exact)
        ok = coeff(k) == S(0);
      else
        ok = std::abs(coeff(k)) <= rel_tol * std::max(scale, 1e-300);
      if (!ok)
        throw std::logic_error("series: non-cancelling negative power of x");
    }
    for (long k = 0; k <= out.order(); ++k) out.set_coeff(k, coeff(k));
    return out;
  }

  /// this / x^v with the result re-based at offset 0. Unlike mul_xpow(-v)
  /// this moves the coefficients, so a divisor built this way exposes its
  /// true leading coefficient; the dropped low-order terms must vanish.
  Series valuation_shifted(long v, double rel_tol = 1e-9) const {
    Series out(order() - v, 0);
    for (long k = offset_; k < v; ++k) {
      bool ok;
      if constexpr (scalar_traits<S>::exact)
        ok = coeff(k) == S(0);
      else
        ok = std::abs(coeff(k)) <= rel_tol;
      if (!ok)
        throw std::logic_error("series: valuation shift drops a nonzero term");
    }
    for (long k = 0; k <= out.order(); ++k) out.set_coeff(k, coeff(k + v));
    return out;
  }

  Series truncated(long order) const {
    Series out(order, offset_);
    for (long k = offset_; k <= std::min(order, this->order()); ++k)
      out.set_coeff(k, coeff(k));
    return out;
  }

  /// Coefficientwise comparison over the overlap of the tracked ranges
  /// (exact in rational mode, relative tolerance in float mode).
  bool agrees_with(const Series& o, double rel_tol = 1e-9) const {
    long lo = std::min(offset_, o.offset_);
    long hi = std::min(order(), o.order());
    for (long k = lo; k <= hi; ++k)
      if (!scalar_traits<S>::close(coeff(k), o.coeff(k), rel_tol)) return false;
    return true;
  }

 private:
  Series combined(const Series& o, int sign) const {
    long off = std::min(offset_, o.offset_);
    long ord = std::min(order(), o.order());
    Series out(ord, off);
    for (long k = off; k <= ord; ++k) {
      S v = coeff(k);
      if (sign > 0)
        v += o.coeff(k);
      else
        v -= o.coeff(k);
      out.set_coeff(k, std::move(v));
    }
    return out;
  }

  long offset_;
  std::vector<S> coef_;
};

}  // namespace combtrie
