#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace combtrie {

/// Exact arbitrary-precision rational. All "rational mode" computations use
/// this type; "float mode" uses plain double through the same templates.
using Rat = mpq_class;

inline double to_double(const Rat& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static Rat frac(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  static Rat from_int(long n) { return Rat(n); }
  // Exact equality; the tolerance parameter is ignored.
  static bool close(const Rat& a, const Rat& b, double = 0.0) { return a == b; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double frac(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double from_int(long n) { return static_cast<double>(n); }
  static bool close(double a, double b, double rel_tol = 1e-9) {
    double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) <= rel_tol * scale;
  }
};

}  // namespace combtrie
