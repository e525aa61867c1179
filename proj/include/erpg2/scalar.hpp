#pragma once

#include "erpg2/rational.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace erpg2 {

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Square-free radicands of the field Q(sqrt2, sqrt3, sqrt5), in basis order.
inline constexpr std::array<int, 8> kRadicands = {1, 2, 3, 5, 6, 10, 15, 30};

inline int radicand_index(int r) {
  for (int i = 0; i < 8; ++i)
    if (kRadicands[i] == r) return i;
  return -1;
}

// Element of Q(sqrt2, sqrt3, sqrt5) as rational coordinates over
// {1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt10, sqrt15, sqrt30}.
class Exact {
public:
  Exact() = default;
  Exact(long v) { c_[0] = v; }
  Exact(const Rat& v) { c_[0] = v; }
  explicit Exact(std::array<Rat, 8> c) : c_(std::move(c)) {}

  static Exact rational(long num, long den) {
    if (den == 0) throw ScalarError("zero denominator");
    return Exact(Rat(num, den));
  }
  // q * sqrt(r), r one of the eight square-free radicands
  static Exact surd(const Rat& q, int r) {
    int i = radicand_index(r);
    if (i < 0) throw ScalarError("radicand not in field: " + std::to_string(r));
    Exact x;
    x.c_[i] = q;
    return x;
  }

  const Rat& coord(int i) const { return c_[i]; }
  Rat& coord(int i) { return c_[i]; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (!q.is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    for (int i = 1; i < 8; ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }

  friend Exact operator+(const Exact& a, const Exact& b) {
    Exact r;
    for (int i = 0; i < 8; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend Exact operator-(const Exact& a, const Exact& b) {
    Exact r;
    for (int i = 0; i < 8; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  Exact operator-() const {
    Exact r;
    for (int i = 0; i < 8; ++i) r.c_[i] = -c_[i];
    return r;
  }
  friend Exact operator*(const Exact& a, const Exact& b);
  friend Exact operator/(const Exact& a, const Exact& b);

  Exact& operator+=(const Exact& o) { return *this = *this + o; }
  Exact& operator-=(const Exact& o) { return *this = *this - o; }
  Exact& operator*=(const Exact& o) { return *this = *this * o; }
  Exact& operator/=(const Exact& o) { return *this = *this / o; }

  friend bool operator==(const Exact& a, const Exact& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }

  // Correctly-rounded-to-a-few-ulp conversion: evaluates with 128 extra bits
  // of precision, so the only loss is the final rounding even under
  // cancellation between terms.
  double to_double() const;

  // Exact sign via rational interval refinement of the surds; terminates
  // because the basis is linearly independent over Q (zero iff all coords 0).
  int sign() const;

  std::string str() const; // canonical surd literal; re-parses to *this

private:
  std::array<Rat, 8> c_{}; // value-initialized to zeros
};

Exact parse_surd(const std::string& text);

// Tolerances of the float backend, used everywhere downstream.
struct FloatProfile {
  double eq_tol = 1e-9;
  double rank_tol = 1e-8;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Exact> {
  static constexpr bool exact = true;
  static Exact zero() { return Exact(); }
  static Exact one() { return Exact(1); }
  static Exact from_int(long v) { return Exact(v); }
  static Exact from_exact(const Exact& e) { return e; }
  static bool is_zero(const Exact& x) { return x.is_zero(); }
  static double to_double(const Exact& x) { return x.to_double(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_exact(const Exact& e) { return e.to_double(); }
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
};

} // namespace erpg2
