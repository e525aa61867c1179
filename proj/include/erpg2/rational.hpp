#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace erpg2 {

// Arbitrary-precision rationals: intermediate elimination and Levi-Civita
// computations overflow fixed-width numerators quickly.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline int sign_of(const Rat& q) { return q.sign(); }

// floor(sqrt(n)) for n >= 0
inline Int isqrt_floor(const Int& n) { return boost::multiprecision::sqrt(n); }

} // namespace erpg2
