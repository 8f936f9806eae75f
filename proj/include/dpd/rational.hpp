#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace dpd {

// Exact rational coefficients everywhere; sign errors are the dominant
// failure mode in this calculus and floating point would mask them.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline bool is_zero(const Rat& r) { return r.is_zero(); }

} // namespace dpd
