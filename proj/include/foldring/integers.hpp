#pragma once

// Exact integer scalar used throughout the library.  Every invariant the
// library computes (structure constants, determinants, Smith forms, squares
// of degree-2 classes) is an integer, and several of them grow beyond 64
// bits under iterated products, so all arithmetic is arbitrary precision.
// No floating point appears anywhere downstream of this header.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace foldring {

using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

// Largest magnitude that survives a round trip through an IEEE double; JSON
// emitters keep integers at or below this as plain numbers and switch to
// decimal strings above it.
inline const Int json_number_limit = (Int(1) << 53) - 1;

inline bool fits_json_number(const Int& v) { return abs(v) <= json_number_limit; }

inline std::string to_decimal(const Int& v) { return v.str(); }

inline Int from_decimal(const std::string& s) { return Int(s); }

} // namespace foldring
