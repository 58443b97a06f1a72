#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ordslope/error.hpp"

namespace ordslope {

// Reduced rational p/q with q > 0.  Surgery slopes are always stored in this
// normal form; |p| and q are capped at 2^31 to keep every downstream integer
// computation comfortably inside 64 bits.
struct Rational {
  long long p = 0;
  long long q = 1;
};

// Normalizes sign and divides out the gcd; rejects q == 0 and magnitudes
// above the 2^31 cap.
Rational make_rational(long long p, long long q);

// Accepts "p", "p/q", optional leading +/-, surrounding whitespace.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);
std::string to_string(const Rational& r);

}  // namespace ordslope
