#pragma once

#include <string>
#include <string_view>

#include "ordslope/error.hpp"

namespace ordslope {

// Supported double twist knots C(k,l), |kl| >= 3, in three families:
//   even_minus: C(2m,   -2n)
//   odd_plus:   C(2m+1,  2n)
//   odd_minus:  C(2m+1, -2n)
// with m, n >= 1.  C(2m, 2n) is outside scope, as are the forms with an odd
// second parameter (use C(k,l) = C(l,k)) and negative k (mirror C(-k,-l));
// those rewrites are reported in error messages but never applied implicitly.
enum class Family { even_minus, odd_plus, odd_minus };

const char* family_name(Family f);
Family parse_family(std::string_view name);

struct KnotSpec {
  Family family = Family::even_minus;
  int m = 1;
  int n = 1;

  int k() const { return family == Family::even_minus ? 2 * m : 2 * m + 1; }
  int l() const {
    switch (family) {
      case Family::even_minus: return -2 * n;
      case Family::odd_plus: return 2 * n;
      default: return -2 * n;
    }
  }
  // Exponent p in the presentation relator a w^p = w^p b of C(k, -2p):
  // n for the minus families, -n for odd_plus.
  int twist_p() const { return family == Family::odd_plus ? -n : n; }
  // Longitude correction exponent: 0 for even k, 2p for odd k.
  int epsilon() const { return family == Family::even_minus ? 0 : 2 * twist_p(); }
  bool odd() const { return family != Family::even_minus; }

  std::string conway() const;  // "C(k,l)"
};

// Validates m, n >= 1.
KnotSpec make_knot_spec(Family family, int m, int n);

// Parses "C(k,l)" (case-insensitive C, optional interior spaces) and maps it
// onto a supported family, throwing errc::invalid_input for non-knots
// (|kl| < 3, both parameters odd) and errc::unsupported_family for knots
// outside the three supported forms.
KnotSpec parse_knot_name(std::string_view text);

// Whether slope machinery is available: odd_minus additionally requires
// n >= 2 (with n = 1 only the polynomial-level operations apply).
bool slope_capable(const KnotSpec& spec);
void require_slope_capable(const KnotSpec& spec);

// Open interval of surgery slopes the construction covers:
//   even_minus: (-inf, 1); odd_plus: (-inf, 2n-1); odd_minus (n>=2): (3-2n, inf).
// Returned as (lo, hi) with infinities for unbounded ends.
struct SlopeWindow {
  double lo;
  double hi;
  std::string to_string() const;
};
SlopeWindow slope_window(const KnotSpec& spec);

}  // namespace ordslope
