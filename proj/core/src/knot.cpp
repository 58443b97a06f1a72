#include "ordslope/knot.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ordslope/error.hpp"

namespace ordslope {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long parse_int(std::string_view s, const char* what) {
  s = trim(s);
  if (s.empty()) throw Error(errc::invalid_input, std::string("empty ") + what);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(errc::invalid_input,
                std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  return value;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::even_minus: return "even_minus";
    case Family::odd_plus: return "odd_plus";
    case Family::odd_minus: return "odd_minus";
  }
  throw Error(errc::internal_consistency, "unknown family enum value");
}

Family parse_family(std::string_view name) {
  name = trim(name);
  if (name == "even_minus") return Family::even_minus;
  if (name == "odd_plus") return Family::odd_plus;
  if (name == "odd_minus") return Family::odd_minus;
  throw Error(errc::invalid_input, "unknown family name '" + std::string(name) + "'");
}

std::string KnotSpec::conway() const {
  std::ostringstream os;
  os << "C(" << k() << "," << l() << ")";
  return os.str();
}

KnotSpec make_knot_spec(Family family, int m, int n) {
  if (m < 1 || n < 1)
    throw Error(errc::invalid_input, "twist counts must satisfy m >= 1 and n >= 1");
  if (m > 1000 || n > 1000)
    throw Error(errc::invalid_input, "twist counts larger than 1000 are not supported");
  KnotSpec spec;
  spec.family = family;
  spec.m = m;
  spec.n = n;
  return spec;
}

namespace {

// Tries to match (k,l) against the supported patterns (2m,-2n), (2m+1,2n),
// (2m+1,-2n) with m,n >= 1.  Returns true and fills spec on success.
bool match_supported(long long k, long long l, KnotSpec& spec) {
  if (k % 2 == 0) {
    if (k >= 2 && l % 2 == 0 && l <= -2 && k <= 2000 && -l <= 2000) {
      spec = make_knot_spec(Family::even_minus, static_cast<int>(k / 2),
                            static_cast<int>(-l / 2));
      return true;
    }
    return false;
  }
  if (k < 3 || l % 2 != 0 || k > 2001 || std::abs(l) > 2000) return false;
  int mm = static_cast<int>((k - 1) / 2);
  if (l >= 2) {
    spec = make_knot_spec(Family::odd_plus, mm, static_cast<int>(l / 2));
    return true;
  }
  spec = make_knot_spec(Family::odd_minus, mm, static_cast<int>(-l / 2));
  return true;
}

}  // namespace

KnotSpec parse_knot_name(std::string_view name) {
  std::string_view s = trim(name);
  if (s.size() < 6 || (s[0] != 'C' && s[0] != 'c') || s[1] != '(' || s.back() != ')')
    throw Error(errc::invalid_input,
                "knot name must look like C(k,l), got '" + std::string(name) + "'");
  std::string_view inner = s.substr(2, s.size() - 3);
  std::size_t comma = inner.find(',');
  if (comma == std::string_view::npos)
    throw Error(errc::invalid_input, "knot name needs two comma-separated twist counts");
  long long k = parse_int(inner.substr(0, comma), "first twist count");
  long long l = parse_int(inner.substr(comma + 1), "second twist count");
  std::string given = "C(" + std::to_string(k) + "," + std::to_string(l) + ")";

  if (k % 2 != 0 && l % 2 != 0)
    throw Error(errc::invalid_input, given + " with both twist counts odd is a link, not a knot");
  if (std::abs(k * l) < 3)
    throw Error(errc::invalid_input, given + " is not a nontrivial double twist knot");

  KnotSpec spec;
  if (match_supported(k, l, spec)) return spec;

  // Not in a supported orientation.  C(l,k) is the same knot and C(-k,-l)
  // its mirror; report a rewrite when one of those is supported, but never
  // apply it silently (mirroring flips slope signs).
  std::string msg = given + " is outside the supported families C(2m,-2n), C(2m+1,2n), "
                            "C(2m+1,-2n) with m,n >= 1";
  KnotSpec alt;
  if (match_supported(l, k, alt))
    msg += "; it equals the supported knot " + alt.conway();
  else if (match_supported(-k, -l, alt))
    msg += "; its mirror image is the supported knot " + alt.conway() +
           " (mirroring negates slopes)";
  else if (match_supported(-l, -k, alt))
    msg += "; its mirror image is the supported knot " + alt.conway() +
           " (mirroring negates slopes)";
  throw Error(errc::unsupported_family, msg);
}

bool slope_capable(const KnotSpec& spec) {
  return spec.family != Family::odd_minus || spec.n >= 2;
}

void require_slope_capable(const KnotSpec& spec) {
  if (!slope_capable(spec))
    throw Error(errc::unsupported_family,
                spec.conway() + " (odd_minus with n = 1) has no covered slope interval");
}

std::string SlopeWindow::to_string() const {
  std::ostringstream os;
  os << "(";
  if (std::isinf(lo))
    os << "-inf";
  else
    os << lo;
  os << ", ";
  if (std::isinf(hi))
    os << "inf";
  else
    os << hi;
  os << ")";
  return os.str();
}

SlopeWindow slope_window(const KnotSpec& spec) {
  require_slope_capable(spec);
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (spec.family) {
    case Family::even_minus: return {-inf, 1.0};
    case Family::odd_plus: return {-inf, 2.0 * spec.n - 1.0};
    case Family::odd_minus: return {3.0 - 2.0 * spec.n, inf};
  }
  throw Error(errc::internal_consistency, "unknown family enum value");
}

}  // namespace ordslope
