#include "ordslope/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <string>

#include "ordslope/error.hpp"

namespace ordslope {

namespace {

constexpr long long kMaxMagnitude = 1LL << 31;

long long parse_ll(std::string_view s, const char* what) {
  if (s.empty()) throw Error(errc::invalid_input, std::string("empty ") + what);
  long long value = 0;
  const char* first = s.data();
  if (*first == '+') {
    ++first;
    if (first == s.data() + s.size())
      throw Error(errc::invalid_input, std::string("bare sign in ") + what);
  }
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(errc::invalid_input,
                std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  return value;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational make_rational(long long p, long long q) {
  if (q == 0) throw Error(errc::invalid_input, "rational slope needs a nonzero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  long long g = std::gcd(p < 0 ? -p : p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (p > kMaxMagnitude || p < -kMaxMagnitude || q > kMaxMagnitude)
    throw Error(errc::invalid_input, "slope numerator/denominator magnitude exceeds 2^31");
  return Rational{p, q};
}

Rational parse_rational(std::string_view text) {
  std::string_view s = strip(text);
  if (s.empty()) throw Error(errc::invalid_input, "empty slope string");
  std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) return make_rational(parse_ll(s, "slope"), 1);
  long long p = parse_ll(strip(s.substr(0, slash)), "slope numerator");
  long long q = parse_ll(strip(s.substr(slash + 1)), "slope denominator");
  return make_rational(p, q);
}

double to_double(const Rational& r) {
  return static_cast<double>(r.p) / static_cast<double>(r.q);
}

std::string to_string(const Rational& r) {
  if (r.q == 1) return std::to_string(r.p);
  return std::to_string(r.p) + "/" + std::to_string(r.q);
}

}  // namespace ordslope
