#include "ordslope/riley.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bisect.hpp"
#include "ordslope/error.hpp"

namespace ordslope {

namespace {

using detail::FEval;
using detail::bisect_root;
using detail::normalized;

FEval riley_feval(const KnotSpec& spec, double x, double y) {
  TZ tz = tz_eval(spec, x, y);
  ChebPairReal ch = cheb_pair<double>(spec.twist_p(), tz.t);
  double lead = ch.s_j;
  double tail = tz.z * ch.s_jm1;
  return FEval{lead - tail, std::abs(lead) + std::abs(tail)};
}

FEval p_feval(int m, int n, double x, double y) {
  ChebPairReal chm = cheb_pair<double>(m - 1, y);
  double sm1 = chm.s_j;
  double c = y + 2.0 - x;
  double t = 2.0 + c * (y - 2.0) * sm1 * sm1;
  ChebPairReal chn = cheb_pair<double>(n - 1, t);
  double sn1 = chn.s_j;
  double prod = c * sm1 * sm1 * (t + 2.0 - x) * sn1 * sn1;
  return FEval{prod - 1.0, std::abs(prod) + 1.0};
}

void require_positive(int m, int n, const char* what) {
  if (m < 1 || n < 1)
    throw Error(errc::invalid_input, std::string(what) + " needs m >= 1 and n >= 1");
}

}  // namespace

TZ tz_eval(const KnotSpec& spec, double x, double y) {
  ChebPairReal ch = cheb_pair<double>(spec.m, y);
  const double sm = ch.s_j;
  const double sm1 = ch.s_jm1;
  const double c = y + 2.0 - x;
  if (!spec.odd()) {
    return TZ{2.0 + c * (y - 2.0) * sm1 * sm1, 1.0 + c * sm1 * (sm - sm1)};
  }
  const double d = sm - sm1;
  return TZ{2.0 - c * d * d, 1.0 - c * sm * d};
}

double riley_eval(const KnotSpec& spec, double x, double y) {
  return riley_feval(spec, x, y).value;
}

double riley_residual_normalized(const KnotSpec& spec, double x, double y) {
  return normalized(riley_feval(spec, x, y));
}

CurvePoint curve_point(const KnotSpec& spec, double x, double y) {
  TZ tz = tz_eval(spec, x, y);
  return CurvePoint{x, y, tz.t, tz.z, riley_eval(spec, x, y)};
}

double p_eval(int m, int n, double x, double y) {
  require_positive(m, n, "p_eval");
  return p_feval(m, n, x, y).value;
}

double solve_y_of_x(int m, int n, double x, const SolverConfig& cfg) {
  require_positive(m, n, "solve_y_of_x");
  const double xmin = 4.0 - 1.0 / (static_cast<double>(m) * static_cast<double>(n));
  if (!(x >= xmin - 1e-9 && x <= 4.0 + 1e-9)) {
    std::ostringstream os;
    os << "x = " << x << " is outside the covered window [" << xmin << ", 4]";
    throw Error(errc::domain, os.str());
  }
  const double xc = std::clamp(x, xmin, 4.0);
  auto fe = [&](double y) { return p_feval(m, n, xc, y); };
  FEval f2 = fe(2.0);
  if (f2.value >= 0.0) {
    // Only reachable at the left window edge, where the root is y = 2 itself.
    if (normalized(f2) > 1e-9)
      throw Error(errc::internal_consistency, "curve product fails to be <= 0 at y = 2");
    return 2.0;
  }
  double y_hi = 4.0;
  FEval fh = fe(y_hi);
  for (int guard = 0; fh.value <= 0.0; ++guard) {
    if (guard > 60)
      throw Error(errc::not_found, "no sign change of the curve product above y = 2");
    y_hi = 2.0 + 2.0 * (y_hi - 2.0);
    fh = fe(y_hi);
  }
  return bisect_root(fe, 2.0, y_hi, f2, fh, cfg, "solve_y_of_x");
}

BracketData brackets(int m, int n, double y) {
  require_positive(m, n, "brackets");
  if (!(y >= 2.0 - 1e-12))
    throw Error(errc::domain, "the interlacing ladder is defined for y >= 2");
  y = std::max(y, 2.0);
  ChebPairReal ch = cheb_pair<double>(m, y);
  const double d = ch.s_j - ch.s_jm1;  // positive for y >= 2
  const double denom = d * d;
  BracketData bd;
  bd.n = n;
  bd.t_roots.resize(static_cast<std::size_t>(2 * n));
  bd.s_values.resize(static_cast<std::size_t>(2 * n + 1));
  bd.s_values[0] = y + 2.0;
  for (int j = 1; j <= 2 * n; ++j) {
    const double tj = 2.0 * std::cos(static_cast<double>(j) * std::numbers::pi /
                                     (2.0 * static_cast<double>(n) + 1.0));
    bd.t_roots[static_cast<std::size_t>(j - 1)] = tj;
    bd.s_values[static_cast<std::size_t>(j)] = y + 2.0 - (2.0 - tj) / denom;
  }
  return bd;
}

double solve_x_of_y(const KnotSpec& spec, double y, const SolverConfig& cfg) {
  if (!spec.odd())
    throw Error(errc::invalid_input, "the distinguished root x(y) applies to odd families only");
  require_slope_capable(spec);
  if (!(y >= 2.0 - 1e-12)) throw Error(errc::domain, "x(y) is defined for y >= 2");
  const BracketData bd = brackets(spec.m, spec.n, y);
  const int n = spec.n;
  const double lo = bd.s_values[static_cast<std::size_t>(2 * n - 1)];
  const double hi = spec.family == Family::odd_plus
                        ? bd.s_values[static_cast<std::size_t>(2 * n - 2)]
                        : bd.s_values[static_cast<std::size_t>(2 * n - 3)];
  auto fe = [&](double x) { return riley_feval(spec, x, y); };
  return bisect_root(fe, lo, hi, fe(lo), fe(hi), cfg, "solve_x_of_y");
}

double find_y_star(const KnotSpec& spec, const SolverConfig& cfg) {
  if (!spec.odd())
    throw Error(errc::invalid_input, "the branch endpoint y* applies to odd families only");
  require_slope_capable(spec);
  auto fe = [&](double y) { return FEval{solve_x_of_y(spec, y, cfg) - 4.0, 1.0}; };
  double y = 2.0;
  FEval fy = fe(y);
  if (fy.value >= 0.0) throw Error(errc::internal_consistency, "x(2) must lie below 4");
  const double step = 1.0 / 64.0;
  while (true) {
    const double y_next = y + step;
    if (y_next > 64.0)
      throw Error(errc::not_found, "no elliptic endpoint with x(y) = 4 found below y = 64");
    const FEval fn = fe(y_next);
    if (fn.value >= 0.0) {
      if (fn.value == 0.0) return y_next;
      return bisect_root(fe, y, y_next, fy, fn, cfg, "find_y_star");
    }
    y = y_next;
    fy = fn;
  }
}

double solve_upper_x_of_y(const KnotSpec& spec, double y, const SolverConfig& cfg) {
  if (spec.family != Family::odd_minus)
    throw Error(errc::invalid_input, "the root above y + 2 exists for odd_minus only");
  require_slope_capable(spec);
  if (!(y >= 2.0 - 1e-12)) throw Error(errc::domain, "x_0(y) is defined for y >= 2");
  auto fe = [&](double x) { return riley_feval(spec, x, y); };
  double lo = y + 2.0;
  FEval flo = fe(lo);  // equals +1 exactly at x = y + 2
  double gap = 0.5;
  for (int guard = 0;; ++guard) {
    if (guard > 40) throw Error(errc::not_found, "no Riley root found above y + 2");
    const double hi = lo + gap;
    const FEval fhi = fe(hi);
    if (fhi.value == 0.0 || (fhi.value > 0.0) != (flo.value > 0.0))
      return bisect_root(fe, lo, hi, flo, fhi, cfg, "solve_upper_x_of_y");
    lo = hi;
    flo = fhi;
    gap *= 2.0;
  }
}

}  // namespace ordslope
