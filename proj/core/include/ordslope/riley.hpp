#pragma once

#include <vector>

#include "ordslope/chebyshev.hpp"
#include "ordslope/knot.hpp"

namespace ordslope {

// Riley polynomial machinery in the trace coordinates
//   x = (tr rho(a))^2,   y = tr rho(ab^-1)-like partner coordinate,
// through the auxiliary pair (t, z):
//   k = 2m:   t = 2 + (y+2-x)(y-2) S_{m-1}(y)^2
//             z = 1 + (y+2-x) S_{m-1}(y) (S_m(y) - S_{m-1}(y))
//   k = 2m+1: t = 2 - (y+2-x)(S_m(y) - S_{m-1}(y))^2
//             z = 1 - (y+2-x) S_m(y) (S_m(y) - S_{m-1}(y))
// and R(x, y) = S_p(t) - z S_{p-1}(t) with p the relator exponent
// (n, -n, n for even_minus / odd_plus / odd_minus).  t equals tr rho(w) at
// matched parameters, and R = 0 cuts out the nonabelian representation curve.

struct SolverConfig {
  double tol_param = 1e-13;     // absolute bisection tolerance on the variable
  double tol_residual = 1e-10;  // target |f| at the accepted root
};

struct TZ {
  double t;
  double z;
};

TZ tz_eval(const KnotSpec& spec, double x, double y);
double riley_eval(const KnotSpec& spec, double x, double y);

// |R(x,y)| divided by max(1, |S_p(t)| + |z S_{p-1}(t)|): a scale-free measure
// of how close (x, y) sits to the representation curve.
double riley_residual_normalized(const KnotSpec& spec, double x, double y);

struct CurvePoint {
  double x;
  double y;
  double t;
  double z;
  double riley_value;
};
CurvePoint curve_point(const KnotSpec& spec, double x, double y);

// Product of the two Riley factors for the even_minus family:
//   P(x,y) = (S_n(t) - z S_{n-1}(t)) (S_{n-2}(t) - z S_{n-1}(t))
//          = (y+2-x) S_{m-1}(y)^2 (t+2-x) S_{n-1}(t)^2 - 1.
// P(x,2) = (4-x)^2 m^2 n^2 - 1, and for fixed x in [4 - 1/(mn), 4] the map
// y -> P(x,y) crosses zero exactly once on [2, inf).
double p_eval(int m, int n, double x, double y);

// Inverts the even_minus curve: the unique y >= 2 with P(x, y) = 0 for
// x in [4 - 1/(mn), 4].  y(4 - 1/(mn)) = 2.
double solve_y_of_x(int m, int n, double x, const SolverConfig& cfg = {});

// Interlacing data for the odd families at height y:
//   t_roots[j-1] = t_j = 2cos(j pi / (2n+1)),            j = 1..2n
//   s_values[j]  = s_j(y) = y+2 - (2-t_j)/(S_m(y)-S_{m-1}(y))^2, s_0 = y+2.
// s is strictly decreasing in j; at x = s_j(y) the auxiliary trace t equals t_j.
struct BracketData {
  int n;
  std::vector<double> t_roots;   // size 2n
  std::vector<double> s_values;  // size 2n+1, index j = 0..2n
};
BracketData brackets(int m, int n, double y);

// The distinguished root x(y) of R(., y) for the odd families:
//   odd_plus:  x(y) in (s_{2n-1}(y), s_{2n-2}(y))
//   odd_minus: x(y) in (s_{2n-1}(y), s_{2n-3}(y)), n >= 2.
// The bracket endpoints carry opposite Riley signs for every y >= 2
// ((-1)^j R(s_{2j-1}) > 0 for odd_plus, (-1)^{j-1} R(s_{2j-1}) > 0 for
// odd_minus); a violation raises errc::internal_consistency.
double solve_x_of_y(const KnotSpec& spec, double y, const SolverConfig& cfg = {});

// Smallest y > 2 with x(y) = 4 (scan + bisection); the branch parameter
// interval for the odd families is (2, y*).
double find_y_star(const KnotSpec& spec, const SolverConfig& cfg = {});

// Diagnostic only: the odd_minus root x_0(y) above y+2.
double solve_upper_x_of_y(const KnotSpec& spec, double y, const SolverConfig& cfg = {});

}  // namespace ordslope
