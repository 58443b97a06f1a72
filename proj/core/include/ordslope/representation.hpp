#pragma once

#include "ordslope/knot.hpp"
#include "ordslope/matrix2.hpp"
#include "ordslope/riley.hpp"
#include "ordslope/word.hpp"

namespace ordslope {

// A parabolic-free elliptic representation of the knot group:
//   rho(a) = [[M, 1], [0, 1/M]],  rho(b) = [[M, 0], [2-y, 1/M]],
// with M = e^{i theta}, theta in (0, pi), and x = (tr rho(a))^2 = 4cos^2(theta).
// On-curve pairs (x, y) satisfy R(x, y) = 0.
struct Representation {
  KnotSpec spec;
  double theta = 0;
  Complex M;
  double y = 0;
  double x = 0;
  Matrix2C rho_a;
  Matrix2C rho_b;
};

// theta0(m, n) = arccos(sqrt(1 - 1/(4mn))): the even_minus branch endpoint.
// Admissible even_minus angles are (0, theta0) and (pi - theta0, pi).
double even_theta0(int m, int n);

// Fills in matrices from (theta, y) with no curve validation (used when
// re-checking stored certificates, which may be deliberately off-curve).
Representation assemble_representation(const KnotSpec& spec, double theta, double y);

// even_minus: y is solved from x = 4cos^2(theta); theta must lie in the
// admissible union above.  Odd families: y is recovered as the smallest
// parameter in [2, y*] whose curve point matches x = 4cos^2(theta).
// The result is validated (relation residual, Riley residual).
Representation build_representation(const KnotSpec& spec, double theta,
                                    const SolverConfig& cfg = {});

// Odd families, parameterized directly by y in (2, y*); reflected selects
// theta1 = pi - theta(y) instead of theta(y) = arccos(sqrt(x(y))/2).
Representation build_odd_representation(const KnotSpec& spec, double y, bool reflected,
                                        const SolverConfig& cfg = {});

// Longitude eigenvalue.  Closed forms (alpha = S_m(y)-S_{m-1}(y),
// beta = S_{m-1}(y)-S_{m-2}(y), gamma = S_m(y), delta = S_{m-1}(y)):
//   k = 2m:   L = -(alpha/M - M beta) / (M alpha - beta/M)
//   k = 2m+1: L = -M^{4p} (gamma/M - M delta) / (M gamma - delta/M)
// (M^{-4n} for odd_plus, M^{4n} for odd_minus).  |L| = 1 on the unit circle
// of M with real y.  Throws errc::singularity if a denominator vanishes.
Complex longitude_closed_form(const KnotSpec& spec, const Complex& M, double y);

struct LongitudeReport {
  Complex L_closed;
  Complex L_word;     // upper-left entry of the evaluated longitude word
  double lower_left;  // |lower-left| of that matrix: ~0 on-curve
  double alpha, beta, gamma, delta;
};

// Closed form plus explicit word evaluation; the word matrix must be
// near-upper-triangular (lower-left below tol_triangular), else
// errc::internal_consistency.
LongitudeReport longitude_eigenvalue(const KnotSpec& spec, const Complex& M, double y,
                                     double tol_triangular = 1e-6);

struct EllipticityReport {
  bool elliptic = false;  // conjunction of the three checks below
  bool meridian_elliptic = false;
  bool longitude_elliptic = false;
  bool commutes = false;
  double meridian_trace = 0;        // tr rho(mu) = 2cos(theta), must be in (-2, 2)
  double longitude_trace_real = 0;  // Re(L + 1/L), must be in (-2, 2)
  double commutation_residual = 0;  // ||rho(mu)rho(lambda) - rho(lambda)rho(mu)||_F
};

// Checks rho(mu), rho(lambda) generate an elliptic (non-parabolic,
// non-trivial) peripheral pair and actually commute.
EllipticityReport peripheral_ellipticity(const Representation& rep, const Complex& L,
                                         double tol_commute = 1e-8);

struct RealityReport {
  bool real_conjugate = false;  // y > 2 and all three traces real
  double y = 0;
  double trace_a_imag = 0;
  double trace_b_imag = 0;
  double trace_ab_imag = 0;
};

// The pair (rho(a), rho(b)) is conjugate into SL2(R) exactly when y > 2 and
// the traces of rho(a), rho(b), rho(ab) are all real.
RealityReport sl2r_reality_check(const Representation& rep, double tol_real = 1e-9);

}  // namespace ordslope
