#include "ordslope/representation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bisect.hpp"
#include "ordslope/error.hpp"

namespace ordslope {

namespace {

using detail::FEval;
using detail::bisect_root;

constexpr double kPi = std::numbers::pi;

// Sanity gate for freshly built representations: the input parameters must
// actually sit on the curve, and the relator must hold at the matrices.
// Thresholds are deliberately loose (they catch construction bugs, not
// rounding); certificate-level tolerances are enforced elsewhere.
void validate_on_curve(const Representation& rep) {
  const double riley = riley_residual_normalized(rep.spec, rep.x, rep.y);
  if (!(riley <= 1e-8)) {
    std::ostringstream os;
    os << "built representation misses the curve: normalized Riley residual " << riley;
    throw Error(errc::internal_consistency, os.str());
  }
  Presentation pres = build_presentation(rep.spec);
  Matrix2C lhs = evaluate_word(pres.relator_lhs, rep.rho_a, rep.rho_b);
  Matrix2C rhs = evaluate_word(pres.relator_rhs, rep.rho_a, rep.rho_b);
  const double dist = frobenius_distance(lhs, rhs);
  const double scale = std::max(1.0, lhs.frobenius_norm() + rhs.frobenius_norm());
  if (!(dist <= 1e-6 * scale)) {
    std::ostringstream os;
    os << "built representation violates the relator: residual " << dist;
    throw Error(errc::internal_consistency, os.str());
  }
}

}  // namespace

double even_theta0(int m, int n) {
  if (m < 1 || n < 1) throw Error(errc::invalid_input, "theta0 needs m >= 1 and n >= 1");
  return std::acos(std::sqrt(1.0 - 1.0 / (4.0 * static_cast<double>(m) * n)));
}

Representation assemble_representation(const KnotSpec& spec, double theta, double y) {
  Representation rep;
  rep.spec = spec;
  rep.theta = theta;
  rep.M = std::polar(1.0, theta);
  rep.y = y;
  const double c = std::cos(theta);
  rep.x = 4.0 * c * c;
  rep.rho_a = meridian_matrix(rep.M);
  rep.rho_b = partner_matrix(rep.M, y);
  return rep;
}

Representation build_representation(const KnotSpec& spec, double theta, const SolverConfig& cfg) {
  if (!(theta > 0.0 && theta < kPi))
    throw Error(errc::domain, "theta must lie strictly inside (0, pi)");
  if (!spec.odd()) {
    const double th0 = even_theta0(spec.m, spec.n);
    if (!(theta < th0 || theta > kPi - th0)) {
      std::ostringstream os;
      os << "theta = " << theta << " is outside the admissible union (0, " << th0 << ") u ("
         << kPi - th0 << ", pi)";
      throw Error(errc::domain, os.str());
    }
    const double c = std::cos(theta);
    const double y = solve_y_of_x(spec.m, spec.n, 4.0 * c * c, cfg);
    Representation rep = assemble_representation(spec, theta, y);
    validate_on_curve(rep);
    return rep;
  }
  require_slope_capable(spec);
  const double c = std::cos(theta);
  const double x_target = 4.0 * c * c;
  const double y_star = find_y_star(spec, cfg);
  auto fe = [&](double y) { return FEval{solve_x_of_y(spec, y, cfg) - x_target, 1.0}; };
  // Smallest y in [2, y*] whose curve point matches x_target.
  constexpr int kScan = 512;
  double y_prev = 2.0;
  FEval f_prev = fe(y_prev);
  double y_found = -1.0;
  if (f_prev.value == 0.0) y_found = y_prev;
  for (int i = 1; i <= kScan && y_found < 0.0; ++i) {
    const double y_i = 2.0 + (y_star - 2.0) * static_cast<double>(i) / kScan;
    const FEval f_i = fe(y_i);
    if (f_i.value == 0.0) {
      y_found = y_i;
      break;
    }
    if ((f_i.value > 0.0) != (f_prev.value > 0.0)) {
      y_found = bisect_root(fe, y_prev, y_i, f_prev, f_i, cfg, "build_representation");
      break;
    }
    y_prev = y_i;
    f_prev = f_i;
  }
  if (y_found < 0.0) {
    std::ostringstream os;
    os << "x = " << x_target << " is not attained on the elliptic section (theta = " << theta
       << ")";
    throw Error(errc::not_found, os.str());
  }
  Representation rep = assemble_representation(spec, theta, y_found);
  validate_on_curve(rep);
  return rep;
}

Representation build_odd_representation(const KnotSpec& spec, double y, bool reflected,
                                        const SolverConfig& cfg) {
  if (!spec.odd())
    throw Error(errc::invalid_input, "parameterization by y applies to the odd families only");
  require_slope_capable(spec);
  if (!(y >= 2.0)) throw Error(errc::domain, "y must be >= 2");
  const double x = solve_x_of_y(spec, y, cfg);
  if (x > 4.0) {
    std::ostringstream os;
    os << "y = " << y << " lies beyond the elliptic endpoint (x(y) = " << x << " > 4)";
    throw Error(errc::domain, os.str());
  }
  if (x < 0.0)
    throw Error(errc::internal_consistency, "distinguished root fell below 0");
  double theta = std::acos(std::sqrt(x) / 2.0);
  if (reflected) theta = kPi - theta;
  Representation rep = assemble_representation(spec, theta, y);
  validate_on_curve(rep);
  return rep;
}

Complex longitude_closed_form(const KnotSpec& spec, const Complex& M, double y) {
  ChebPairReal ch = cheb_pair<double>(spec.m, y);
  const double sm = ch.s_j;
  const double sm1 = ch.s_jm1;
  if (!spec.odd()) {
    const double smm2 = y * sm1 - sm;  // downward recurrence for S_{m-2}
    const double alpha = sm - sm1;
    const double beta = sm1 - smm2;
    const Complex den = M * alpha - beta / M;
    if (std::abs(den) < 1e-250)
      throw Error(errc::singularity, "longitude eigenvalue denominator vanished");
    return -(alpha / M - M * beta) / den;
  }
  const double gamma = sm;
  const double delta = sm1;
  const Complex den = M * gamma - delta / M;
  if (std::abs(den) < 1e-250)
    throw Error(errc::singularity, "longitude eigenvalue denominator vanished");
  return -complex_pow(M, 4LL * spec.twist_p()) * (gamma / M - M * delta) / den;
}

LongitudeReport longitude_eigenvalue(const KnotSpec& spec, const Complex& M, double y,
                                     double tol_triangular) {
  LongitudeReport report{};
  ChebPairReal ch = cheb_pair<double>(spec.m, y);
  const double sm = ch.s_j;
  const double sm1 = ch.s_jm1;
  const double smm2 = y * sm1 - sm;
  report.alpha = sm - sm1;
  report.beta = sm1 - smm2;
  report.gamma = sm;
  report.delta = sm1;
  report.L_closed = longitude_closed_form(spec, M, y);
  Presentation pres = build_presentation(spec);
  Matrix2C lam = evaluate_word(pres.longitude, meridian_matrix(M), partner_matrix(M, y));
  report.L_word = lam.a;
  report.lower_left = std::abs(lam.c);
  if (!(report.lower_left <= tol_triangular)) {
    std::ostringstream os;
    os << "longitude matrix is not upper triangular (lower-left " << report.lower_left
       << "): parameters are off the representation curve";
    throw Error(errc::internal_consistency, os.str());
  }
  return report;
}

EllipticityReport peripheral_ellipticity(const Representation& rep, const Complex& L,
                                         double tol_commute) {
  EllipticityReport out{};
  Presentation pres = build_presentation(rep.spec);
  Matrix2C lam = evaluate_word(pres.longitude, rep.rho_a, rep.rho_b);
  out.meridian_trace = rep.rho_a.trace().real();
  out.meridian_elliptic = std::abs(out.meridian_trace) < 2.0;
  const Complex lt = L + 1.0 / L;
  out.longitude_trace_real = lt.real();
  out.longitude_elliptic = std::abs(out.longitude_trace_real) < 2.0;
  out.commutation_residual = frobenius_distance(rep.rho_a * lam, lam * rep.rho_a);
  out.commutes = out.commutation_residual <= tol_commute;
  out.elliptic = out.meridian_elliptic && out.longitude_elliptic && out.commutes;
  return out;
}

RealityReport sl2r_reality_check(const Representation& rep, double tol_real) {
  RealityReport out{};
  out.y = rep.y;
  out.trace_a_imag = std::abs(rep.rho_a.trace().imag());
  out.trace_b_imag = std::abs(rep.rho_b.trace().imag());
  out.trace_ab_imag = std::abs((rep.rho_a * rep.rho_b).trace().imag());
  out.real_conjugate = rep.y > 2.0 && out.trace_a_imag <= tol_real &&
                       out.trace_b_imag <= tol_real && out.trace_ab_imag <= tol_real;
  return out;
}

}  // namespace ordslope
