#include "ordslope/slopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "bisect.hpp"
#include "ordslope/error.hpp"
#include "ordslope/word.hpp"
#include "parallel.hpp"

namespace ordslope {

namespace {

using detail::FEval;
using detail::bisect_root;

constexpr double kPi = std::numbers::pi;

bool is_even_branch(Branch b) { return b == Branch::even_low || b == Branch::even_high; }

// Everything the slope machinery needs at a single branch parameter.
struct BranchPoint {
  double param;
  double theta;  // branch angle (pi - theta(y) on odd_reflected)
  double y;
  double x;
  Complex L;
  double riley;
};

BranchPoint eval_point(const KnotSpec& spec, Branch branch, double param,
                       const SolverConfig& cfg) {
  BranchPoint bp;
  bp.param = param;
  if (is_even_branch(branch)) {
    bp.theta = param;
    const double c = std::cos(param);
    bp.x = 4.0 * c * c;
    bp.y = solve_y_of_x(spec.m, spec.n, bp.x, cfg);
  } else {
    bp.y = param;
    double x = solve_x_of_y(spec, param, cfg);
    if (x > 4.0 + 1e-9) {
      std::ostringstream os;
      os << "y = " << param << " lies beyond the elliptic endpoint (x(y) = " << x << " > 4)";
      throw Error(errc::domain, os.str());
    }
    bp.x = std::min(x, 4.0);
    const double th = std::acos(std::sqrt(bp.x) / 2.0);
    bp.theta = branch == Branch::odd_reflected ? kPi - th : th;
  }
  bp.L = longitude_closed_form(spec, std::polar(1.0, bp.theta), bp.y);
  bp.riley = std::abs(riley_eval(spec, bp.x, bp.y));
  return bp;
}

// Principal argument of L is already the continuous phase on the even
// branches (it stays inside (0, pi) on even_low and (-pi, 0) on even_high);
// the fixups only guard against rounding across the +-pi cut at the ends.
double even_principal_phase(Branch branch, const Complex& L) {
  double a = std::arg(L);
  if (branch == Branch::even_low && a < -kPi / 2.0) a += 2.0 * kPi;
  if (branch == Branch::even_high && a > kPi / 2.0) a -= 2.0 * kPi;
  return a;
}

// Extends a continuous phase from (p_from, L_from, phi_from) to p_to by
// recursive interval halving.  A principal-argument step below pi/2 is only
// trusted once depth >= min_depth: the principal value is blind to whole
// turns, so the interval must first be split finely enough that no piece can
// hide 3*pi/2 of true variation.  Callers size min_depth so the initial
// segments meet that bound; below it, |step| < pi/2 implies the step is the
// true phase change.
double unwrap_extend(const KnotSpec& spec, Branch branch, const SolverConfig& cfg, double p_from,
                     const Complex& L_from, double phi_from, double p_to, const Complex& L_to,
                     int depth, int min_depth) {
  const double step = std::arg(L_to / L_from);
  if (depth >= min_depth && std::abs(step) < kPi / 2.0) return phi_from + step;
  if (depth >= 48)
    throw Error(errc::internal_consistency, "phase unwrap exceeded its refinement budget");
  const double mid = 0.5 * (p_from + p_to);
  if (mid == p_from || mid == p_to) {
    if (std::abs(step) < kPi / 2.0) return phi_from + step;  // parameter exhausted, step is tame
    throw Error(errc::internal_consistency,
                "phase unwrap hit a parameter step it cannot split further");
  }
  const BranchPoint bp = eval_point(spec, branch, mid, cfg);
  const double phi_mid = unwrap_extend(spec, branch, cfg, p_from, L_from, phi_from, mid, bp.L,
                                       depth + 1, min_depth);
  return unwrap_extend(spec, branch, cfg, mid, bp.L, phi_mid, p_to, L_to, depth + 1, min_depth);
}

// Depth that cuts one hop into enough pieces that `hops` hops spanning a
// branch domain are resolved by at least 256 initial segments in total.
int hop_min_depth(int hops) {
  int depth = 0;
  while ((static_cast<long long>(hops) << depth) < 256 && depth < 16) ++depth;
  return depth;
}

void require_branch(const KnotSpec& spec, Branch branch) {
  if (!branch_matches_family(spec.family, branch)) {
    std::ostringstream os;
    os << "branch " << branch_name(branch) << " does not belong to family "
       << family_name(spec.family);
    throw Error(errc::invalid_input, os.str());
  }
}

void require_even_param(const KnotSpec& spec, Branch branch, double param) {
  const double th0 = even_theta0(spec.m, spec.n);
  const bool ok = branch == Branch::even_low ? (param > 0.0 && param <= th0 + 1e-9)
                                             : (param >= kPi - th0 - 1e-9 && param < kPi);
  if (!ok) {
    std::ostringstream os;
    os << "theta = " << param << " is outside branch " << branch_name(branch) << " = "
       << (branch == Branch::even_low ? BranchDomain{0.0, th0} : BranchDomain{kPi - th0, kPi})
              .to_string();
    throw Error(errc::domain, os.str());
  }
}

// Closed-form continuous phase at a resolved branch point.  u is the cosine
// of the principal part, computed from the longitude eigenvalue numerator
// and denominator coefficients.
double formula_phi_at(const KnotSpec& spec, Branch branch, double theta, double y) {
  ChebPairReal ch = cheb_pair<double>(spec.m, y);
  const double sm = ch.s_j;
  const double sm1 = ch.s_jm1;
  const Complex M = std::polar(1.0, theta);
  if (is_even_branch(branch)) {
    const double alpha = sm - sm1;
    const double beta = sm1 - (y * sm1 - sm);
    const double den = std::norm(M * alpha - beta / M);
    const double u = std::clamp(
        (2.0 * alpha * beta - (alpha * alpha + beta * beta) * std::cos(2.0 * theta)) / den, -1.0,
        1.0);
    return branch == Branch::even_low ? std::acos(u) : -std::acos(u);
  }
  const double gamma = sm;
  const double delta = sm1;
  const double den = std::norm(M * gamma - delta / M);
  const double u = std::clamp(
      (2.0 * gamma * delta - (gamma * gamma + delta * delta) * std::cos(2.0 * theta)) / den, -1.0,
      1.0);
  const double ac = std::acos(u);
  const double th = branch == Branch::odd_reflected ? kPi - theta : theta;
  const double wind = (2.0 * spec.n - 2.0) * kPi;
  const double swing = 4.0 * spec.n * th;
  if (spec.family == Family::odd_plus)
    return branch == Branch::odd_primary ? wind - swing + ac : -wind + swing - ac;
  return branch == Branch::odd_primary ? -wind + swing + ac : wind - swing - ac;
}

}  // namespace

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::even_low: return "even_low";
    case Branch::even_high: return "even_high";
    case Branch::odd_primary: return "odd_primary";
    case Branch::odd_reflected: return "odd_reflected";
  }
  throw Error(errc::internal_consistency, "unknown branch enum value");
}

Branch parse_branch(std::string_view name) {
  if (name == "even_low") return Branch::even_low;
  if (name == "even_high") return Branch::even_high;
  if (name == "odd_primary") return Branch::odd_primary;
  if (name == "odd_reflected") return Branch::odd_reflected;
  throw Error(errc::invalid_input, "unknown branch name '" + std::string(name) + "'");
}

bool branch_matches_family(Family family, Branch branch) {
  return is_even_branch(branch) == (family == Family::even_minus);
}

BranchDomain branch_domain(const KnotSpec& spec, Branch branch, const SolverConfig& cfg) {
  require_branch(spec, branch);
  if (is_even_branch(branch)) {
    const double th0 = even_theta0(spec.m, spec.n);
    return branch == Branch::even_low ? BranchDomain{0.0, th0} : BranchDomain{kPi - th0, kPi};
  }
  require_slope_capable(spec);
  return BranchDomain{2.0, find_y_star(spec, cfg)};
}

std::string BranchDomain::to_string() const {
  std::ostringstream os;
  os << "(" << lo << ", " << hi << ")";
  return os.str();
}

double phi(const KnotSpec& spec, Branch branch, double param, const SolverConfig& cfg) {
  require_branch(spec, branch);
  if (is_even_branch(branch)) {
    require_even_param(spec, branch, param);
    return even_principal_phase(branch, eval_point(spec, branch, param, cfg).L);
  }
  require_slope_capable(spec);
  if (!(param >= 2.0)) throw Error(errc::domain, "the odd branch parameter satisfies y >= 2");
  const BranchPoint anchor = eval_point(spec, branch, 2.0, cfg);
  const double phi0 = std::arg(anchor.L);
  if (!(std::abs(phi0) < kPi / 2.0))
    throw Error(errc::internal_consistency, "reducible-end phase anchor failed to vanish");
  if (param == 2.0) return phi0;
  const BranchPoint target = eval_point(spec, branch, param, cfg);
  return unwrap_extend(spec, branch, cfg, 2.0, anchor.L, phi0, param, target.L, 0,
                       hop_min_depth(1));
}

double phi_formula(const KnotSpec& spec, Branch branch, double param, const SolverConfig& cfg) {
  require_branch(spec, branch);
  if (is_even_branch(branch)) require_even_param(spec, branch, param);
  const BranchPoint bp = eval_point(spec, branch, param, cfg);
  return formula_phi_at(spec, branch, bp.theta, bp.y);
}

double slope_value(const KnotSpec& spec, Branch branch, double param, const SolverConfig& cfg) {
  require_branch(spec, branch);
  if (is_even_branch(branch)) require_even_param(spec, branch, param);
  const BranchPoint bp = eval_point(spec, branch, param, cfg);
  return -formula_phi_at(spec, branch, bp.theta, bp.y) / bp.theta;
}

std::vector<SlopeSample> sweep_branch(const KnotSpec& spec, Branch branch,
                                      const SweepOptions& opts) {
  require_branch(spec, branch);
  if (opts.grid_size < 16)
    throw Error(errc::invalid_input, "sweep grid needs at least 16 points");
  if (!(opts.margin > 0.0 && opts.margin < 0.5))
    throw Error(errc::invalid_input, "sweep margin must lie in (0, 0.5)");
  const BranchDomain dom = branch_domain(spec, branch, opts.solver);
  const double lo = dom.lo + opts.margin * (dom.hi - dom.lo);
  const double hi = dom.hi - opts.margin * (dom.hi - dom.lo);
  const int count = opts.grid_size;

  std::vector<BranchPoint> pts(static_cast<std::size_t>(count));
  detail::parallel_for(count, [&](int i) {
    const double t = static_cast<double>(i) / (count - 1);
    pts[static_cast<std::size_t>(i)] = eval_point(spec, branch, lo + t * (hi - lo), opts.solver);
  });

  // Serial phase pass: principal values on the even branches, anchored
  // unwrapping from the reducible end on the odd ones.
  std::vector<double> phis(static_cast<std::size_t>(count));
  if (is_even_branch(branch)) {
    for (int i = 0; i < count; ++i)
      phis[static_cast<std::size_t>(i)] = even_principal_phase(branch, pts[i].L);
  } else {
    const BranchPoint anchor = eval_point(spec, branch, 2.0, opts.solver);
    double acc = std::arg(anchor.L);
    double p_prev = 2.0;
    Complex l_prev = anchor.L;
    const int per_hop = hop_min_depth(count);
    for (int i = 0; i < count; ++i) {
      // The anchor hop covers margin * range in one go, so it gets its own
      // subdivision floor independent of the grid density.
      acc = unwrap_extend(spec, branch, opts.solver, p_prev, l_prev, acc, pts[i].param, pts[i].L,
                          0, i == 0 ? std::max(per_hop, 6) : per_hop);
      p_prev = pts[i].param;
      l_prev = pts[i].L;
      phis[static_cast<std::size_t>(i)] = acc;
    }
  }

  std::vector<SlopeSample> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const BranchPoint& bp = pts[static_cast<std::size_t>(i)];
    const double ph = phis[static_cast<std::size_t>(i)];
    const double closed = formula_phi_at(spec, branch, bp.theta, bp.y);
    if (!(std::abs(closed - ph) <= 1e-6 * std::max(1.0, std::abs(closed)))) {
      std::ostringstream os;
      os << "closed-form phase " << closed << " disagrees with unwrapped phase " << ph
         << " at param " << bp.param;
      throw Error(errc::internal_consistency, os.str());
    }
    out[static_cast<std::size_t>(i)] =
        SlopeSample{bp.param, bp.theta, bp.y, bp.x, ph, -ph / bp.theta, bp.riley};
  }
  return out;
}

Branch branch_for_slope(const KnotSpec& spec, double r) {
  if (r == 0.0)
    throw Error(errc::unsupported_slope,
                "0-surgery is handled by other methods and is not covered here");
  const SlopeWindow win = slope_window(spec);
  if (!(r > win.lo && r < win.hi)) {
    std::ostringstream os;
    os << "slope " << r << " is outside the covered interval " << win.to_string() << " for "
       << spec.conway();
    throw Error(errc::slope_not_covered, os.str());
  }
  switch (spec.family) {
    case Family::even_minus: return r < 0.0 ? Branch::even_low : Branch::even_high;
    case Family::odd_plus: return r < 0.0 ? Branch::odd_primary : Branch::odd_reflected;
    case Family::odd_minus: return r < 0.0 ? Branch::odd_reflected : Branch::odd_primary;
  }
  throw Error(errc::internal_consistency, "unknown family enum value");
}

SurgeryCertificate solve_slope(const KnotSpec& spec, const Rational& r_in, const Tolerances& tol) {
  const Rational r = make_rational(r_in.p, r_in.q);
  if (r.p == 0)
    throw Error(errc::unsupported_slope,
                "0-surgery is handled by other methods and is not covered here");
  const double rv = to_double(r);
  const SlopeWindow win = slope_window(spec);
  if (!(rv > win.lo && rv < win.hi)) {
    std::ostringstream os;
    os << "slope " << to_string(r) << " is outside the covered interval " << win.to_string()
       << " for " << spec.conway();
    throw Error(errc::slope_not_covered, os.str());
  }
  const Branch branch = branch_for_slope(spec, rv);
  const BranchDomain dom = branch_domain(spec, branch, tol.solver);
  const double span = dom.hi - dom.lo;

  auto fe = [&](double param) -> FEval {
    const BranchPoint bp = eval_point(spec, branch, param, tol.solver);
    return FEval{-formula_phi_at(spec, branch, bp.theta, bp.y) / bp.theta - rv, 1.0};
  };

  // Bisect tighter than the certificate gate so recomputation noise in
  // verification cannot flip a passing residual.
  SolverConfig bis = tol.solver;
  bis.tol_residual = 0.5 * tol.slope;

  double root = std::numeric_limits<double>::quiet_NaN();
  bool found = false;
  double best_miss = std::numeric_limits<double>::infinity();
  const int levels[] = {64, 256, 1024, 4096, 16384, 65536};
  for (int level : levels) {
    // Uniform grid plus geometric tails toward both (open) endpoints, where
    // the slope diverges or flattens.
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(level) + 81);
    for (int i = 1; i < level; ++i)
      params.push_back(dom.lo + span * static_cast<double>(i) / level);
    for (int k = 1; k <= 40; ++k) {
      const double off = span * std::ldexp(1.0, -k);
      params.push_back(dom.lo + off);
      params.push_back(dom.hi - off);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    std::vector<FEval> vals;
    vals.reserve(params.size());
    for (double p : params) {
      FEval v = fe(p);
      best_miss = std::min(best_miss, std::abs(v.value));
      vals.push_back(v);
    }
    for (std::size_t i = 0; i < params.size() && !found; ++i) {
      if (vals[i].value == 0.0) {
        root = params[i];
        found = true;
        break;
      }
      if (i + 1 < params.size() && (vals[i].value > 0.0) != (vals[i + 1].value > 0.0)) {
        root = bisect_root(fe, params[i], params[i + 1], vals[i], vals[i + 1], bis,
                           "solve_slope");
        found = true;
      }
    }
    if (found) break;
  }
  if (!found) {
    std::ostringstream os;
    os << "no parameter on branch " << branch_name(branch) << " realizes slope " << to_string(r)
       << " (closest miss " << best_miss << ")";
    throw Error(errc::search_failure, os.str());
  }

  const Representation rep =
      is_even_branch(branch)
          ? build_representation(spec, root, tol.solver)
          : build_odd_representation(spec, root, branch == Branch::odd_reflected, tol.solver);
  const double phi_val = formula_phi_at(spec, branch, rep.theta, rep.y);
  const LongitudeReport lrep = longitude_eigenvalue(spec, rep.M, rep.y);
  const Presentation pres = build_presentation(spec);
  const Matrix2C lam = evaluate_word(pres.longitude, rep.rho_a, rep.rho_b);
  const Matrix2C killer = rep.rho_a.pow(r.p) * lam.pow(r.q);

  ResidualBundle res;
  res.slope = std::abs(-phi_val / rep.theta - rv);
  res.relation = relation_residual(spec, rep.rho_a, rep.rho_b);
  res.longitude_match = std::abs(lrep.L_closed - lrep.L_word);
  res.peripheral_kill = frobenius_distance(killer, Matrix2C::identity());

  const EllipticityReport ell = peripheral_ellipticity(rep, lrep.L_closed);
  const RealityReport reality = sl2r_reality_check(rep);

  if (res.slope > tol.slope) {
    std::ostringstream os;
    os << "slope residual " << res.slope << " exceeds tolerance " << tol.slope;
    throw Error(errc::search_failure, os.str());
  }
  if (res.relation > tol.relation || res.longitude_match > tol.longitude_match ||
      res.peripheral_kill > tol.peripheral_kill || !ell.elliptic || !reality.real_conjugate) {
    std::ostringstream os;
    os << "certificate residuals failed their gates (relation " << res.relation
       << ", longitude_match " << res.longitude_match << ", peripheral_kill "
       << res.peripheral_kill << ", elliptic " << ell.elliptic << ", reality "
       << reality.real_conjugate << ")";
    throw Error(errc::internal_consistency, os.str());
  }

  SurgeryCertificate cert;
  cert.spec = spec;
  cert.r = r;
  cert.branch = branch;
  cert.theta = rep.theta;
  cert.y = rep.y;
  cert.L = lrep.L_closed;
  cert.phi = phi_val;
  cert.residuals = res;
  cert.elliptic = ell.elliptic;
  cert.reality = reality.real_conjugate;
  return cert;
}

namespace {

template <class Fn>
void run_check(std::vector<CheckResult>& out, const std::string& name, double tolerance,
               Fn&& fn) {
  CheckResult cr{name, std::numeric_limits<double>::quiet_NaN(), tolerance, false};
  try {
    cr.value = fn();
    cr.pass = cr.value <= tolerance;
  } catch (const std::exception&) {
    cr.pass = false;
  }
  out.push_back(cr);
}

}  // namespace

VerificationReport verify_certificate_report(const SurgeryCertificate& cert,
                                             const Tolerances& tol) {
  VerificationReport report;
  const KnotSpec& spec = cert.spec;
  const double rv = static_cast<double>(cert.r.p) / static_cast<double>(cert.r.q);
  const bool even = is_even_branch(cert.branch);
  const double c = std::cos(cert.theta);
  const double x = 4.0 * c * c;
  const double param = even ? cert.theta : cert.y;

  run_check(report.checks, "rational_reduced", 0.5, [&] {
    const long long p = cert.r.p < 0 ? -cert.r.p : cert.r.p;
    return (cert.r.q >= 1 && cert.r.p != 0 && std::gcd(p, cert.r.q) == 1) ? 0.0 : 1.0;
  });
  run_check(report.checks, "slope_in_window", 0.5, [&] {
    const SlopeWindow win = slope_window(spec);
    return (rv > win.lo && rv < win.hi) ? 0.0 : 1.0;
  });
  run_check(report.checks, "branch_matches_family", 0.5, [&] {
    return branch_matches_family(spec.family, cert.branch) ? 0.0 : 1.0;
  });
  run_check(report.checks, "branch_covers_slope_sign", 0.5, [&] {
    return branch_for_slope(spec, rv) == cert.branch ? 0.0 : 1.0;
  });
  run_check(report.checks, "param_in_branch_domain", 0.5, [&] {
    const BranchDomain dom = branch_domain(spec, cert.branch, tol.solver);
    return (param > dom.lo - 1e-9 && param < dom.hi + 1e-9) ? 0.0 : 1.0;
  });
  run_check(report.checks, "curve_membership", tol.curve,
            [&] { return riley_residual_normalized(spec, x, cert.y); });
  if (!even) {
    run_check(report.checks, "theta_matches_curve", tol.curve, [&] {
      return std::abs(x - std::min(solve_x_of_y(spec, cert.y, tol.solver), 4.0));
    });
  }
  run_check(report.checks, "relation", tol.relation, [&] {
    const Representation rep = assemble_representation(spec, cert.theta, cert.y);
    return relation_residual(spec, rep.rho_a, rep.rho_b);
  });
  run_check(report.checks, "longitude_unit_modulus", tol.unit_modulus, [&] {
    const Complex L = longitude_closed_form(spec, std::polar(1.0, cert.theta), cert.y);
    return std::abs(std::abs(L) - 1.0);
  });
  run_check(report.checks, "longitude_stored_value", tol.longitude_match, [&] {
    const Complex L = longitude_closed_form(spec, std::polar(1.0, cert.theta), cert.y);
    return std::abs(L - cert.L);
  });
  run_check(report.checks, "longitude_word_match", tol.longitude_match, [&] {
    const LongitudeReport lrep =
        longitude_eigenvalue(spec, std::polar(1.0, cert.theta), cert.y);
    return std::abs(lrep.L_closed - lrep.L_word);
  });

  // The unwrapped phase is recomputed independently of the closed form the
  // certificate was built with.
  std::optional<double> phi_re;
  auto phi_once = [&]() -> double {
    if (!phi_re) phi_re = phi(spec, cert.branch, param, tol.solver);
    return *phi_re;
  };
  run_check(report.checks, "phi_recomputed", 1e-8, [&] { return std::abs(phi_once() - cert.phi); });
  run_check(report.checks, "slope_residual", tol.slope,
            [&] { return std::abs(-phi_once() / cert.theta - rv); });

  run_check(report.checks, "peripheral_kill", tol.peripheral_kill, [&] {
    const Representation rep = assemble_representation(spec, cert.theta, cert.y);
    const Presentation pres = build_presentation(spec);
    const Matrix2C lam = evaluate_word(pres.longitude, rep.rho_a, rep.rho_b);
    const Matrix2C killer = rep.rho_a.pow(cert.r.p) * lam.pow(cert.r.q);
    return frobenius_distance(killer, Matrix2C::identity());
  });
  run_check(report.checks, "eigenvalue_kill", 1e-9, [&] {
    const Complex M = std::polar(1.0, cert.theta);
    const Complex L = longitude_closed_form(spec, M, cert.y);
    return std::abs(complex_pow(M, cert.r.p) * complex_pow(L, cert.r.q) - 1.0);
  });
  run_check(report.checks, "peripheral_elliptic", 0.5, [&] {
    const Representation rep = assemble_representation(spec, cert.theta, cert.y);
    const Complex L = longitude_closed_form(spec, rep.M, cert.y);
    return peripheral_ellipticity(rep, L).elliptic ? 0.0 : 1.0;
  });
  run_check(report.checks, "reality", 0.5, [&] {
    const Representation rep = assemble_representation(spec, cert.theta, cert.y);
    return sl2r_reality_check(rep).real_conjugate ? 0.0 : 1.0;
  });

  report.ok = std::all_of(report.checks.begin(), report.checks.end(),
                          [](const CheckResult& cr) { return cr.pass; });
  return report;
}

bool verify_certificate(const SurgeryCertificate& cert, const Tolerances& tol) {
  return verify_certificate_report(cert, tol).ok;
}

}  // namespace ordslope
