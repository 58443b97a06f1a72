#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ordslope/rational.hpp"
#include "ordslope/representation.hpp"

namespace ordslope {

// One-parameter branches of elliptic representations.  Parameter is the
// meridian angle theta for the even branches and the curve height y for the
// odd ones:
//   even_low:      theta in (0, theta0)            [even_minus]
//   even_high:     theta in (pi - theta0, pi)      [even_minus]
//   odd_primary:   y in (2, y*), theta = theta(y)  [odd_plus / odd_minus]
//   odd_reflected: y in (2, y*), theta = pi - theta(y)
enum class Branch { even_low, even_high, odd_primary, odd_reflected };

const char* branch_name(Branch b);
Branch parse_branch(std::string_view name);
bool branch_matches_family(Family family, Branch branch);

struct BranchDomain {
  double lo;
  double hi;
  std::string to_string() const;
};
BranchDomain branch_domain(const KnotSpec& spec, Branch branch, const SolverConfig& cfg = {});

// Longitude rotation angle along a branch, as a continuous function of the
// parameter normalized to 0 at the reducible limit (phi -> 0 as theta ->
// theta0 on even_low, as theta -> pi - theta0 on even_high, as y -> 2 on the
// odd branches).  Computed by unwrapping arg L along the branch; the closed
// arccos expressions are available separately as a cross-check.
double phi(const KnotSpec& spec, Branch branch, double param, const SolverConfig& cfg = {});

// Closed-form phi: +-arccos(u) on the even branches and
// -+((2n-2)pi - 4n theta(y)) +- arccos(u) on the odd ones, with
// u = (2ab - (a^2+b^2)cos 2theta)/|M a - b/M|^2 over the relevant
// coefficient pair (alpha,beta or gamma,delta).
double phi_formula(const KnotSpec& spec, Branch branch, double param,
                   const SolverConfig& cfg = {});

// Surgery slope -phi/theta at the branch point (theta is the branch's own
// meridian angle, i.e. pi - theta(y) on odd_reflected).
double slope_value(const KnotSpec& spec, Branch branch, double param,
                   const SolverConfig& cfg = {});

struct SlopeSample {
  double param;
  double theta;
  double y;
  double x;
  double phi;
  double slope;
  double riley_residual;
};

struct SweepOptions {
  int grid_size = 256;    // >= 16
  double margin = 1e-6;   // relative distance kept from each open endpoint
  SolverConfig solver{};
};

// Uniform parameter grid across the branch domain (endpoints avoided by
// margin * length).  Curve solving is data-parallel (honoring the
// ORDSLOPE_THREADS cap); the phi unwrap pass is serial, so output is
// deterministic for fixed options.
std::vector<SlopeSample> sweep_branch(const KnotSpec& spec, Branch branch,
                                      const SweepOptions& opts = {});

struct ResidualBundle {
  double slope;            // |-phi/theta - p/q|
  double relation;         // relator residual at (rho_a, rho_b)
  double longitude_match;  // |L_closed - L_word|
  double peripheral_kill;  // ||rho(mu)^p rho(lambda)^q - I||_F
};

struct Tolerances {
  double slope = 1e-10;
  double relation = 1e-8;
  double longitude_match = 1e-7;
  double peripheral_kill = 1e-6;
  double curve = 1e-9;         // |R(x,y)| at accepted representation points
  double unit_modulus = 1e-10; // ||L| - 1|
  SolverConfig solver{};
};

// Everything needed to re-check a realized surgery slope from scratch.
struct SurgeryCertificate {
  KnotSpec spec;
  Rational r;
  Branch branch;
  double theta;
  double y;
  Complex L;
  double phi;
  ResidualBundle residuals;
  bool elliptic;
  bool reality;
};

// Picks the branch covering slope r for this family (r must be nonzero and
// inside the family's slope window).
Branch branch_for_slope(const KnotSpec& spec, double r);

// Finds the branch point whose slope equals r = p/q (reduced, q > 0), builds
// the representation there and returns the certificate.  Errors:
//   errc::unsupported_slope   r = 0 (0-surgery is out of scope)
//   errc::slope_not_covered   r outside the family's window
//   errc::search_failure      bracketing exhausted the refinement caps
// Deterministic and single-threaded.
SurgeryCertificate solve_slope(const KnotSpec& spec, const Rational& r,
                               const Tolerances& tol = {});

struct CheckResult {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

struct VerificationReport {
  bool ok = false;
  std::vector<CheckResult> checks;
};

// Recomputes every residual from scratch: matrices are rebuilt from the
// stored (theta, y), the longitude word is re-evaluated, mu^p lambda^q is
// formed as an explicit matrix-word power, and phi is re-unwrapped along the
// branch.  Never throws on bad certificates; failures appear as failed checks.
VerificationReport verify_certificate_report(const SurgeryCertificate& cert,
                                             const Tolerances& tol = {});
bool verify_certificate(const SurgeryCertificate& cert, const Tolerances& tol = {});

}  // namespace ordslope
