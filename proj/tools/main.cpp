// ordslope command line tool: certify surgery slopes on double twist knots,
// tabulate representation branches for plotting, and self-test the library.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ordslope/chebyshev.hpp"
#include "ordslope/representation.hpp"
#include "ordslope/riley.hpp"
#include "ordslope/serialize.hpp"
#include "ordslope/slopes.hpp"
#include "ordslope/word.hpp"

namespace {

using namespace ordslope;

int exit_code_for(errc code) {
  switch (code) {
    case errc::invalid_input:
    case errc::unsupported_family:
      return 1;
    case errc::unsupported_slope:
    case errc::slope_not_covered:
      return 2;
    default:
      return 3;
  }
}

void write_payload(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(errc::io, "cannot open " + path + " for writing");
  file << payload;
  file.flush();
  if (!file) throw Error(errc::io, "write to " + path + " failed");
  std::cout << "wrote " << path << "\n";
}

// ---------------------------------------------------------------- certify

int run_certify(const std::string& knot, const std::string& slope, const std::string& out,
                const SolverConfig& cfg) {
  const KnotSpec spec = parse_knot_name(knot);
  const Rational r = parse_rational(slope);
  Tolerances tol;
  tol.solver = cfg;
  const SurgeryCertificate cert = solve_slope(spec, r, tol);
  const VerificationReport report = verify_certificate_report(cert, tol);
  write_payload(out, certificate_to_json(cert));
  if (!report.ok) {
    std::cerr << "error: certificate failed independent re-verification\n";
    for (const CheckResult& check : report.checks)
      if (!check.pass)
        std::cerr << "  " << check.name << ": " << check.value << " exceeds " << check.tolerance
                  << "\n";
    return 3;
  }
  return 0;
}

// ------------------------------------------------------------------ sweep

int run_sweep(const std::string& knot, const std::string& branch_text, int grid,
              const std::string& format, const std::string& out, const SolverConfig& cfg) {
  const KnotSpec spec = parse_knot_name(knot);
  SweepOptions opts;
  opts.grid_size = grid;
  opts.solver = cfg;

  std::vector<Branch> branches;
  if (branch_text == "all") {
    branches = spec.odd() ? std::vector<Branch>{Branch::odd_primary, Branch::odd_reflected}
                          : std::vector<Branch>{Branch::even_low, Branch::even_high};
  } else {
    const Branch branch = parse_branch(branch_text);
    if (!branch_matches_family(spec.family, branch))
      throw Error(errc::invalid_input, "branch " + std::string(branch_name(branch)) +
                                           " does not exist on " + spec.conway());
    branches = {branch};
  }

  if (format == "json") {
    if (branches.size() != 1)
      throw Error(errc::invalid_input, "JSON sweeps cover one branch; pass an explicit --branch");
    write_payload(out, sweep_to_json(spec, branches.front(),
                                     sweep_branch(spec, branches.front(), opts)));
    return 0;
  }
  std::vector<SlopeSample> rows;
  for (Branch branch : branches) {
    const std::vector<SlopeSample> part = sweep_branch(spec, branch, opts);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  write_payload(out, sweep_to_csv(rows));
  return 0;
}

// --------------------------------------------------------------- selftest

struct SelfCheck {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

template <class Fn>
void run_self_check(std::vector<SelfCheck>& rows, const std::string& name, double tolerance,
                    Fn&& fn) {
  SelfCheck row;
  row.name = name;
  row.tolerance = tolerance;
  try {
    row.value = fn();
    row.pass = std::isfinite(row.value) && row.value <= tolerance;
  } catch (const std::exception& e) {
    row.value = std::numeric_limits<double>::quiet_NaN();
    row.note = e.what();
  }
  rows.push_back(row);
}

std::vector<KnotSpec> smoke_specs() {
  std::vector<KnotSpec> specs;
  for (Family family : {Family::even_minus, Family::odd_plus, Family::odd_minus})
    for (auto [m, n] : {std::pair(1, 1), std::pair(1, 2), std::pair(2, 2)})
      specs.push_back(make_knot_spec(family, m, n));
  return specs;
}

double worst_cheb_identity() {
  double worst = 0;
  for (long long j = -20; j <= 20; ++j) {
    for (double v = -3.0; v <= 3.0 + 1e-9; v += 0.25) {
      const ChebPairReal p = cheb_pair<double>(j, v);
      const double lhs = p.s_j * p.s_j - v * p.s_j * p.s_jm1 + p.s_jm1 * p.s_jm1;
      const double scale = std::max(1.0, std::abs(p.s_j * p.s_j) +
                                             std::abs(v * p.s_j * p.s_jm1) +
                                             std::abs(p.s_jm1 * p.s_jm1));
      worst = std::max(worst, std::abs(lhs - 1.0) / scale);
    }
    for (int i = 0; i < 32; ++i) {
      const Complex v = std::polar(1.0, 2.0 * std::numbers::pi * (i + 0.5) / 32.0);
      const ChebPair p = cheb_pair<Complex>(j, v);
      const Complex lhs = p.s_j * p.s_j - v * p.s_j * p.s_jm1 + p.s_jm1 * p.s_jm1;
      const double scale = std::max(1.0, std::norm(p.s_j) + std::abs(v * p.s_j * p.s_jm1) +
                                             std::norm(p.s_jm1));
      worst = std::max(worst, std::abs(lhs - Complex(1.0)) / scale);
    }
  }
  return worst;
}

double worst_cheb_products() {
  double worst = 0;
  for (long long n = 1; n <= 10; ++n)
    for (double v = -3.0; v <= 3.0 + 1e-9; v += 0.25) {
      const ChebPairReal p = cheb_pair<double>(n, v);
      const double scale = std::max(1.0, std::abs(p.s_j) + std::abs(p.s_jm1));
      worst = std::max(
          worst, std::abs(product_form(n, ProductForm::minus, v) - (p.s_j - p.s_jm1)) / scale);
      worst = std::max(
          worst, std::abs(product_form(n, ProductForm::plus, v) - (p.s_j + p.s_jm1)) / scale);
      worst = std::max(worst, std::abs(product_form(n, ProductForm::plain, v) - p.s_j) / scale);
    }
  return worst;
}

double worst_reducible_line() {
  double worst = 0;
  for (const KnotSpec& spec : smoke_specs())
    for (double y = 2.0; y <= 6.0 + 1e-9; y += 0.5)
      worst = std::max(worst, std::abs(riley_eval(spec, y + 2.0, y) - 1.0));
  return worst;
}

double worst_even_anchor() {
  double worst = 0;
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (double x = 0.0; x <= 4.0 + 1e-9; x += 0.5) {
        const double expect = (4.0 - x) * (4.0 - x) * m * m * n * n - 1.0;
        const double scale = std::max(1.0, std::abs(expect) + 1.0);
        worst = std::max(worst, std::abs(p_eval(m, n, x, 2.0) - expect) / scale);
      }
  return worst;
}

double worst_even_endpoint(const SolverConfig& cfg) {
  double worst = 0;
  for (auto [m, n] : {std::pair(1, 1), std::pair(1, 2), std::pair(2, 2)})
    worst = std::max(worst, std::abs(solve_y_of_x(m, n, 4.0 - 1.0 / (m * n), cfg) - 2.0));
  return worst;
}

double worst_even_curve(const SolverConfig& cfg) {
  double worst = 0;
  for (auto [m, n] : {std::pair(1, 1), std::pair(1, 2), std::pair(2, 2)}) {
    const KnotSpec spec = make_knot_spec(Family::even_minus, m, n);
    const double x_lo = 4.0 - 1.0 / (m * n);
    for (int i = 0; i <= 8; ++i) {
      const double x = x_lo + (4.0 - x_lo) * i / 8.0;
      worst = std::max(worst, riley_residual_normalized(spec, x, solve_y_of_x(m, n, x, cfg)));
    }
  }
  return worst;
}

double worst_odd_curve(const SolverConfig& cfg) {
  double worst = 0;
  for (const KnotSpec& spec : smoke_specs()) {
    if (!spec.odd() || !slope_capable(spec)) continue;
    for (double y = 2.0; y <= 3.0 + 1e-9; y += 0.25)
      worst = std::max(worst, riley_residual_normalized(spec, solve_x_of_y(spec, y, cfg), y));
  }
  return worst;
}

std::vector<Representation> sample_representations(const SolverConfig& cfg) {
  std::vector<Representation> reps;
  for (const KnotSpec& spec : smoke_specs()) {
    if (!slope_capable(spec)) continue;
    if (!spec.odd()) {
      const double theta0 = even_theta0(spec.m, spec.n);
      for (double f : {0.25, 0.6, 0.9}) {
        reps.push_back(build_representation(spec, f * theta0, cfg));
        reps.push_back(build_representation(spec, std::numbers::pi - f * theta0, cfg));
      }
    } else {
      const double y_star = find_y_star(spec, cfg);
      for (double f : {0.25, 0.6, 0.9})
        reps.push_back(build_odd_representation(spec, 2.0 + f * (y_star - 2.0), f > 0.5, cfg));
    }
  }
  return reps;
}

double worst_relation(const SolverConfig& cfg) {
  double worst = 0;
  for (const Representation& rep : sample_representations(cfg))
    worst = std::max(worst, relation_residual(rep.spec, rep.rho_a, rep.rho_b));
  return worst;
}

double worst_longitude(const SolverConfig& cfg) {
  double worst = 0;
  for (const Representation& rep : sample_representations(cfg)) {
    const LongitudeReport lr = longitude_eigenvalue(rep.spec, rep.M, rep.y);
    worst = std::max({worst, std::abs(lr.L_closed - lr.L_word), lr.lower_left,
                      std::abs(std::abs(lr.L_closed) - 1.0)});
  }
  return worst;
}

double sweep_window_violations(int grid, const SolverConfig& cfg) {
  SweepOptions opts;
  opts.grid_size = grid;
  opts.solver = cfg;
  int bad = 0;

  const KnotSpec trefoil = make_knot_spec(Family::even_minus, 1, 1);
  for (const SlopeSample& s : sweep_branch(trefoil, Branch::even_low, opts))
    if (!(s.slope < 0.0)) ++bad;
  for (const SlopeSample& s : sweep_branch(trefoil, Branch::even_high, opts))
    if (!(s.slope > 0.0 && s.slope < 1.0)) ++bad;

  const KnotSpec op = make_knot_spec(Family::odd_plus, 1, 2);
  for (const SlopeSample& s : sweep_branch(op, Branch::odd_primary, opts))
    if (!(s.slope < 0.0)) ++bad;
  for (const SlopeSample& s : sweep_branch(op, Branch::odd_reflected, opts))
    if (!(s.slope > 0.0 && s.slope < 3.0)) ++bad;

  const KnotSpec om = make_knot_spec(Family::odd_minus, 1, 2);
  for (const SlopeSample& s : sweep_branch(om, Branch::odd_primary, opts))
    if (!(s.slope > 0.0)) ++bad;
  for (const SlopeSample& s : sweep_branch(om, Branch::odd_reflected, opts))
    if (!(s.slope > -1.0 && s.slope < 0.0)) ++bad;

  return bad;
}

double worst_certificate(const SolverConfig& cfg) {
  Tolerances tol;
  tol.solver = cfg;
  const struct {
    Family family;
    int m, n;
    long long p, q;
  } cases[] = {
      {Family::even_minus, 1, 1, -1, 2},
      {Family::odd_plus, 1, 2, 1, 2},
      {Family::odd_minus, 2, 2, 1, 2},
  };
  double worst = 0;
  for (const auto& c : cases) {
    const KnotSpec spec = make_knot_spec(c.family, c.m, c.n);
    const SurgeryCertificate cert = solve_slope(spec, make_rational(c.p, c.q), tol);
    if (!verify_certificate(cert, tol))
      throw Error(errc::internal_consistency,
                  spec.conway() + " certificate failed re-verification");
    worst = std::max({worst, cert.residuals.peripheral_kill, cert.residuals.slope});
  }
  return worst;
}

double certificate_roundtrip_mismatches(const SolverConfig& cfg) {
  Tolerances tol;
  tol.solver = cfg;
  const KnotSpec spec = make_knot_spec(Family::even_minus, 1, 1);
  const SurgeryCertificate cert = solve_slope(spec, make_rational(-1, 2), tol);
  const std::string text = certificate_to_json(cert);
  const SurgeryCertificate back = certificate_from_json(text);
  return certificate_to_json(back) == text ? 0.0 : 1.0;
}

int run_selftest(int grid, const SolverConfig& cfg) {
  std::vector<SelfCheck> rows;
  run_self_check(rows, "chebyshev_identity", 1e-10, [] { return worst_cheb_identity(); });
  run_self_check(rows, "chebyshev_product_forms", 1e-10, [] { return worst_cheb_products(); });
  run_self_check(rows, "riley_reducible_line", 1e-12, [] { return worst_reducible_line(); });
  run_self_check(rows, "even_product_anchor", 1e-12, [] { return worst_even_anchor(); });
  run_self_check(rows, "even_reducible_endpoint", 1e-8, [&] { return worst_even_endpoint(cfg); });
  run_self_check(rows, "even_curve_residual", 1e-9, [&] { return worst_even_curve(cfg); });
  run_self_check(rows, "odd_curve_residual", 1e-9, [&] { return worst_odd_curve(cfg); });
  run_self_check(rows, "relation_residual", 1e-8, [&] { return worst_relation(cfg); });
  run_self_check(rows, "longitude_match", 1e-7, [&] { return worst_longitude(cfg); });
  run_self_check(rows, "sweep_window_violations", 0.5,
                 [&] { return sweep_window_violations(grid, cfg); });
  run_self_check(rows, "certificate_smoke", 1e-6, [&] { return worst_certificate(cfg); });
  run_self_check(rows, "certificate_roundtrip", 0.5,
                 [&] { return certificate_roundtrip_mismatches(cfg); });

  int passed = 0;
  for (const SelfCheck& row : rows) {
    if (row.pass) ++passed;
    std::printf("%-26s %12.4g   tol %-9.3g %s\n", row.name.c_str(), row.value, row.tolerance,
                row.pass ? "pass" : "FAIL");
    if (!row.note.empty()) std::printf("%26s   %s\n", "", row.note.c_str());
  }
  std::printf("selftest: %d/%d checks passed\n", passed, static_cast<int>(rows.size()));
  return passed == static_cast<int>(rows.size()) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ordslope: elliptic SL2(R) representation slopes on double twist knots\n"
      "C(2m,-2n), C(2m+1,2n), C(2m+1,-2n)"};
  app.set_version_flag("--version", "ordslope 1.0.0");
  app.require_subcommand(1);
  app.footer(
      "exit codes: 0 success | 1 invalid input or unsupported knot | "
      "2 slope outside the covered window | 3 numerical failure");

  const SolverConfig defaults{};
  std::string knot;
  std::string slope;
  std::string branch = "all";
  std::string out;
  std::string certify_format = "json";
  std::string sweep_format = "csv";
  int sweep_grid = 256;
  int self_grid = 64;
  double tol_residual = defaults.tol_residual;
  double tol_param = defaults.tol_param;

  const auto add_tolerances = [&](CLI::App* cmd) {
    cmd->add_option("--tol-residual", tol_residual, "residual tolerance for curve solving")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tol-param", tol_param, "bisection tolerance on the curve parameter")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  CLI::App* certify = app.add_subcommand(
      "certify", "realize a surgery slope by an explicit representation; print the certificate");
  certify->add_option("--knot", knot, "double twist knot in Conway form, e.g. C(2,-2)")
      ->required();
  certify->add_option("--slope", slope, "surgery slope p/q (use --slope=-1/2 for negatives)")
      ->required();
  add_tolerances(certify);
  certify->add_option("--out", out, "write the certificate to this file instead of stdout");
  certify->add_option("--format", certify_format, "output format")
      ->check(CLI::IsMember({"json"}))
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate branch data (param, theta, y, x, phi, slope, residual) on a grid");
  sweep->add_option("--knot", knot, "double twist knot in Conway form")->required();
  sweep->add_option("--branch", branch,
                    "even_low, even_high, odd_primary, odd_reflected, or all")
      ->check(CLI::IsMember({"even_low", "even_high", "odd_primary", "odd_reflected", "all"}))
      ->capture_default_str();
  sweep->add_option("--grid", sweep_grid, "grid points per branch (>= 16)")
      ->capture_default_str();
  add_tolerances(sweep);
  sweep->add_option("--out", out, "write rows to this file instead of stdout");
  sweep->add_option("--format", sweep_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in invariant suite at reduced grid sizes");
  selftest->add_option("--grid", self_grid, "sweep grid used by the coverage checks")
      ->capture_default_str();
  add_tolerances(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  SolverConfig cfg;
  cfg.tol_residual = tol_residual;
  cfg.tol_param = tol_param;

  try {
    if (certify->parsed()) return run_certify(knot, slope, out, cfg);
    if (sweep->parsed()) return run_sweep(knot, branch, sweep_grid, sweep_format, out, cfg);
    return run_selftest(self_grid, cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
