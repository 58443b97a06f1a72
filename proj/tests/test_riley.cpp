#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <optional>

#include "doctest.h"
#include "ordslope/riley.hpp"

using namespace ordslope;

namespace {

template <class Fn>
std::optional<errc> thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

const KnotSpec kTrefoil = make_knot_spec(Family::even_minus, 1, 1);
const KnotSpec kOp11 = make_knot_spec(Family::odd_plus, 1, 1);
const KnotSpec kOp12 = make_knot_spec(Family::odd_plus, 1, 2);
const KnotSpec kOm12 = make_knot_spec(Family::odd_minus, 1, 2);

}  // namespace

TEST_CASE("reducible line R(y+2, y) = 1 for every family") {
  for (Family family : {Family::even_minus, Family::odd_plus, Family::odd_minus})
    for (int m = 1; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n) {
        const KnotSpec spec = make_knot_spec(family, m, n);
        for (double y = 2.0; y <= 6.0 + 1e-9; y += 0.25)
          CHECK(std::abs(riley_eval(spec, y + 2.0, y) - 1.0) < 1e-12);
      }
}

TEST_CASE("trefoil Riley polynomial reduces to x - y - 1") {
  for (double x : {0.5, 2.0, 3.7})
    for (double y : {2.0, 2.5, 4.0})
      CHECK(riley_eval(kTrefoil, x, y) == doctest::Approx(x - y - 1.0).epsilon(1e-14));
}

TEST_CASE("auxiliary traces at the reducible end") {
  // At x = y + 2 the pair (t, z) collapses to (2, 1) for every family.
  for (const KnotSpec& spec : {kTrefoil, kOp12, kOm12}) {
    const TZ tz = tz_eval(spec, 4.5, 2.5);
    CHECK(tz.t == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(tz.z == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("even product polynomial at y = 2") {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n)
      for (double x = 0.0; x <= 4.0 + 1e-9; x += 0.25) {
        const double expect = (4.0 - x) * (4.0 - x) * m * m * n * n - 1.0;
        CHECK(p_eval(m, n, x, 2.0) ==
              doctest::Approx(expect).epsilon(1e-12).scale(std::abs(expect) + 1.0));
      }
}

TEST_CASE("even product polynomial factorization") {
  // P equals (y+2-x) S_{m-1}(y)^2 (t+2-x) S_{n-1}(t)^2 - 1 away from y = 2.
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const KnotSpec spec = make_knot_spec(Family::even_minus, m, n);
      for (double x : {3.2, 3.8, 4.0})
        for (double y : {2.1, 2.6, 3.4}) {
          const TZ tz = tz_eval(spec, x, y);
          const double sm1 = cheb_eval(m - 1, y);
          const double sn1 = cheb_eval(n - 1, tz.t);
          const double direct = (y + 2.0 - x) * sm1 * sm1 * (tz.t + 2.0 - x) * sn1 * sn1 - 1.0;
          CHECK(p_eval(m, n, x, y) ==
                doctest::Approx(direct).epsilon(1e-12).scale(std::abs(direct) + 1.0));
        }
    }
}

TEST_CASE("even curve inversion") {
  // Frozen: trefoil curve is y = x - 1.
  CHECK(solve_y_of_x(1, 1, 3.9) == doctest::Approx(2.8999999999999995).epsilon(1e-12));
  CHECK(solve_y_of_x(1, 1, 4.0) == doctest::Approx(3.0).epsilon(1e-10));

  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      CHECK(std::abs(solve_y_of_x(m, n, 4.0 - 1.0 / (m * n)) - 2.0) < 1e-8);
      // Interior points actually land on the Riley zero set.
      const KnotSpec spec = make_knot_spec(Family::even_minus, m, n);
      for (double f : {0.25, 0.75, 1.0}) {
        const double x = 4.0 - (1.0 - f) / (m * n);
        CHECK(riley_residual_normalized(spec, x, solve_y_of_x(m, n, x)) < 1e-9);
      }
    }
}

TEST_CASE("even curve domain errors") {
  CHECK(thrown_code([] { solve_y_of_x(1, 1, 2.9); }) == errc::domain);
  CHECK(thrown_code([] { solve_y_of_x(1, 1, 4.1); }) == errc::domain);
  CHECK(thrown_code([] { solve_y_of_x(2, 3, 4.0 - 1.0 / 6.0 - 1e-6); }) == errc::domain);
}

TEST_CASE("odd root at the reducible end (frozen closed forms)") {
  // x(2) = y+2 - 1/(y(y-1)) at y = 2 for C(3,2).
  CHECK(solve_x_of_y(kOp11, 2.0) == doctest::Approx(3.5).epsilon(1e-10));
  // C(3,-4): x(2) = (7 - sqrt(5))/2.
  CHECK(solve_x_of_y(kOm12, 2.0) == doctest::Approx(2.381966011250105).epsilon(1e-10));
  // C(3,4): x(2) = (11 - sqrt(17))/4.
  CHECK(solve_x_of_y(kOp12, 2.0) == doctest::Approx(1.719223593595585).epsilon(1e-10));
}

TEST_CASE("odd roots stay inside their interlacing bracket") {
  for (Family family : {Family::odd_plus, Family::odd_minus})
    for (int m = 1; m <= 3; ++m)
      for (int n = (family == Family::odd_minus ? 2 : 1); n <= 3; ++n) {
        const KnotSpec spec = make_knot_spec(family, m, n);
        for (double y = 2.0; y <= 4.0 + 1e-9; y += 0.5) {
          const BracketData bd = brackets(m, n, y);
          REQUIRE(bd.t_roots.size() == std::size_t(2 * n));
          REQUIRE(bd.s_values.size() == std::size_t(2 * n + 1));
          for (std::size_t j = 1; j < bd.s_values.size(); ++j)
            CHECK(bd.s_values[j] < bd.s_values[j - 1]);

          const double x = solve_x_of_y(spec, y);
          CHECK(x > bd.s_values[std::size_t(2 * n - 1)]);
          CHECK(x < bd.s_values[std::size_t(family == Family::odd_plus ? 2 * n - 2 : 2 * n - 3)]);
          CHECK(riley_residual_normalized(spec, x, y) < 1e-9);
        }
      }
}

TEST_CASE("elliptic endpoint y*") {
  CHECK(find_y_star(kOp11) == doctest::Approx(2.3247179572447463).epsilon(1e-11));
  CHECK(find_y_star(kOm12) == doctest::Approx(2.588021798192254).epsilon(1e-11));
  CHECK(find_y_star(kOp12) == doctest::Approx(2.7625033580920286).epsilon(1e-11));

  for (const KnotSpec& spec : {kOp11, kOm12, kOp12}) {
    const double y_star = find_y_star(spec);
    CHECK(std::abs(solve_x_of_y(spec, y_star) - 4.0) < 1e-9);
    CHECK(solve_x_of_y(spec, 0.5 * (2.0 + y_star)) < 4.0);
  }
}

TEST_CASE("upper root diagnostic") {
  // Only odd_minus has a second root above y + 2.
  const double y = 2.2;
  const double x0 = solve_upper_x_of_y(kOm12, y);
  CHECK(x0 > y + 2.0);
  CHECK(riley_residual_normalized(kOm12, x0, y) < 1e-9);
  CHECK(thrown_code([&] { solve_upper_x_of_y(kOp12, y); }) == errc::invalid_input);
}

TEST_CASE("family gating") {
  CHECK(thrown_code([] { solve_x_of_y(kTrefoil, 2.5); }) == errc::invalid_input);
  CHECK(thrown_code([] { find_y_star(kTrefoil); }) == errc::invalid_input);
  const KnotSpec om11 = make_knot_spec(Family::odd_minus, 1, 1);
  CHECK(!slope_capable(om11));
  CHECK(thrown_code([&] { solve_x_of_y(om11, 2.5); }) == errc::unsupported_family);
}

TEST_CASE("corrupted tolerance fails loudly instead of looping") {
  SolverConfig cfg;
  cfg.tol_residual = 1e-30;
  CHECK(thrown_code([&] { solve_y_of_x(2, 2, 3.9, cfg); }) == errc::search_failure);
}
