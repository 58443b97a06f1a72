#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "ordslope/chebyshev.hpp"

using namespace ordslope;

namespace {

// Relative deviation of the trace identity S_j^2 - v S_j S_{j-1} + S_{j-1}^2 = 1.
template <class T>
double identity_residual(long long j, T v) {
  const ChebPairT<T> p = cheb_pair<T>(j, v);
  const T lhs = p.s_j * p.s_j - v * p.s_j * p.s_jm1 + p.s_jm1 * p.s_jm1;
  const double scale = std::max(1.0, std::abs(p.s_j * p.s_j) + std::abs(v * p.s_j * p.s_jm1) +
                                         std::abs(p.s_jm1 * p.s_jm1));
  return std::abs(lhs - T(1)) / scale;
}

}  // namespace

TEST_CASE("base values and small indices") {
  CHECK(cheb_eval(0, 0.7) == 1.0);
  CHECK(cheb_eval(1, 0.7) == 0.7);
  CHECK(cheb_eval(-1, 0.7) == 0.0);
  CHECK(cheb_eval(-2, 0.7) == -1.0);
  CHECK(cheb_eval(2, 0.7) == doctest::Approx(0.7 * 0.7 - 1.0).epsilon(1e-15));
  // S_j(2) = j + 1 exactly (integer recurrence).
  for (long long j = 0; j <= 40; ++j) CHECK(cheb_eval(j, 2.0) == double(j + 1));
}

TEST_CASE("frozen spot values") {
  CHECK(cheb_eval(5, 1.7) == doctest::Approx(-0.35343000000000124).epsilon(1e-14));
  CHECK(cheb_eval(60, 3.0) == doctest::Approx(1.4028366653498917e+25).epsilon(1e-13));
}

TEST_CASE("negative index reflection S_j = -S_{-j-2}") {
  for (long long j = -40; j <= 40; ++j)
    for (double v : {-2.7, -1.1, 0.3, 1.9, 2.5}) {
      CHECK(cheb_eval(j, v) == doctest::Approx(-cheb_eval(-j - 2, v)).epsilon(1e-12));
      const ChebPairReal p = cheb_pair<double>(j, v);
      CHECK(p.s_jm1 == doctest::Approx(cheb_eval(j - 1, v)).epsilon(1e-12));
    }
}

TEST_CASE("trace identity over real and unit-circle arguments") {
  double worst = 0;
  for (long long j = -25; j <= 25; ++j) {
    for (double v = -3.0; v <= 3.0 + 1e-9; v += 0.25)
      worst = std::max(worst, identity_residual<double>(j, v));
    for (int i = 0; i < 64; ++i) {
      const Complex v = std::polar(1.0, 2.0 * std::numbers::pi * (i + 0.5) / 64.0);
      worst = std::max(worst, identity_residual<Complex>(j, v));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("product forms match the Chebyshev combinations") {
  double worst = 0;
  for (long long n = 1; n <= 12; ++n)
    for (double v = -3.0; v <= 3.0 + 1e-9; v += 0.2) {
      const ChebPairReal p = cheb_pair<double>(n, v);
      const double scale = std::max(1.0, std::abs(p.s_j) + std::abs(p.s_jm1));
      worst = std::max(
          worst, std::abs(product_form(n, ProductForm::minus, v) - (p.s_j - p.s_jm1)) / scale);
      worst = std::max(
          worst, std::abs(product_form(n, ProductForm::plus, v) - (p.s_j + p.s_jm1)) / scale);
      worst = std::max(worst, std::abs(product_form(n, ProductForm::plain, v) - p.s_j) / scale);
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("product forms on complex arguments") {
  double worst = 0;
  for (long long n = 1; n <= 8; ++n)
    for (int i = 0; i < 16; ++i) {
      const Complex v = std::polar(1.0, 2.0 * std::numbers::pi * (i + 0.5) / 16.0);
      const ChebPair p = cheb_pair<Complex>(n, v);
      const double scale = std::max(1.0, std::abs(p.s_j) + std::abs(p.s_jm1));
      worst = std::max(worst, std::abs(product_form<Complex>(n, ProductForm::minus, v) -
                                       (p.s_j - p.s_jm1)) /
                                  scale);
      worst = std::max(worst, std::abs(product_form<Complex>(n, ProductForm::plus, v) -
                                       (p.s_j + p.s_jm1)) /
                                  scale);
      worst = std::max(
          worst, std::abs(product_form<Complex>(n, ProductForm::plain, v) - p.s_j) / scale);
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("downward recurrence S_{j-2} = v S_{j-1} - S_j") {
  for (long long j = -10; j <= 30; ++j)
    for (double v : {-1.3, 0.4, 2.2, 3.0}) {
      const ChebPairReal p = cheb_pair<double>(j, v);
      CHECK(cheb_eval(j - 2, v) == doctest::Approx(v * p.s_jm1 - p.s_j).epsilon(1e-12));
    }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(cheb_eval(3, std::nan("")), Error);
  CHECK_THROWS_AS(product_form(0, ProductForm::plain, 1.0), Error);
  CHECK_THROWS_AS(product_form(3, ProductForm::plain, std::nan("")), Error);
}
