#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "ordslope/error.hpp"

namespace ordslope {

using Complex = std::complex<double>;

// Chebyshev-like sequence S_j defined by S_0 = 1, S_1 = v and
// S_j = v*S_{j-1} - S_{j-2}, extended to all integers via S_j = -S_{-j-2}
// (so S_{-1} = 0, S_{-2} = -1).  These satisfy
//   S_j^2 - v*S_j*S_{j-1} + S_{j-1}^2 = 1
// and, for v = s + 1/s with s != +-1,
//   S_j(v) = (s^{j+1} - s^{-(j+1)}) / (s - 1/s).
// The plain three-term recurrence is numerically adequate for |j| <= 200 and
// |v| <= 10 (backward error stays within a few ulps of the result magnitude).

namespace detail {
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const Complex& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
}  // namespace detail

template <class T>
struct ChebPairT {
  long long j = 0;
  T v{};
  T s_j{};    // S_j(v)
  T s_jm1{};  // S_{j-1}(v)
};

using ChebPair = ChebPairT<Complex>;
using ChebPairReal = ChebPairT<double>;

// (S_j(v), S_{j-1}(v)) in one forward pass; negative j via the reflection
// S_j = -S_{-j-2}.
template <class T>
ChebPairT<T> cheb_pair(long long j, T v) {
  if (!detail::finite(v)) throw Error(errc::invalid_input, "cheb_pair: non-finite argument");
  if (j >= 0) {
    T prev = T(0);  // S_{-1}
    T cur = T(1);   // S_0
    for (long long i = 1; i <= j; ++i) {
      T next = v * cur - prev;
      prev = cur;
      cur = next;
    }
    return {j, v, cur, prev};
  }
  // S_j = -S_u and S_{j-1} = -S_{u+1} with u = -j-2 >= -1.
  ChebPairT<T> up = cheb_pair(-j - 1, v);  // (S_{u+1}, S_u)
  return {j, v, -up.s_jm1, -up.s_j};
}

template <class T>
T cheb_eval(long long j, T v) {
  return cheb_pair(j, v).s_j;
}

inline double cheb_eval(long long j, double v) { return cheb_pair<double>(j, v).s_j; }
inline Complex cheb_eval(long long j, const Complex& v) { return cheb_pair<Complex>(j, v).s_j; }

// Finite product representations over cosine nodes:
//   minus: S_n - S_{n-1} = prod_{j=1}^n (v - 2cos((2j-1)pi/(2n+1)))
//   plus:  S_n + S_{n-1} = prod_{j=1}^n (v - 2cos(2j pi/(2n+1)))
//   plain: S_n           = prod_{j=1}^n (v - 2cos(j pi/(n+1)))
enum class ProductForm { minus, plus, plain };

template <class T>
T product_form(long long n, ProductForm form, T v) {
  if (n < 1) throw Error(errc::invalid_input, "product_form: n must be >= 1");
  if (!detail::finite(v)) throw Error(errc::invalid_input, "product_form: non-finite argument");
  const double pi = std::numbers::pi;
  T prod = T(1);
  for (long long j = 1; j <= n; ++j) {
    double node;
    switch (form) {
      case ProductForm::minus: node = 2.0 * std::cos((2.0 * j - 1.0) * pi / (2.0 * n + 1.0)); break;
      case ProductForm::plus:  node = 2.0 * std::cos(2.0 * j * pi / (2.0 * n + 1.0)); break;
      default:                 node = 2.0 * std::cos(j * pi / (n + 1.0)); break;
    }
    prod *= v - T(node);
  }
  return prod;
}

inline double product_form(long long n, ProductForm form, double v) {
  return product_form<double>(n, form, v);
}

}  // namespace ordslope
