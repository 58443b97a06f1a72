#pragma once

#include <cmath>
#include <complex>

#include "ordslope/chebyshev.hpp"
#include "ordslope/error.hpp"

namespace ordslope {

// Dense complex 2x2 matrix, row major: [[a, b], [c, d]].  Everything here
// works for matrices near SL2 (determinant close to 1 but not assumed exact).
struct Matrix2C {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Matrix2C identity() { return {}; }

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }

  Matrix2C operator*(const Matrix2C& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }

  Matrix2C operator-(const Matrix2C& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }

  // Inverse via the adjugate divided by the determinant; valid whenever the
  // determinant is nonzero (it is ~1 for all matrices handled here).
  Matrix2C inverse() const {
    Complex dt = det();
    if (std::abs(dt) < 1e-300) throw Error(errc::singularity, "Matrix2C::inverse: singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }

  double frobenius_norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  }

  // Integer power by repeated squaring; negative exponents invert first.
  Matrix2C pow(long long e) const {
    Matrix2C base = (e < 0) ? inverse() : *this;
    unsigned long long k = (e < 0) ? static_cast<unsigned long long>(-(e + 1)) + 1ull
                                   : static_cast<unsigned long long>(e);
    Matrix2C acc = identity();
    while (k != 0) {
      if (k & 1ull) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }
};

inline double frobenius_distance(const Matrix2C& x, const Matrix2C& y) {
  return (x - y).frobenius_norm();
}

// Integer power of a complex scalar by binary squaring (negative exponents
// invert first); keeps unit-circle arguments exact to rounding.
inline Complex complex_pow(Complex base, long long e) {
  if (e < 0) {
    base = Complex(1.0) / base;
    e = -e;
  }
  Complex acc{1.0, 0.0};
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// The two generator images used throughout: a parabolic-framed elliptic pair
// parameterized by the meridian eigenvalue M and the trace coordinate y.
inline Matrix2C meridian_matrix(const Complex& M) {
  return {M, Complex(1.0), Complex(0.0), Complex(1.0) / M};
}

inline Matrix2C partner_matrix(const Complex& M, double y) {
  return {M, Complex(0.0), Complex(2.0 - y), Complex(1.0) / M};
}

}  // namespace ordslope
