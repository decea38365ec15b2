#pragma once

// Number types shared by the whole library.
//
// Wide is a 50 decimal digit binary float used wherever monomial
// Hermite coefficients are combined; BigInt and Rational back the exact
// arithmetic paths.

#include <complex>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace qbasis {

using Complex = std::complex<double>;
using Wide = boost::multiprecision::cpp_bin_float_50;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct WideComplex {
  Wide re{0};
  Wide im{0};

  WideComplex() = default;
  WideComplex(Wide r, Wide i = Wide(0)) : re(std::move(r)), im(std::move(i)) {}
  explicit WideComplex(Complex z) : re(z.real()), im(z.imag()) {}

  WideComplex& operator+=(const WideComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  WideComplex& operator-=(const WideComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend WideComplex operator+(WideComplex a, const WideComplex& b) { return a += b; }
  friend WideComplex operator-(WideComplex a, const WideComplex& b) { return a -= b; }
  friend WideComplex operator*(const WideComplex& a, const WideComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend WideComplex operator*(const WideComplex& a, const Wide& s) { return {a.re * s, a.im * s}; }

  WideComplex conj() const { return {re, -im}; }
  Complex to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
};

}  // namespace qbasis
