#pragma once

// Hermite and Legendre polynomials, Gauss-Hermite rules and log-domain
// magnitudes.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qbasis/wide.hpp"

namespace qbasis {

/// Raised when a numerical routine fails for reasons unrelated to its
/// input domain (e.g. the tridiagonal eigensolver does not converge).
class NumericalDefect : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A signed magnitude stored as (sign, log|value|). Zero has sign 0.
class LogMagnitude {
 public:
  LogMagnitude() = default;
  LogMagnitude(double log_value, int sign) : log_value_(log_value), sign_(sign) {}

  static LogMagnitude from_value(double v);
  static LogMagnitude zero() { return {}; }

  double log_value() const { return log_value_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  double value() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_value_); }

  friend LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.log_value_ + b.log_value_, a.sign_ * b.sign_};
  }
  friend LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b);

 private:
  double log_value_ = -INFINITY;
  int sign_ = 0;
};

/// Physicists' Hermite polynomial H_n as exact integer monomial
/// coefficients, lowest degree first.
std::vector<BigInt> hermite_coeffs(int n);

double log_factorial(int n);

/// log of 1 / sqrt(2^n n! sqrt(pi)).
double log_hermite_normalizer(int n);

/// H_n(x) / sqrt(2^n n! sqrt(pi)), i.e. the Hermite polynomial that is
/// orthonormal against exp(-x^2). Evaluated by the normalized three-term
/// recurrence with rescaling, so it never overflows.
LogMagnitude orthonormal_hermite(int n, double x);

double legendre_eval(int n, double x);

/// log|P_n(x)| with sign, via the ratio recurrence; usable for n in the
/// thousands where P_n itself overflows.
LogMagnitude legendre_log(int n, double x);

/// log(P_n(x) / P_{n-1}(x)) for x > 1. Tends to log(x + sqrt(x^2 - 1)).
double legendre_growth_rate(int n, double x);

template <class Real>
struct BasicQuadratureRule {
  std::vector<Real> nodes;    // strictly increasing, symmetric about 0
  std::vector<Real> weights;  // positive
  int order = 0;
};

struct QuadratureRule : BasicQuadratureRule<double> {
  std::vector<double> log_weights;
};

using WideQuadratureRule = BasicQuadratureRule<Wide>;

/// m-point Gauss-Hermite rule for the weight exp(-x^2).
///
/// Nodes are the eigenvalues of the symmetric Jacobi matrix of the
/// Hermite recurrence, refined by one Newton step. Weights come from the
/// Christoffel numbers 1 / (m psi_{m-1}(x)^2), which keeps the tiny tail
/// weights accurate to full relative precision.
QuadratureRule gauss_hermite(int m);

/// The same rule polished to Wide precision. Rules are built once per
/// order and shared; the returned reference stays valid for the life of
/// the process.
const WideQuadratureRule& gauss_hermite_wide(int m);

inline constexpr int kMaxWideQuadratureOrder = 1024;

}  // namespace qbasis
