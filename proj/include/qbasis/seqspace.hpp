#pragma once

// Vector types, inner products and scalar-sequence diagnostics.
//
// Two concrete models of the Hilbert space are used:
//   * BasicCoeffVector<S>: finitely many coordinates against an
//     orthonormal basis e_1, e_2, ... (index 1 is the first coordinate);
//   * GaussPolyVector: functions p(x) exp(-a x^2) on the real line.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "qbasis/wide.hpp"

namespace qbasis {

namespace detail {
template <class S>
S conj_scalar(const S& s) {
  if constexpr (std::is_same_v<S, Complex>) {
    return std::conj(s);
  } else {
    return s;
  }
}
}  // namespace detail

/// Coordinates c_1..c_N against the reference orthonormal basis. Reads
/// past dim() yield zero, so vectors of different lengths combine as if
/// zero-padded.
template <class Scalar>
class BasicCoeffVector {
 public:
  BasicCoeffVector() = default;
  explicit BasicCoeffVector(std::size_t dim) : c_(dim, Scalar(0)) {}
  explicit BasicCoeffVector(std::vector<Scalar> coefficients) : c_(std::move(coefficients)) {}

  /// e_k in a space of dimension max(dim, k).
  static BasicCoeffVector unit(std::size_t k, std::size_t dim = 0) {
    if (k == 0) throw std::out_of_range("unit vector index is 1-based");
    BasicCoeffVector v(std::max(dim, k));
    v.c_[k - 1] = Scalar(1);
    return v;
  }

  std::size_t dim() const { return c_.size(); }
  std::span<const Scalar> coefficients() const { return c_; }

  /// k-th coordinate, 1-based.
  Scalar operator()(std::size_t k) const {
    if (k == 0) throw std::out_of_range("coordinate index is 1-based");
    return k <= c_.size() ? c_[k - 1] : Scalar(0);
  }

  /// Mutable k-th coordinate, 1-based; grows the vector when needed.
  Scalar& at(std::size_t k) {
    if (k == 0) throw std::out_of_range("coordinate index is 1-based");
    if (k > c_.size()) c_.resize(k, Scalar(0));
    return c_[k - 1];
  }

  void resize(std::size_t dim) { c_.resize(dim, Scalar(0)); }

  /// Index of the last nonzero coordinate, 0 for the zero vector.
  std::size_t support_end() const {
    for (std::size_t k = c_.size(); k > 0; --k) {
      if (c_[k - 1] != Scalar(0)) return k;
    }
    return 0;
  }

  BasicCoeffVector& operator+=(const BasicCoeffVector& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  BasicCoeffVector& operator-=(const BasicCoeffVector& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  BasicCoeffVector& operator*=(const Scalar& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend BasicCoeffVector operator+(BasicCoeffVector a, const BasicCoeffVector& b) { return a += b; }
  friend BasicCoeffVector operator-(BasicCoeffVector a, const BasicCoeffVector& b) { return a -= b; }
  friend BasicCoeffVector operator*(const Scalar& s, BasicCoeffVector v) { return v *= s; }

  friend bool operator==(const BasicCoeffVector& a, const BasicCoeffVector& b) {
    const std::size_t n = std::max(a.dim(), b.dim());
    for (std::size_t k = 1; k <= n; ++k) {
      if (a(k) != b(k)) return false;
    }
    return true;
  }

 private:
  std::vector<Scalar> c_;
};

using CoeffVector = BasicCoeffVector<Complex>;
using RationalVector = BasicCoeffVector<Rational>;

/// sum_k conj(u_k) v_k; linear in the second argument.
template <class Scalar>
Scalar inner(const BasicCoeffVector<Scalar>& u, const BasicCoeffVector<Scalar>& v) {
  const std::size_t n = std::min(u.dim(), v.dim());
  const auto uc = u.coefficients();
  const auto vc = v.coefficients();
  Scalar acc(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (uc[i] != Scalar(0)) acc += detail::conj_scalar(uc[i]) * vc[i];
  }
  return acc;
}

inline Complex inner_coeff(const CoeffVector& u, const CoeffVector& v) { return inner(u, v); }

inline double norm_squared(const CoeffVector& v) {
  double acc = 0.0;
  for (const Complex& c : v.coefficients()) acc += std::norm(c);
  return acc;
}

inline double norm(const CoeffVector& v) { return std::sqrt(norm_squared(v)); }

inline double distance(const CoeffVector& a, const CoeffVector& b) { return norm(a - b); }

CoeffVector to_complex(const RationalVector& v);

/// p(x) exp(-rate x^2) with complex monomial coefficients held in Wide
/// precision. The zero vector has an empty polynomial.
class GaussPolyVector {
 public:
  GaussPolyVector() = default;
  GaussPolyVector(std::vector<Wide> poly, double rate);
  GaussPolyVector(std::vector<Wide> real_part, std::vector<Wide> imag_part, double rate);

  static GaussPolyVector from_complex(std::span<const Complex> poly, double rate);

  double rate() const { return rate_; }
  /// -1 for the zero vector.
  int degree() const { return static_cast<int>(std::max(re_.size(), im_.size())) - 1; }
  bool is_zero() const { return re_.empty() && im_.empty(); }
  bool is_real() const { return im_.empty(); }
  const std::vector<Wide>& real_part() const { return re_; }
  const std::vector<Wide>& imag_part() const { return im_; }

  /// Monomial coefficient of x^k rounded to double.
  Complex coefficient(std::size_t k) const;

  /// Polynomial part p(x).
  WideComplex polynomial_at(const Wide& x) const;

  /// Full function value p(x) exp(-rate x^2).
  Complex value(double x) const;

  /// d/dx (p exp(-a x^2)) = (p' - 2 a x p) exp(-a x^2).
  GaussPolyVector derivative() const;

  /// x * f.
  GaussPolyVector times_x() const;

  GaussPolyVector with_rate(double rate) const;

  GaussPolyVector& operator+=(const GaussPolyVector& o);
  GaussPolyVector& operator-=(const GaussPolyVector& o);
  GaussPolyVector& operator*=(const Complex& s);
  GaussPolyVector& operator*=(const Wide& s);
  friend GaussPolyVector operator+(GaussPolyVector a, const GaussPolyVector& b) { return a += b; }
  friend GaussPolyVector operator-(GaussPolyVector a, const GaussPolyVector& b) { return a -= b; }
  friend GaussPolyVector operator*(const Complex& s, GaussPolyVector v) { return v *= s; }
  friend GaussPolyVector operator*(const Wide& s, GaussPolyVector v) { return v *= s; }

 private:
  void trim();
  void check_rate_compatible(const GaussPolyVector& o) const;

  std::vector<Wide> re_;
  std::vector<Wide> im_;
  double rate_ = 0.5;
};

/// Chooses the Gauss-Hermite order for inner_gauss. The minimum is
/// ceil((deg f + deg g) / 2) + 1, which integrates the polynomial part
/// exactly; extra_nodes raises it.
struct QuadOrderPolicy {
  int extra_nodes = 0;
};

int quadrature_order(int degree_f, int degree_g, const QuadOrderPolicy& policy = {});

/// int conj(f) g dx, by Gauss-Hermite quadrature after substituting
/// u = x sqrt(rate_f + rate_g).
Complex inner_gauss(const GaussPolyVector& f, const GaussPolyVector& g, const QuadOrderPolicy& policy = {});
WideComplex inner_gauss_wide(const GaussPolyVector& f, const GaussPolyVector& g, const QuadOrderPolicy& policy = {});

inline Complex inner(const GaussPolyVector& f, const GaussPolyVector& g) { return inner_gauss(f, g); }

double norm(const GaussPolyVector& f);

/// ||a - b||, also when the two rates differ (the difference then leaves
/// the single-rate class and is expanded as a Gram sum in Wide precision).
double distance(const GaussPolyVector& a, const GaussPolyVector& b);

// ---------------------------------------------------------------------------
// Scalar sequences

/// n -> alpha_n for n >= 1. Generators must be deterministic.
class ScalarSequence {
 public:
  using Generator = std::function<Complex(int)>;

  ScalarSequence(std::string label, Generator generator) : label_(std::move(label)), gen_(std::move(generator)) {}

  Complex operator()(int n) const { return gen_(n); }
  const std::string& label() const { return label_; }

  /// 1 / n^p
  static ScalarSequence inverse_power(double p);
  /// r^n
  static ScalarSequence geometric(double r);
  static ScalarSequence constant(Complex c);
  /// a n + b
  static ScalarSequence affine(double a, double b);
  /// Listed values for n = 1..size, zero afterwards.
  static ScalarSequence from_values(std::string label, std::vector<Complex> values);
  /// 1 / s(n) elementwise.
  static ScalarSequence reciprocal(const ScalarSequence& s);

 private:
  std::string label_;
  Generator gen_;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Verdict on a sequence of dyadic increments d(N/2 -> N) against the
/// previous one d(N/4 -> N/2).
enum class Growth { Bounded, Growing, Undetermined };

struct DyadicPolicy {
  double tolerance = 1e-9;       // increments below tolerance * (1 + scale) count as settled
  double settle_ratio = 0.8;     // late / early at or below this: decaying
  double diverge_ratio = 0.95;   // late / early at or above this: not decaying
};

Growth classify_dyadic(double early_increment, double late_increment, double scale, const DyadicPolicy& policy = {});

const char* to_string(Growth g);

struct PartialSumProfile {
  double quarter = 0.0;  // partial sum up to N/4
  double half = 0.0;     // up to N/2
  double full = 0.0;     // up to N
  Growth growth = Growth::Undetermined;
};

/// Partial sums at truncation N of the sums behind the summability
/// conditions used for dense definedness.
struct SummabilityReport {
  std::string label;
  int truncation = 0;
  PartialSumProfile abs_sum;              // sum |a_n|
  PartialSumProfile square_sum;           // sum |a_n|^2
  PartialSumProfile index_weighted_square; // sum n^2 |a_n|^2
  PartialSumProfile root_weighted_abs;    // sum sqrt(n) |a_n|
};

SummabilityReport seq_diagnostics(const ScalarSequence& s, int truncation, const DyadicPolicy& policy = {});

}  // namespace qbasis
