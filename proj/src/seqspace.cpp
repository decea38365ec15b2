#include "qbasis/seqspace.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qbasis/specfun.hpp"

namespace qbasis {

CoeffVector to_complex(const RationalVector& v) {
  std::vector<Complex> c;
  c.reserve(v.dim());
  for (const Rational& r : v.coefficients()) c.emplace_back(r.convert_to<double>(), 0.0);
  return CoeffVector(std::move(c));
}

// ---------------------------------------------------------------------------
// GaussPolyVector

GaussPolyVector::GaussPolyVector(std::vector<Wide> poly, double rate) : GaussPolyVector(std::move(poly), {}, rate) {}

GaussPolyVector::GaussPolyVector(std::vector<Wide> real_part, std::vector<Wide> imag_part, double rate)
    : re_(std::move(real_part)), im_(std::move(imag_part)), rate_(rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("GaussPolyVector: rate must be finite and > 0");
  }
  trim();
}

GaussPolyVector GaussPolyVector::from_complex(std::span<const Complex> poly, double rate) {
  std::vector<Wide> re;
  std::vector<Wide> im;
  re.reserve(poly.size());
  im.reserve(poly.size());
  for (const Complex& c : poly) {
    re.emplace_back(c.real());
    im.emplace_back(c.imag());
  }
  return GaussPolyVector(std::move(re), std::move(im), rate);
}

void GaussPolyVector::trim() {
  while (!re_.empty() && re_.back() == 0) re_.pop_back();
  while (!im_.empty() && im_.back() == 0) im_.pop_back();
}

void GaussPolyVector::check_rate_compatible(const GaussPolyVector& o) const {
  if (!is_zero() && !o.is_zero() && rate_ != o.rate_) {
    throw std::invalid_argument("GaussPolyVector: cannot combine vectors with different rates");
  }
}

Complex GaussPolyVector::coefficient(std::size_t k) const {
  const double re = k < re_.size() ? re_[k].convert_to<double>() : 0.0;
  const double im = k < im_.size() ? im_[k].convert_to<double>() : 0.0;
  return {re, im};
}

namespace {

Wide horner(const std::vector<Wide>& p, const Wide& x) {
  Wide acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// (p' - 2 a x p) for one real coefficient array.
std::vector<Wide> gauss_derivative(const std::vector<Wide>& p, const Wide& rate) {
  if (p.empty()) return {};
  std::vector<Wide> out(p.size() + 1, Wide(0));
  for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] += p[k] * k;
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] -= 2 * rate * p[k];
  return out;
}

std::vector<Wide> shift_up(const std::vector<Wide>& p) {
  if (p.empty()) return {};
  std::vector<Wide> out(p.size() + 1, Wide(0));
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k];
  return out;
}

void add_into(std::vector<Wide>& dst, const std::vector<Wide>& src, int sign) {
  if (src.size() > dst.size()) dst.resize(src.size(), Wide(0));
  for (std::size_t k = 0; k < src.size(); ++k) {
    if (sign > 0) {
      dst[k] += src[k];
    } else {
      dst[k] -= src[k];
    }
  }
}

}  // namespace

WideComplex GaussPolyVector::polynomial_at(const Wide& x) const {
  return {horner(re_, x), im_.empty() ? Wide(0) : horner(im_, x)};
}

Complex GaussPolyVector::value(double x) const {
  const Complex p = polynomial_at(Wide(x)).to_complex();
  return p * std::exp(-rate_ * x * x);
}

GaussPolyVector GaussPolyVector::derivative() const {
  const Wide a(rate_);
  return GaussPolyVector(gauss_derivative(re_, a), gauss_derivative(im_, a), rate_);
}

GaussPolyVector GaussPolyVector::times_x() const { return GaussPolyVector(shift_up(re_), shift_up(im_), rate_); }

GaussPolyVector GaussPolyVector::with_rate(double rate) const { return GaussPolyVector(re_, im_, rate); }

GaussPolyVector& GaussPolyVector::operator+=(const GaussPolyVector& o) {
  check_rate_compatible(o);
  if (is_zero()) rate_ = o.rate_;
  add_into(re_, o.re_, +1);
  add_into(im_, o.im_, +1);
  trim();
  return *this;
}

GaussPolyVector& GaussPolyVector::operator-=(const GaussPolyVector& o) {
  check_rate_compatible(o);
  if (is_zero()) rate_ = o.rate_;
  add_into(re_, o.re_, -1);
  add_into(im_, o.im_, -1);
  trim();
  return *this;
}

GaussPolyVector& GaussPolyVector::operator*=(const Wide& s) {
  for (auto& c : re_) c *= s;
  for (auto& c : im_) c *= s;
  trim();
  return *this;
}

GaussPolyVector& GaussPolyVector::operator*=(const Complex& s) {
  if (s.imag() == 0.0) return *this *= Wide(s.real());
  const Wide sr(s.real());
  const Wide si(s.imag());
  const std::size_t n = std::max(re_.size(), im_.size());
  std::vector<Wide> re(n, Wide(0));
  std::vector<Wide> im(n, Wide(0));
  for (std::size_t k = 0; k < n; ++k) {
    const Wide a = k < re_.size() ? re_[k] : Wide(0);
    const Wide b = k < im_.size() ? im_[k] : Wide(0);
    re[k] = a * sr - b * si;
    im[k] = a * si + b * sr;
  }
  re_ = std::move(re);
  im_ = std::move(im);
  trim();
  return *this;
}

int quadrature_order(int degree_f, int degree_g, const QuadOrderPolicy& policy) {
  const int total = std::max(degree_f, 0) + std::max(degree_g, 0);
  return (total + 1) / 2 + 1 + std::max(policy.extra_nodes, 0);
}

WideComplex inner_gauss_wide(const GaussPolyVector& f, const GaussPolyVector& g, const QuadOrderPolicy& policy) {
  if (f.is_zero() || g.is_zero()) return {};
  const int m = quadrature_order(f.degree(), g.degree(), policy);
  const WideQuadratureRule& rule = gauss_hermite_wide(m);
  const Wide scale = 1 / sqrt(Wide(f.rate()) + Wide(g.rate()));
  const bool real = f.is_real() && g.is_real();

  WideComplex acc;
  for (int i = 0; i < m; ++i) {
    const Wide t = rule.nodes[i] * scale;
    if (real) {
      acc.re += rule.weights[i] * horner(f.real_part(), t) * horner(g.real_part(), t);
    } else {
      acc += (f.polynomial_at(t).conj() * g.polynomial_at(t)) * rule.weights[i];
    }
  }
  return acc * scale;
}

Complex inner_gauss(const GaussPolyVector& f, const GaussPolyVector& g, const QuadOrderPolicy& policy) {
  return inner_gauss_wide(f, g, policy).to_complex();
}

double norm(const GaussPolyVector& f) {
  const Wide n2 = inner_gauss_wide(f, f).re;
  return n2 > 0 ? sqrt(n2).convert_to<double>() : 0.0;
}

double distance(const GaussPolyVector& a, const GaussPolyVector& b) {
  if (a.is_zero() || b.is_zero() || a.rate() == b.rate()) return norm(a - b);
  const Wide d2 = inner_gauss_wide(a, a).re + inner_gauss_wide(b, b).re - 2 * inner_gauss_wide(a, b).re;
  return d2 > 0 ? sqrt(d2).convert_to<double>() : 0.0;
}

// ---------------------------------------------------------------------------
// Scalar sequences

namespace {
std::string fmt_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace

ScalarSequence ScalarSequence::inverse_power(double p) {
  return ScalarSequence("1/n^" + fmt_number(p), [p](int n) { return Complex(std::pow(static_cast<double>(n), -p), 0.0); });
}

ScalarSequence ScalarSequence::geometric(double r) {
  return ScalarSequence(fmt_number(r) + "^n", [r](int n) { return Complex(std::pow(r, n), 0.0); });
}

ScalarSequence ScalarSequence::constant(Complex c) {
  std::string label = fmt_number(c.real());
  if (c.imag() != 0.0) label = "(" + label + "+" + fmt_number(c.imag()) + "i)";
  return ScalarSequence("const " + label, [c](int) { return c; });
}

ScalarSequence ScalarSequence::affine(double a, double b) {
  return ScalarSequence(fmt_number(a) + "n+" + fmt_number(b), [a, b](int n) { return Complex(a * n + b, 0.0); });
}

ScalarSequence ScalarSequence::from_values(std::string label, std::vector<Complex> values) {
  return ScalarSequence(std::move(label), [v = std::move(values)](int n) {
    return (n >= 1 && static_cast<std::size_t>(n) <= v.size()) ? v[n - 1] : Complex(0.0, 0.0);
  });
}

ScalarSequence ScalarSequence::reciprocal(const ScalarSequence& s) {
  return ScalarSequence("1/(" + s.label() + ")", [s](int n) { return Complex(1.0, 0.0) / s(n); });
}

Growth classify_dyadic(double early_increment, double late_increment, double scale, const DyadicPolicy& policy) {
  early_increment = std::abs(early_increment);
  late_increment = std::abs(late_increment);
  if (late_increment <= policy.tolerance * (1.0 + std::abs(scale))) return Growth::Bounded;
  if (early_increment == 0.0) return Growth::Growing;
  const double ratio = late_increment / early_increment;
  if (ratio <= policy.settle_ratio) return Growth::Bounded;
  if (ratio >= policy.diverge_ratio) return Growth::Growing;
  return Growth::Undetermined;
}

const char* to_string(Growth g) {
  switch (g) {
    case Growth::Bounded: return "bounded";
    case Growth::Growing: return "growing";
    case Growth::Undetermined: return "undetermined";
  }
  return "?";
}

SummabilityReport seq_diagnostics(const ScalarSequence& s, int truncation, const DyadicPolicy& policy) {
  if (truncation < 1) throw std::invalid_argument("seq_diagnostics: truncation must be >= 1");
  SummabilityReport r;
  r.label = s.label();
  r.truncation = truncation;
  CompensatedSum l1, l2, w2, rw1;
  const int quarter = truncation / 4;
  const int half = truncation / 2;
  auto snapshot = [&](double PartialSumProfile::*field) {
    r.abs_sum.*field = l1.value();
    r.square_sum.*field = l2.value();
    r.index_weighted_square.*field = w2.value();
    r.root_weighted_abs.*field = rw1.value();
  };
  for (int n = 1; n <= truncation; ++n) {
    const double a = std::abs(s(n));
    l1.add(a);
    l2.add(a * a);
    w2.add(static_cast<double>(n) * n * a * a);
    rw1.add(std::sqrt(static_cast<double>(n)) * a);
    if (n == quarter) snapshot(&PartialSumProfile::quarter);
    if (n == half) snapshot(&PartialSumProfile::half);
  }
  snapshot(&PartialSumProfile::full);
  for (PartialSumProfile* p : {&r.abs_sum, &r.square_sum, &r.index_weighted_square, &r.root_weighted_abs}) {
    p->growth = classify_dyadic(p->half - p->quarter, p->full - p->half, p->full, policy);
  }
  return r;
}

}  // namespace qbasis
