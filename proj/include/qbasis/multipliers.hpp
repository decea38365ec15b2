#pragma once

// Multiplier Hamiltonians, metric operators, ladder operators and the
// identities relating them, all realized at a finite truncation N.
//
// Sequences are indexed by position within a family: the weight applied
// to member n of a family whose first member is `base` is s(n - base + 1).
// For the sequence-space examples this is simply s(n).

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qbasis/families.hpp"
#include "qbasis/seqspace.hpp"

namespace qbasis {

/// An identity involving index shifts was requested at the truncation edge.
class EdgeIndexRefused : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// XY: sum alpha_n <y_n, f> x_n. YX: sum alpha_n <x_n, f> y_n.
enum class Orientation { XY, YX };
enum class LadderDirection { Lower, Raise };
enum class TailClass { Converged, Growing, Inconclusive };

const char* to_string(Orientation o);
const char* to_string(LadderDirection d);
const char* to_string(TailClass c);

TailClass tail_class(Growth g);

/// Partial-result norms at the dyadic checkpoints N/4, N/2, N and the
/// two Cauchy increments between them.
struct TailDiagnostics {
  int truncation = 0;
  double quarter_norm = 0.0;
  double half_norm = 0.0;
  double full_norm = 0.0;
  double early_increment = 0.0;  // ||S_{N/2} - S_{N/4}||
  double late_increment = 0.0;   // ||S_N - S_{N/2}||
  TailClass classification = TailClass::Inconclusive;
};

template <class V>
struct Applied {
  V value;
  TailDiagnostics tail;
};

inline Complex sequence_at(const ScalarSequence& s, int base, int n) { return s(n - base + 1); }

/// residual is compared against tolerance * scale.
struct ScaledResidual {
  double residual = 0.0;
  double scale = 1.0;
  double relative() const { return residual / scale; }
};

struct Term {
  int index = 0;
  Complex coefficient{1.0, 0.0};
};
using Combination = std::vector<Term>;

int top_index(const Combination& c);

template <class V>
V combine(const SequenceFamily<V>& family, const Combination& c) {
  V out{};
  for (const Term& t : c) out += t.coefficient * family.member(t.index);
  return out;
}

namespace detail {

/// Runs term(n, acc) for n = first..last, snapshotting at last/4 and last/2.
template <class V, class AddTerm>
Applied<V> accumulate_series(int first, int last, const DyadicPolicy& policy, AddTerm add_term) {
  const int quarter = last / 4;
  const int half = last / 2;
  V acc{};
  V at_quarter{};
  V at_half{};
  for (int n = first; n <= last; ++n) {
    add_term(n, acc);
    if (n == quarter) at_quarter = acc;
    if (n == half) at_half = acc;
  }
  TailDiagnostics t;
  t.truncation = last;
  t.quarter_norm = norm(at_quarter);
  t.half_norm = norm(at_half);
  t.full_norm = norm(acc);
  t.early_increment = distance(at_half, at_quarter);
  t.late_increment = distance(acc, at_half);
  t.classification = tail_class(classify_dyadic(t.early_increment, t.late_increment, t.full_norm, policy));
  return {std::move(acc), t};
}

template <class V>
void add_scaled(V& acc, const Complex& c, const V& v) {
  if (c == Complex(0.0, 0.0)) return;
  acc += c * v;
}

inline void require_truncation(int truncation, int base) {
  if (truncation < base) throw std::invalid_argument("truncation below the family base index");
}

}  // namespace detail

/// H^alpha_{x,y} (XY) or H^alpha_{y,x} (YX) truncated at N.
template <class V>
class MultiplierOperator {
 public:
  MultiplierOperator(BiorthogonalPair<V> pair, Orientation orientation, ScalarSequence alpha, int truncation,
                     DyadicPolicy policy = {})
      : pair_(std::move(pair)), orientation_(orientation), alpha_(std::move(alpha)), n_(truncation), policy_(policy) {
    detail::require_truncation(n_, pair_.base_index());
  }

  Applied<V> apply(const V& f) const {
    const auto& left = orientation_ == Orientation::XY ? pair_.x : pair_.y;
    const auto& right = orientation_ == Orientation::XY ? pair_.y : pair_.x;
    const int base = pair_.base_index();
    return detail::accumulate_series<V>(base, n_, policy_, [&](int n, V& acc) {
      const Complex a = sequence_at(alpha_, base, n);
      if (a == Complex(0.0, 0.0)) return;
      detail::add_scaled(acc, a * inner(right.member(n), f), left.member(n));
    });
  }
  V operator()(const V& f) const { return apply(f).value; }

  Orientation orientation() const { return orientation_; }
  int truncation() const { return n_; }
  const ScalarSequence& alpha() const { return alpha_; }

 private:
  BiorthogonalPair<V> pair_;
  Orientation orientation_;
  ScalarSequence alpha_;
  int n_;
  DyadicPolicy policy_;
};

/// S^w f = sum w_n <fam_n, f> fam_n with strictly positive weights.
template <class V>
class MetricOperator {
 public:
  MetricOperator(SequenceFamily<V> family, ScalarSequence weights, int truncation, DyadicPolicy policy = {})
      : family_(std::move(family)), weights_(std::move(weights)), n_(truncation), policy_(policy) {
    const int base = family_.base_index();
    detail::require_truncation(n_, base);
    for (int n = base; n <= n_; ++n) {
      const Complex w = sequence_at(weights_, base, n);
      if (w.imag() != 0.0 || !(w.real() > 0.0) || !std::isfinite(w.real())) {
        throw std::invalid_argument("metric weights must be strictly positive reals (failed at index " +
                                    std::to_string(n) + ")");
      }
    }
  }

  Applied<V> apply(const V& f) const {
    const int base = family_.base_index();
    return detail::accumulate_series<V>(base, n_, policy_, [&](int n, V& acc) {
      const V m = family_.member(n);
      detail::add_scaled(acc, sequence_at(weights_, base, n) * inner(m, f), m);
    });
  }
  V operator()(const V& f) const { return apply(f).value; }

  const SequenceFamily<V>& family() const { return family_; }
  const ScalarSequence& weights() const { return weights_; }
  int truncation() const { return n_; }

 private:
  SequenceFamily<V> family_;
  ScalarSequence weights_;
  int n_;
  DyadicPolicy policy_;
};

/// Throws std::invalid_argument unless alpha_1 = 0 and alpha is real and
/// nondecreasing on positions 1..count.
void validate_ladder_sequence(const ScalarSequence& alpha, int count);

/// A_{x,y} f = sum_{n>=2} sqrt(alpha_n) <y_n, f> x_{n-1}
/// B_{x,y} f = sum_{n>=1} sqrt(alpha_{n+1}) <y_n, f> x_{n+1}
/// and the YX mirrors with x and y exchanged.
template <class V>
class LadderOperator {
 public:
  LadderOperator(BiorthogonalPair<V> pair, Orientation orientation, LadderDirection direction, ScalarSequence alpha,
                 int truncation, DyadicPolicy policy = {})
      : pair_(std::move(pair)),
        orientation_(orientation),
        direction_(direction),
        alpha_(std::move(alpha)),
        n_(truncation),
        policy_(policy) {
    detail::require_truncation(n_, pair_.base_index());
    validate_ladder_sequence(alpha_, n_ - pair_.base_index() + 2);
  }

  Applied<V> apply(const V& f) const {
    const auto& left = orientation_ == Orientation::XY ? pair_.x : pair_.y;
    const auto& right = orientation_ == Orientation::XY ? pair_.y : pair_.x;
    const int base = pair_.base_index();
    const int shift = direction_ == LadderDirection::Lower ? -1 : 1;
    const int first = direction_ == LadderDirection::Lower ? base + 1 : base;
    return detail::accumulate_series<V>(first, n_, policy_, [&](int n, V& acc) {
      const int weight_index = direction_ == LadderDirection::Lower ? n : n + 1;
      const double a = sequence_at(alpha_, base, weight_index).real();
      if (a == 0.0) return;
      detail::add_scaled(acc, Complex(std::sqrt(a), 0.0) * inner(right.member(n), f), left.member(n + shift));
    });
  }
  V operator()(const V& f) const { return apply(f).value; }

 private:
  BiorthogonalPair<V> pair_;
  Orientation orientation_;
  LadderDirection direction_;
  ScalarSequence alpha_;
  int n_;
  DyadicPolicy policy_;
};

/// ||B(A f) - H^alpha f|| for f a combination of x members (XY) or y
/// members (YX); scale is 1 + ||H^alpha f||. Refuses top index > N - 1.
template <class V>
ScaledResidual factorization_residual(const BiorthogonalPair<V>& pair, Orientation orientation,
                                      const ScalarSequence& alpha, const Combination& f_terms, int truncation) {
  if (top_index(f_terms) > truncation - 1) {
    throw EdgeIndexRefused("factorization: top index " + std::to_string(top_index(f_terms)) +
                           " must not exceed N - 1 = " + std::to_string(truncation - 1));
  }
  const V f = combine(orientation == Orientation::XY ? pair.x : pair.y, f_terms);
  const LadderOperator<V> a(pair, orientation, LadderDirection::Lower, alpha, truncation);
  const LadderOperator<V> b(pair, orientation, LadderDirection::Raise, alpha, truncation);
  const MultiplierOperator<V> h(pair, orientation, alpha, truncation);
  const V hf = h(f);
  return {distance(b(a(f)), hf), 1.0 + norm(hf)};
}

/// First: ||(H_xy S_x - S_x H_yx) y_n||. Second: ||(H_yx S_y - S_y H_xy) x_n||.
/// gamma = 1 / beta. Refuses n > N - 1.
template <class V>
std::pair<ScaledResidual, ScaledResidual> intertwining_residual(const BiorthogonalPair<V>& pair,
                                                                const ScalarSequence& alpha,
                                                                const ScalarSequence& beta, int n, int truncation) {
  if (n > truncation - 1) {
    throw EdgeIndexRefused("intertwining: index " + std::to_string(n) + " must not exceed N - 1 = " +
                           std::to_string(truncation - 1));
  }
  const ScalarSequence gamma = ScalarSequence::reciprocal(beta);
  const MultiplierOperator<V> hxy(pair, Orientation::XY, alpha, truncation);
  const MultiplierOperator<V> hyx(pair, Orientation::YX, alpha, truncation);
  const MetricOperator<V> sx(pair.x, beta, truncation);
  const MetricOperator<V> sy(pair.y, gamma, truncation);
  const V yn = pair.y.member(n);
  const V xn = pair.x.member(n);
  const V a1 = hxy(sx(yn));
  const V b1 = sx(hyx(yn));
  const V a2 = hyx(sy(xn));
  const V b2 = sy(hxy(xn));
  return {{distance(a1, b1), 1.0 + norm(a1) + norm(b1)}, {distance(a2, b2), 1.0 + norm(a2) + norm(b2)}};
}

/// |<f, H_xy h> - <H_yx f, h>|; scale 1 + ||f|| ||H_xy h|| + ||H_yx f|| ||h||.
template <class V>
ScaledResidual adjoint_pairing_residual(const BiorthogonalPair<V>& pair, const ScalarSequence& alpha, const V& f,
                                        const V& h, int truncation) {
  const MultiplierOperator<V> hxy(pair, Orientation::XY, alpha, truncation);
  const MultiplierOperator<V> hyx(pair, Orientation::YX, alpha, truncation);
  const V hh = hxy(h);
  const V hf = hyx(f);
  const Complex lhs = inner(f, hh);
  const Complex rhs = inner(hf, h);
  return {std::abs(lhs - rhs), 1.0 + norm(f) * norm(hh) + norm(hf) * norm(h)};
}

struct AdjointCounterexample {
  bool found = false;
  Combination f_terms;  // over the y family
  Combination h_terms;  // over the x family
  ScaledResidual residual;
};

/// Searches f = y_j + y_k, h = x_l over the first few indices for a pair
/// whose pairing residual exceeds tolerance * scale.
template <class V>
AdjointCounterexample find_adjoint_counterexample(const BiorthogonalPair<V>& pair, const ScalarSequence& alpha,
                                                  int truncation, double tolerance, int search_depth = 4) {
  const int base = pair.base_index();
  const int top = std::min(truncation, base + search_depth - 1);
  AdjointCounterexample best;
  for (int j = base; j <= top; ++j) {
    for (int k = j; k <= top; ++k) {
      Combination f_terms = j == k ? Combination{{j, {1.0, 0.0}}} : Combination{{j, {1.0, 0.0}}, {k, {1.0, 0.0}}};
      const V f = combine(pair.y, f_terms);
      for (int l = base; l <= top; ++l) {
        Combination h_terms{{l, {1.0, 0.0}}};
        const ScaledResidual r = adjoint_pairing_residual(pair, alpha, f, pair.x.member(l), truncation);
        if (r.relative() > tolerance && (!best.found || r.relative() > best.residual.relative())) {
          best = {true, f_terms, h_terms, r};
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Finite matrices

/// Hermitian part and PSD square root with eigenvalues clamped at 0.
/// Throws NumericalDefect when an eigenvalue is below -1e-10 * trace.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m);

struct PsdReport {
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double hermitian_defect = 0.0;  // max |M - M^*|
  bool positive_semidefinite(double relative_tolerance = 1e-10) const {
    return min_eigenvalue >= -relative_tolerance * std::max(trace, 1.0);
  }
};

PsdReport psd_report(const Eigen::MatrixXcd& m);

/// Truncated matrix of a metric operator on span(e_1..e_dim): members
/// are projected onto the first dim coordinates.
Eigen::MatrixXcd metric_matrix(const MetricOperator<CoeffVector>& op, int dim);

/// Result of the formal diagonalization e_hat_n = beta_n^{-1/2} S_x^{1/2} y_n,
/// h_xy = S_y^{1/2} H_xy S_x^{1/2} on span(e_1..e_{N+1}).
struct FormalFrame {
  int dimension = 0;
  std::vector<CoeffVector> e_hat;      // from S_x and y_n, n = 1..N-1
  std::vector<CoeffVector> e_hat_alt;  // from S_y and x_n
  Eigen::MatrixXcd h_xy;
  double orthonormality_residual = 0.0;  // max |<e_m, e_n> - delta|
  double eigen_residual = 0.0;           // max ||h e_n - alpha_n e_n||
  double construction_agreement = 0.0;   // max ||e_n - e_n'||
  double metric_inverse_defect = 0.0;    // max |S_x S_y - 1|
};

FormalFrame formal_frame(const BiorthogonalPair<CoeffVector>& pair, const ScalarSequence& alpha,
                         const ScalarSequence& beta, int truncation);

Eigen::VectorXcd to_eigen(const CoeffVector& v, int dim);
CoeffVector from_eigen(const Eigen::VectorXcd& v);

}  // namespace qbasis
