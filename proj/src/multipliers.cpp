#include "qbasis/multipliers.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "qbasis/specfun.hpp"

namespace qbasis {

const char* to_string(Orientation o) { return o == Orientation::XY ? "xy" : "yx"; }

const char* to_string(LadderDirection d) { return d == LadderDirection::Lower ? "lower" : "raise"; }

const char* to_string(TailClass c) {
  switch (c) {
    case TailClass::Converged: return "CONVERGED";
    case TailClass::Growing: return "GROWING";
    case TailClass::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

TailClass tail_class(Growth g) {
  switch (g) {
    case Growth::Bounded: return TailClass::Converged;
    case Growth::Growing: return TailClass::Growing;
    case Growth::Undetermined: return TailClass::Inconclusive;
  }
  return TailClass::Inconclusive;
}

int top_index(const Combination& c) {
  int top = 0;
  for (const Term& t : c) top = std::max(top, t.index);
  return top;
}

void validate_ladder_sequence(const ScalarSequence& alpha, int count) {
  if (alpha(1) != Complex(0.0, 0.0)) throw std::invalid_argument("ladder operators need alpha_1 = 0");
  double prev = 0.0;
  for (int p = 1; p <= count; ++p) {
    const Complex a = alpha(p);
    if (a.imag() != 0.0 || !std::isfinite(a.real())) {
      throw std::invalid_argument("ladder operators need a real alpha (failed at position " + std::to_string(p) + ")");
    }
    if (a.real() < prev) {
      throw std::invalid_argument("ladder operators need a nondecreasing alpha (failed at position " +
                                  std::to_string(p) + ")");
    }
    prev = a.real();
  }
}

namespace {

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

PsdReport psd_report(const Eigen::MatrixXcd& m) {
  PsdReport r;
  r.hermitian_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalDefect("psd_report: eigensolver did not converge");
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.trace = m.trace().real();
  return r;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(m));
  if (es.info() != Eigen::Success) throw NumericalDefect("psd_sqrt: eigensolver did not converge");
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double trace = std::max(lambda.cwiseAbs().sum(), 1e-300);
  if (lambda.minCoeff() < -1e-10 * trace) {
    throw NumericalDefect("psd_sqrt: matrix is indefinite beyond rounding (min eigenvalue " +
                          std::to_string(lambda.minCoeff()) + ")");
  }
  const Eigen::VectorXd root = lambda.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXcd to_eigen(const CoeffVector& v, int dim) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (int k = 1; k <= dim; ++k) out(k - 1) = v(k);
  return out;
}

CoeffVector from_eigen(const Eigen::VectorXcd& v) {
  return CoeffVector(std::vector<Complex>(v.data(), v.data() + v.size()));
}

Eigen::MatrixXcd metric_matrix(const MetricOperator<CoeffVector>& op, int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const int base = op.family().base_index();
  for (int n = base; n <= op.truncation(); ++n) {
    const Eigen::VectorXcd v = to_eigen(op.family().member(n), dim);
    m += sequence_at(op.weights(), base, n) * (v * v.adjoint());
  }
  return m;
}

FormalFrame formal_frame(const BiorthogonalPair<CoeffVector>& pair, const ScalarSequence& alpha,
                         const ScalarSequence& beta, int truncation) {
  if (truncation < 2) throw std::invalid_argument("formal_frame: truncation must be >= 2");
  const int base = pair.base_index();
  const int dim = truncation + 1;
  Eigen::MatrixXcd x(dim, dim);
  Eigen::MatrixXcd y(dim, dim);
  Eigen::VectorXcd b(dim);
  Eigen::VectorXcd a(dim);
  for (int n = 1; n <= dim; ++n) {
    x.col(n - 1) = to_eigen(pair.x.member(n + base - 1), dim);
    y.col(n - 1) = to_eigen(pair.y.member(n + base - 1), dim);
    const Complex w = beta(n);
    if (w.imag() != 0.0 || !(w.real() > 0.0)) throw std::invalid_argument("formal_frame: beta must be positive");
    b(n - 1) = w;
    a(n - 1) = alpha(n);
  }
  const Eigen::MatrixXcd sx = x * b.asDiagonal() * x.adjoint();
  const Eigen::MatrixXcd sy = y * b.cwiseInverse().asDiagonal() * y.adjoint();
  const Eigen::MatrixXcd hxy = x * a.asDiagonal() * y.adjoint();
  const Eigen::MatrixXcd sx_half = psd_sqrt(sx);
  const Eigen::MatrixXcd sy_half = psd_sqrt(sy);

  FormalFrame f;
  f.dimension = dim;
  f.h_xy = sy_half * hxy * sx_half;
  f.metric_inverse_defect = (sx * sy - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  const int count = truncation - 1;
  std::vector<Eigen::VectorXcd> e(count);
  for (int n = 1; n <= count; ++n) {
    const double bn = b(n - 1).real();
    e[n - 1] = sx_half * y.col(n - 1) / std::sqrt(bn);
    const Eigen::VectorXcd alt = sy_half * x.col(n - 1) * std::sqrt(bn);
    f.e_hat.push_back(from_eigen(e[n - 1]));
    f.e_hat_alt.push_back(from_eigen(alt));
    f.construction_agreement = std::max(f.construction_agreement, (e[n - 1] - alt).norm());
    f.eigen_residual = std::max(f.eigen_residual, (f.h_xy * e[n - 1] - a(n - 1) * e[n - 1]).norm());
  }
  for (int m = 0; m < count; ++m) {
    for (int n = 0; n < count; ++n) {
      const Complex g = e[m].dot(e[n]);
      f.orthonormality_residual = std::max(f.orthonormality_residual, std::abs(g - Complex(m == n ? 1.0 : 0.0)));
    }
  }
  return f;
}

}  // namespace qbasis
