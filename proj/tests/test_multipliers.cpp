#include <gtest/gtest.h>

#include <cmath>

#include "qbasis/multipliers.hpp"
#include "qbasis/specfun.hpp"
#include "qbasis/verify.hpp"

using namespace qbasis;

namespace {

ScalarSequence ladder_alpha() {
  return ScalarSequence("n-1", [](int n) { return Complex(n - 1.0, 0.0); });
}

Combination random_terms(Rng& rng, int lo, int hi) {
  Combination c;
  const int k = rng.integer(1, 4);
  for (int i = 0; i < k; ++i) c.push_back({rng.integer(lo, hi), rng.complex_unit_box()});
  return c;
}

}  // namespace

TEST(Multiplier, EigenrelationByHand) {
  const auto pair = coeff_pair(Example::Ex1);
  const MultiplierOperator<CoeffVector> h(pair, Orientation::XY, ScalarSequence::constant({2.0, 0.0}), 40);
  const CoeffVector x3 = pair.x(3);
  EXPECT_LT(distance(h(x3), Complex(2.0) * x3), 1e-15);
  const Applied<CoeffVector> a = h.apply(x3);
  EXPECT_EQ(a.tail.classification, TailClass::Converged);
  EXPECT_EQ(a.tail.truncation, 40);
}

TEST(Multiplier, YxOrientationActsOnY) {
  for (Example ex : {Example::Ex1, Example::Ex2}) {
    const auto pair = coeff_pair(ex);
    const MultiplierOperator<CoeffVector> h(pair, Orientation::YX, ScalarSequence::inverse_power(1), 30);
    for (int k = 1; k <= 20; ++k) {
      EXPECT_LT(distance(h(pair.y(k)), Complex(1.0 / k) * pair.y(k)), 1e-13 * (1 + norm(pair.y(k))));
    }
  }
}

TEST(Multiplier, GaussEigenrelation) {
  const auto pair = gauss_pair(20);
  const MultiplierOperator<GaussPolyVector> h(pair, Orientation::XY, ScalarSequence::inverse_power(2), 20);
  for (int k = 0; k <= 10; ++k) {
    const Complex a = sequence_at(ScalarSequence::inverse_power(2), 0, k);
    EXPECT_LT(distance(h(pair.x(k)), a * pair.x(k)), 1e-12 * (1 + norm(pair.x(k))));
  }
}

TEST(Ladder, LowerAndRaiseShiftIndices) {
  const auto pair = coeff_pair(Example::Ex2);
  const ScalarSequence alpha = ladder_alpha();
  const LadderOperator<CoeffVector> a(pair, Orientation::XY, LadderDirection::Lower, alpha, 20);
  const LadderOperator<CoeffVector> b(pair, Orientation::XY, LadderDirection::Raise, alpha, 20);
  EXPECT_LT(norm(a(pair.x(1))), 1e-15);
  for (int n = 2; n <= 10; ++n) {
    EXPECT_LT(distance(a(pair.x(n)), Complex(std::sqrt(n - 1.0)) * pair.x(n - 1)), 1e-13);
    EXPECT_LT(distance(b(pair.x(n)), Complex(std::sqrt(static_cast<double>(n))) * pair.x(n + 1)), 1e-13);
  }
}

TEST(Ladder, SequenceValidation) {
  EXPECT_THROW(validate_ladder_sequence(ScalarSequence::constant({1.0, 0.0}), 5), std::invalid_argument);
  EXPECT_THROW(validate_ladder_sequence(ScalarSequence::from_values("d", {0.0, 2.0, 1.0}), 3), std::invalid_argument);
  EXPECT_THROW(validate_ladder_sequence(ScalarSequence::from_values("c", {0.0, Complex(1.0, 1.0)}), 2),
               std::invalid_argument);
  EXPECT_NO_THROW(validate_ladder_sequence(ladder_alpha(), 50));
}

TEST(Factorization, EdgeIndexRefused) {
  const auto pair = coeff_pair(Example::Ex1);
  const Combination edge{{10, {1.0, 0.0}}};
  EXPECT_THROW(factorization_residual(pair, Orientation::XY, ladder_alpha(), edge, 10), EdgeIndexRefused);
  const Combination inside{{9, {1.0, 0.0}}};
  EXPECT_LT(factorization_residual(pair, Orientation::XY, ladder_alpha(), inside, 10).relative(), 1e-13);
  EXPECT_THROW(intertwining_residual(pair, ladder_alpha(), ScalarSequence::geometric(0.5), 10, 10), EdgeIndexRefused);
}

TEST(FactorizationProperty, RandomCombinations) {
  Rng rng(21, "factorization");
  for (Example ex : {Example::Ex1, Example::Ex2}) {
    const auto pair = coeff_pair(ex);
    for (int t = 0; t < 60; ++t) {
      const Orientation o = t % 2 ? Orientation::XY : Orientation::YX;
      const Combination f = random_terms(rng, 1, 24);
      EXPECT_LT(factorization_residual(pair, o, ladder_alpha(), f, 25).relative(), 1e-10);
    }
  }
}

TEST(Metric, RejectsNonPositiveWeights) {
  const auto pair = coeff_pair(Example::Ex1);
  EXPECT_THROW(MetricOperator<CoeffVector>(pair.x, ScalarSequence::constant({-1.0, 0.0}), 10), std::invalid_argument);
  EXPECT_THROW(MetricOperator<CoeffVector>(pair.x, ScalarSequence::constant({1.0, 1.0}), 10), std::invalid_argument);
}

TEST(Metric, InverseRelationOnMembers) {
  // S_x^beta y_n = beta_n x_n
  const auto pair = coeff_pair(Example::Ex2);
  const ScalarSequence beta = ScalarSequence::geometric(0.5);
  const MetricOperator<CoeffVector> sx(pair.x, beta, 30);
  for (int n = 1; n <= 29; ++n) {
    EXPECT_LT(distance(sx(pair.y(n)), beta(n) * pair.x(n)), 1e-14);
  }
}

TEST(IntertwiningProperty, RandomSequences) {
  Rng rng(22, "intertwining");
  const auto pair = coeff_pair(Example::Ex1);
  for (int t = 0; t < 5; ++t) {
    std::vector<Complex> a, b;
    for (int k = 0; k < 30; ++k) {
      a.push_back(rng.complex_unit_box());
      b.emplace_back(rng.uniform(0.1, 2.0), 0.0);
    }
    const ScalarSequence alpha = ScalarSequence::from_values("a", a);
    const ScalarSequence beta = ScalarSequence::from_values("b", b);
    for (int n = 1; n <= 24; ++n) {
      const auto [r1, r2] = intertwining_residual(pair, alpha, beta, n, 25);
      EXPECT_LT(r1.relative(), 1e-10);
      EXPECT_LT(r2.relative(), 1e-10);
    }
  }
}

TEST(Adjoint, RealAlphaPairsComplexAlphaDoesNot) {
  const auto pair = coeff_pair(Example::Ex1);
  const ScalarSequence real = ScalarSequence::inverse_power(2);
  const AdjointCounterexample none = find_adjoint_counterexample(pair, real, 20, 1e-10);
  EXPECT_FALSE(none.found);
  const ScalarSequence complex("i/n^2", [](int n) { return Complex(0.0, 1.0 / (n * n)); });
  const AdjointCounterexample found = find_adjoint_counterexample(pair, complex, 20, 1e-10);
  ASSERT_TRUE(found.found);
  EXPECT_NEAR(found.residual.residual, 2.0, 1e-12);
}

TEST(Tail, GrowingAndConvergentSeries) {
  const DyadicPolicy policy;
  const auto grow = detail::accumulate_series<CoeffVector>(
      1, 64, policy, [](int n, CoeffVector& acc) { acc += CoeffVector::unit(n); });
  EXPECT_EQ(grow.tail.classification, TailClass::Growing);
  const auto conv = detail::accumulate_series<CoeffVector>(
      1, 64, policy, [](int n, CoeffVector& acc) { acc += Complex(std::pow(0.5, n)) * CoeffVector::unit(n); });
  EXPECT_EQ(conv.tail.classification, TailClass::Converged);
  EXPECT_NEAR(conv.tail.full_norm, std::sqrt(1.0 / 3.0), 1e-12);
}

TEST(Psd, SqrtSquaresBack) {
  Rng rng(23, "psd");
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXcd a(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) a(i, j) = rng.complex_unit_box();
    const Eigen::MatrixXcd m = a * a.adjoint();
    const Eigen::MatrixXcd r = psd_sqrt(m);
    EXPECT_LT((r * r - m).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(psd_report(m).positive_semidefinite());
  }
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3);
  bad(2, 2) = -1.0;
  EXPECT_THROW(psd_sqrt(bad), NumericalDefect);
  EXPECT_FALSE(psd_report(bad).positive_semidefinite());
}

TEST(FormalFrame, OrthonormalEigenbasis) {
  for (Example ex : {Example::Ex1, Example::Ex2}) {
    const FormalFrame f =
        formal_frame(coeff_pair(ex), ScalarSequence::inverse_power(2), ScalarSequence::geometric(0.5), 12);
    EXPECT_EQ(f.dimension, 13);
    EXPECT_LT(f.orthonormality_residual, 1e-8);
    EXPECT_LT(f.eigen_residual, 1e-8);
    EXPECT_LT(f.construction_agreement, 1e-8);
    EXPECT_EQ(f.e_hat.size(), 11u);
  }
}

TEST(MetricMatrix, MatchesOperator) {
  const auto pair = coeff_pair(Example::Ex1);
  const MetricOperator<CoeffVector> sx(pair.x, ScalarSequence::geometric(0.5), 10);
  const Eigen::MatrixXcd m = metric_matrix(sx, 11);
  const CoeffVector v = CoeffVector::unit(3) + Complex(0.0, 2.0) * CoeffVector::unit(7);
  const Eigen::VectorXcd direct = to_eigen(sx(v), 11);
  EXPECT_LT((m * to_eigen(v, 11) - direct).norm(), 1e-14);
}
