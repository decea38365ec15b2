#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qbasis/families.hpp"

using namespace qbasis;

TEST(Ex1, MembersByHand) {
  const RationalVector x3 = coeff_member<Rational>(FamilyKind::Ex1X, 3);
  EXPECT_EQ(x3(1), Rational(1));
  EXPECT_EQ(x3(2), Rational(1, 2));
  EXPECT_EQ(x3(3), Rational(1, 3));
  EXPECT_EQ(x3(4), Rational(0));
  const RationalVector y3 = coeff_member<Rational>(FamilyKind::Ex1Y, 3);
  EXPECT_EQ(y3(3), Rational(3));
  EXPECT_EQ(y3(4), Rational(-4));
  EXPECT_EQ(y3.support_end(), 4u);
}

TEST(Ex1, ReferenceBasisTelescopes) {
  // e_k = k (x_k - x_{k-1})
  for (int k = 2; k <= 30; ++k) {
    const RationalVector d = Rational(k) * (coeff_member<Rational>(FamilyKind::Ex1X, k) -
                                            coeff_member<Rational>(FamilyKind::Ex1X, k - 1));
    EXPECT_TRUE(d == RationalVector::unit(k)) << k;
  }
}

TEST(Ex2, MembersByHand) {
  const RationalVector x3 = coeff_member<Rational>(FamilyKind::Ex2X, 3);
  EXPECT_EQ(x3(1), Rational(1));
  EXPECT_EQ(x3(2), Rational(-1));
  EXPECT_EQ(x3(3), Rational(1));
  const RationalVector y3 = coeff_member<Rational>(FamilyKind::Ex2Y, 3);
  EXPECT_TRUE(y3 == RationalVector::unit(3) + RationalVector::unit(4));
}

TEST(CoefficientPairs, ExactBiorthogonality) {
  for (auto [xk, yk] : {std::pair{FamilyKind::Ex1X, FamilyKind::Ex1Y}, std::pair{FamilyKind::Ex2X, FamilyKind::Ex2Y}}) {
    for (int k = 1; k <= 30; ++k) {
      const RationalVector x = coeff_member<Rational>(xk, k);
      for (int l = 1; l <= 30; ++l) {
        EXPECT_EQ(inner(x, coeff_member<Rational>(yk, l)), Rational(k == l ? 1 : 0));
      }
    }
  }
}

TEST(Families, IndexAndSpaceErrors) {
  EXPECT_THROW(coeff_member<Complex>(FamilyKind::Ex1X, 0), std::out_of_range);
  EXPECT_THROW(coeff_member<Complex>(FamilyKind::Ex3X, 1), std::invalid_argument);
  EXPECT_THROW(gauss_member(FamilyKind::Ex1X, 1), std::invalid_argument);
  EXPECT_THROW(coeff_pair(Example::Ex1).x.member(0), std::out_of_range);
  EXPECT_NO_THROW(gauss_pair().x.member(0));
  EXPECT_EQ(base_index(FamilyKind::Ex3Y), 0);
  EXPECT_EQ(base_index(FamilyKind::Ex2Y), 1);
  EXPECT_TRUE(is_coefficient_family(FamilyKind::RefECoeff));
  EXPECT_STREQ(to_string(Example::Ex2), "ex2");
}

TEST(Ex3, MemberShapes) {
  const GaussPolyVector e0 = gauss_member(FamilyKind::RefEGauss, 0);
  EXPECT_NEAR(e0.coefficient(0).real(), std::pow(std::numbers::pi, -0.25), 1e-15);
  EXPECT_EQ(gauss_member(FamilyKind::Ex3X, 4).rate(), 0.25);
  EXPECT_EQ(gauss_member(FamilyKind::Ex3Y, 4).rate(), 0.75);
  EXPECT_EQ(gauss_member(FamilyKind::RefEGauss, 4).rate(), 0.5);
  EXPECT_EQ(gauss_member(FamilyKind::Ex3Y, 7).degree(), 7);
  EXPECT_EQ(gauss_member(FamilyKind::Ex3X, kMaxGaussDegree).degree(), kMaxGaussDegree);
  EXPECT_THROW(gauss_member(FamilyKind::Ex3X, kMaxGaussDegree + 1), DomainError);
}

TEST(Ex3, TopDegreeStillBiorthogonal) {
  const GaussPolyVector x = gauss_member(FamilyKind::Ex3X, kMaxGaussDegree);
  const GaussPolyVector y = gauss_member(FamilyKind::Ex3Y, kMaxGaussDegree);
  EXPECT_NEAR(std::abs(inner(x, y) - Complex(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(inner(x, gauss_member(FamilyKind::Ex3Y, kMaxGaussDegree - 1))), 0.0, 1e-14);
}

TEST(Ex3, NormOracles) {
  const double r = std::sqrt(2.0 / 3.0);
  EXPECT_NEAR(std::pow(norm(gauss_member(FamilyKind::Ex3X, 0)), 2), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::pow(norm(gauss_member(FamilyKind::Ex3X, 1)), 2), 2 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::pow(norm(gauss_member(FamilyKind::Ex3Y, 0)), 2), r, 1e-14);
  EXPECT_NEAR(std::pow(norm(gauss_member(FamilyKind::Ex3Y, 1)), 2), 2.0 / 3.0 * r, 1e-14);
}

TEST(Ex3, TMapsReferenceToFamilies) {
  for (int n = 0; n <= 15; ++n) {
    const GaussPolyVector en = gauss_member(FamilyKind::RefEGauss, n);
    EXPECT_LT(distance(apply_gauss_operator(GaussOperator::TMult, en), gauss_member(FamilyKind::Ex3Y, n)), 1e-14);
    EXPECT_LT(distance(apply_gauss_operator(GaussOperator::TMultInv, en), gauss_member(FamilyKind::Ex3X, n)), 1e-14);
  }
}

TEST(Ex3, TInverseDomain) {
  const GaussPolyVector x0 = gauss_member(FamilyKind::Ex3X, 0);
  EXPECT_THROW(apply_gauss_operator(GaussOperator::TMultInv, x0), DomainError);
  const GaussPolyVector y0 = gauss_member(FamilyKind::Ex3Y, 0);
  const GaussPolyVector once = apply_gauss_operator(GaussOperator::TMultInv, y0);
  EXPECT_EQ(once.rate(), 0.5);
  const GaussPolyVector twice = apply_gauss_operator(GaussOperator::TMultInv, once);
  EXPECT_EQ(twice.rate(), 0.25);
  EXPECT_THROW(apply_gauss_operator(GaussOperator::TMultInv, twice), DomainError);
}

TEST(Ex3, OscillatorSpectrum) {
  for (int n = 0; n <= 25; ++n) {
    const GaussPolyVector en = gauss_member(FamilyKind::RefEGauss, n);
    const GaussPolyVector h = apply_gauss_operator(GaussOperator::HOsc, en);
    EXPECT_LT(distance(h, Complex(n + 0.5) * en), 1e-12) << n;
  }
}

TEST(Ex3, GaussPairBiorthogonal) {
  const auto pair = gauss_pair(20);
  for (int k = 0; k <= 20; ++k) {
    for (int l = 0; l <= 20; ++l) {
      EXPECT_LT(std::abs(inner(pair.x(k), pair.y(l)) - Complex(k == l ? 1.0 : 0.0)), 1e-13);
    }
  }
}

TEST(HVector, ValuesAndNorm) {
  const RationalVector h = h_vector_exact(10);
  EXPECT_EQ(h(7), Rational(1, 7));
  EXPECT_EQ(h(11), Rational(0));
  EXPECT_NEAR(h_norm_squared(10), 1.5497677311665408, 1e-15);
  EXPECT_NEAR(norm_squared(h_vector(10)), h_norm_squared(10), 1e-15);
}

TEST(ExpansionMatrix, DeterminantAndShape) {
  for (int m = 1; m <= 20; ++m) {
    const TriangularExpansionMatrix t = expansion_matrix(m);
    EXPECT_EQ(t.determinant, BigInt(1));
    EXPECT_TRUE(t.unit_diagonal());
    EXPECT_TRUE(t.upper_triangular());
  }
  const TriangularExpansionMatrix t = expansion_matrix(3);
  EXPECT_EQ(t.entries(0, 2), BigInt(1));
  EXPECT_EQ(t.entries(1, 2), BigInt(-1));
  EXPECT_EQ(t.entries(2, 0), BigInt(0));
}

TEST(Exact, BareissOnKnownMatrix) {
  DenseMatrix<BigInt> m(3, 3);
  const int v[3][3] = {{2, 0, 1}, {1, 3, 2}, {1, 1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[i][j];
  EXPECT_EQ(bareiss_determinant(m), BigInt(6));
  m(2, 2) = 0;
  EXPECT_EQ(bareiss_determinant(m), BigInt(-6));
}
