#pragma once

// The three biorthogonal example pairs, the reference orthonormal
// families, the expansion matrix of the alternating family and the
// differential/multiplication operators acting on Gaussian-polynomial
// vectors.

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qbasis/exact.hpp"
#include "qbasis/seqspace.hpp"

namespace qbasis {

/// Raised when an operator is applied outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Example { Ex1, Ex2, Ex3 };

enum class FamilyKind { Ex1X, Ex1Y, Ex2X, Ex2Y, Ex3X, Ex3Y, RefECoeff, RefEGauss };

const char* to_string(Example e);
const char* to_string(FamilyKind k);

/// First valid member index: 1 for the sequence-space families, 0 for
/// the Hermite-based ones.
int base_index(FamilyKind kind);
bool is_coefficient_family(FamilyKind kind);

/// Member n of a sequence-space family, in dimension max(dim_hint, n + 1).
/// Scalar is Complex or Rational.
template <class Scalar>
BasicCoeffVector<Scalar> coeff_member(FamilyKind kind, int n, std::size_t dim_hint = 0);

/// Member n of a Hermite-based family:
///   x_n = psi_n(x) exp(-x^2/4), y_n = psi_n(x) exp(-3x^2/4), e_n = psi_n(x) exp(-x^2/2)
/// with psi_n = H_n / sqrt(2^n n! sqrt(pi)).
/// Throws DomainError above kMaxGaussDegree: the monomial form loses too many digits there.
GaussPolyVector gauss_member(FamilyKind kind, int n);

inline constexpr int kMaxGaussDegree = 80;

std::variant<CoeffVector, GaussPolyVector> family_member(FamilyKind kind, int n, std::size_t dim_hint = 0);

/// Immutable n -> member map for one family.
template <class Vector>
class SequenceFamily {
 public:
  using Generator = std::function<Vector(int)>;

  SequenceFamily(FamilyKind kind, Generator generator) : kind_(kind), gen_(std::move(generator)) {}

  FamilyKind kind() const { return kind_; }
  int base_index() const { return qbasis::base_index(kind_); }

  Vector member(int n) const {
    if (n < base_index()) {
      throw std::out_of_range(std::string("member index below the base index of ") + to_string(kind_));
    }
    return gen_(n);
  }
  Vector operator()(int n) const { return member(n); }

 private:
  FamilyKind kind_;
  Generator gen_;
};

using CoeffFamily = SequenceFamily<CoeffVector>;
using GaussFamily = SequenceFamily<GaussPolyVector>;

CoeffFamily make_coeff_family(FamilyKind kind);

/// Members up to precompute_up_to are built once and shared; later ones
/// are built on demand.
GaussFamily make_gauss_family(FamilyKind kind, int precompute_up_to = 0);

/// A biorthogonal pair <x_k, y_l> = delta_kl.
template <class Vector>
struct BiorthogonalPair {
  Example example;
  SequenceFamily<Vector> x;
  SequenceFamily<Vector> y;

  int base_index() const { return x.base_index(); }
};

BiorthogonalPair<CoeffVector> coeff_pair(Example example);
BiorthogonalPair<GaussPolyVector> gauss_pair(int precompute_up_to = 0);

/// Reference orthonormal families.
CoeffFamily reference_coeff_family();
GaussFamily reference_gauss_family(int precompute_up_to = 0);

/// sum_{k<=N} e_k / k, the vector orthogonal to every y_n of the first
/// example.
CoeffVector h_vector(int truncation);
RationalVector h_vector_exact(int truncation);

/// sum_{k<=N} 1/k^2 summed smallest term first.
double h_norm_squared(int truncation);

/// Integer matrix T_M with c = T_M alpha when f = sum_k alpha_k x_k in
/// the alternating family; column k holds the coordinates of x_k.
struct TriangularExpansionMatrix {
  int dimension = 0;
  DenseMatrix<BigInt> entries;
  BigInt determinant;

  bool unit_diagonal() const;
  bool upper_triangular() const;
};

TriangularExpansionMatrix expansion_matrix(int dimension);

enum class GaussOperator { H1, H2, HOsc, TMult, TMultInv };

const char* to_string(GaussOperator op);

/// Applies one of
///   H1   = 1/2 [ -d2 - x d + (3x^2/2 - 1)/2 ]
///   H2   = 1/2 [ -d2 + x d + (3x^2/2 + 1)/2 ]
///   HOsc = 1/2 ( -d2 + x^2 )
///   TMult:    f -> exp(-x^2/4) f   (rate + 1/4)
///   TMultInv: f -> exp(+x^2/4) f   (rate - 1/4, requires rate > 1/4)
/// by exact polynomial calculus. Throws DomainError when TMultInv would
/// leave L^2.
GaussPolyVector apply_gauss_operator(GaussOperator op, const GaussPolyVector& f);

}  // namespace qbasis
