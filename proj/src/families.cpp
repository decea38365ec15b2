#include "qbasis/families.hpp"

#include <boost/math/constants/constants.hpp>

#include "qbasis/specfun.hpp"

namespace qbasis {

BigInt bareiss_determinant(DenseMatrix<BigInt> m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("bareiss_determinant: matrix must be square");
  if (n == 0) return BigInt(1);
  BigInt sign = 1;
  BigInt prev_pivot = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return BigInt(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev_pivot;
      }
      m(i, k) = 0;
    }
    prev_pivot = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

const char* to_string(Example e) {
  switch (e) {
    case Example::Ex1: return "ex1";
    case Example::Ex2: return "ex2";
    case Example::Ex3: return "ex3";
  }
  return "?";
}

const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Ex1X: return "EX1_X";
    case FamilyKind::Ex1Y: return "EX1_Y";
    case FamilyKind::Ex2X: return "EX2_X";
    case FamilyKind::Ex2Y: return "EX2_Y";
    case FamilyKind::Ex3X: return "EX3_X";
    case FamilyKind::Ex3Y: return "EX3_Y";
    case FamilyKind::RefECoeff: return "REF_E_COEFF";
    case FamilyKind::RefEGauss: return "REF_E_GAUSS";
  }
  return "?";
}

bool is_coefficient_family(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Ex3X:
    case FamilyKind::Ex3Y:
    case FamilyKind::RefEGauss:
      return false;
    default:
      return true;
  }
}

int base_index(FamilyKind kind) { return is_coefficient_family(kind) ? 1 : 0; }

namespace {

template <class Scalar>
Scalar ratio(long num, long den) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(num, den);
  } else {
    return Scalar(static_cast<double>(num) / static_cast<double>(den));
  }
}

void check_index(FamilyKind kind, int n) {
  if (n < base_index(kind)) {
    throw std::out_of_range(std::string("member index ") + std::to_string(n) + " below the base index of " +
                            to_string(kind));
  }
}

}  // namespace

template <class Scalar>
BasicCoeffVector<Scalar> coeff_member(FamilyKind kind, int n, std::size_t dim_hint) {
  if (!is_coefficient_family(kind)) {
    throw std::invalid_argument(std::string(to_string(kind)) + " is not a sequence-space family");
  }
  check_index(kind, n);
  const auto un = static_cast<std::size_t>(n);
  BasicCoeffVector<Scalar> v(std::max(dim_hint, un + 1));
  switch (kind) {
    case FamilyKind::Ex1X:
      for (int k = 1; k <= n; ++k) v.at(k) = ratio<Scalar>(1, k);
      break;
    case FamilyKind::Ex1Y:
      v.at(un) = ratio<Scalar>(n, 1);
      v.at(un + 1) = ratio<Scalar>(-(n + 1), 1);
      break;
    case FamilyKind::Ex2X:
      for (int k = 1; k <= n; ++k) v.at(k) = ratio<Scalar>((n + k) % 2 == 0 ? 1 : -1, 1);
      break;
    case FamilyKind::Ex2Y:
      v.at(un) = Scalar(1);
      v.at(un + 1) = Scalar(1);
      break;
    case FamilyKind::RefECoeff:
      v.at(un) = Scalar(1);
      break;
    default:
      break;
  }
  return v;
}

template BasicCoeffVector<Complex> coeff_member<Complex>(FamilyKind, int, std::size_t);
template BasicCoeffVector<Rational> coeff_member<Rational>(FamilyKind, int, std::size_t);

GaussPolyVector gauss_member(FamilyKind kind, int n) {
  double rate = 0.0;
  switch (kind) {
    case FamilyKind::Ex3X: rate = 0.25; break;
    case FamilyKind::Ex3Y: rate = 0.75; break;
    case FamilyKind::RefEGauss: rate = 0.5; break;
    default:
      throw std::invalid_argument(std::string(to_string(kind)) + " is not a Hermite-based family");
  }
  check_index(kind, n);
  if (n > kMaxGaussDegree) {
    throw DomainError("Hermite-based member of degree " + std::to_string(n) + " exceeds the supported maximum " +
                      std::to_string(kMaxGaussDegree));
  }
  BigInt two_n_fact = BigInt(1) << n;
  for (int k = 2; k <= n; ++k) two_n_fact *= k;
  const Wide normalizer = 1 / sqrt(Wide(two_n_fact) * sqrt(boost::math::constants::pi<Wide>()));
  std::vector<BigInt> h = hermite_coeffs(n);
  std::vector<Wide> poly;
  poly.reserve(h.size());
  for (const BigInt& c : h) poly.push_back(Wide(c) * normalizer);
  return GaussPolyVector(std::move(poly), rate);
}

std::variant<CoeffVector, GaussPolyVector> family_member(FamilyKind kind, int n, std::size_t dim_hint) {
  if (is_coefficient_family(kind)) return coeff_member<Complex>(kind, n, dim_hint);
  return gauss_member(kind, n);
}

CoeffFamily make_coeff_family(FamilyKind kind) {
  if (!is_coefficient_family(kind)) {
    throw std::invalid_argument(std::string(to_string(kind)) + " is not a sequence-space family");
  }
  return CoeffFamily(kind, [kind](int n) { return coeff_member<Complex>(kind, n); });
}

GaussFamily make_gauss_family(FamilyKind kind, int precompute_up_to) {
  if (is_coefficient_family(kind)) {
    throw std::invalid_argument(std::string(to_string(kind)) + " is not a Hermite-based family");
  }
  auto table = std::make_shared<std::vector<GaussPolyVector>>();
  for (int n = 0; n <= precompute_up_to; ++n) table->push_back(gauss_member(kind, n));
  std::shared_ptr<const std::vector<GaussPolyVector>> shared = std::move(table);
  return GaussFamily(kind, [kind, shared](int n) {
    if (static_cast<std::size_t>(n) < shared->size()) return (*shared)[n];
    return gauss_member(kind, n);
  });
}

BiorthogonalPair<CoeffVector> coeff_pair(Example example) {
  switch (example) {
    case Example::Ex1:
      return {example, make_coeff_family(FamilyKind::Ex1X), make_coeff_family(FamilyKind::Ex1Y)};
    case Example::Ex2:
      return {example, make_coeff_family(FamilyKind::Ex2X), make_coeff_family(FamilyKind::Ex2Y)};
    default:
      throw std::invalid_argument("coeff_pair: example 3 lives in the Gaussian-polynomial space");
  }
}

BiorthogonalPair<GaussPolyVector> gauss_pair(int precompute_up_to) {
  return {Example::Ex3, make_gauss_family(FamilyKind::Ex3X, precompute_up_to),
          make_gauss_family(FamilyKind::Ex3Y, precompute_up_to)};
}

CoeffFamily reference_coeff_family() { return make_coeff_family(FamilyKind::RefECoeff); }

GaussFamily reference_gauss_family(int precompute_up_to) {
  return make_gauss_family(FamilyKind::RefEGauss, precompute_up_to);
}

CoeffVector h_vector(int truncation) {
  if (truncation < 1) throw std::invalid_argument("h_vector: truncation must be >= 1");
  CoeffVector h(static_cast<std::size_t>(truncation));
  for (int k = 1; k <= truncation; ++k) h.at(k) = 1.0 / k;
  return h;
}

RationalVector h_vector_exact(int truncation) {
  if (truncation < 1) throw std::invalid_argument("h_vector_exact: truncation must be >= 1");
  RationalVector h(static_cast<std::size_t>(truncation));
  for (int k = 1; k <= truncation; ++k) h.at(k) = Rational(1, k);
  return h;
}

double h_norm_squared(int truncation) {
  if (truncation < 1) throw std::invalid_argument("h_norm_squared: truncation must be >= 1");
  CompensatedSum s;
  for (int k = truncation; k >= 1; --k) s.add(1.0 / (static_cast<double>(k) * k));
  return s.value();
}

bool TriangularExpansionMatrix::unit_diagonal() const {
  for (int i = 0; i < dimension; ++i) {
    if (entries(i, i) != 1) return false;
  }
  return true;
}

bool TriangularExpansionMatrix::upper_triangular() const {
  for (int i = 0; i < dimension; ++i) {
    for (int j = 0; j < i; ++j) {
      if (entries(i, j) != 0) return false;
    }
  }
  return true;
}

TriangularExpansionMatrix expansion_matrix(int dimension) {
  if (dimension < 1) throw std::invalid_argument("expansion_matrix: dimension must be >= 1");
  TriangularExpansionMatrix t;
  t.dimension = dimension;
  t.entries = DenseMatrix<BigInt>(dimension, dimension);
  for (int k = 1; k <= dimension; ++k) {
    const RationalVector x = coeff_member<Rational>(FamilyKind::Ex2X, k);
    for (int i = 1; i <= k; ++i) t.entries(i - 1, k - 1) = numerator(x(i));
  }
  t.determinant = bareiss_determinant(t.entries);
  return t;
}

const char* to_string(GaussOperator op) {
  switch (op) {
    case GaussOperator::H1: return "H1";
    case GaussOperator::H2: return "H2";
    case GaussOperator::HOsc: return "hosc";
    case GaussOperator::TMult: return "T";
    case GaussOperator::TMultInv: return "Tinv";
  }
  return "?";
}

GaussPolyVector apply_gauss_operator(GaussOperator op, const GaussPolyVector& f) {
  switch (op) {
    case GaussOperator::TMult:
      return f.with_rate(f.rate() + 0.25);
    case GaussOperator::TMultInv:
      if (!(f.rate() > 0.25)) {
        throw DomainError("Tinv: vector with rate " + std::to_string(f.rate()) +
                          " is not in the domain of T^-1 (rate must exceed 1/4)");
      }
      return f.with_rate(f.rate() - 0.25);
    default:
      break;
  }
  const GaussPolyVector d1 = f.derivative();
  const GaussPolyVector d2 = d1.derivative();
  const GaussPolyVector x2f = f.times_x().times_x();
  const GaussPolyVector xd1 = d1.times_x();
  const Wide half(0.5);
  GaussPolyVector out = Wide(-0.5) * d2;
  switch (op) {
    case GaussOperator::H1:
      out -= half * xd1;
      out += Wide(0.375) * x2f;
      out -= Wide(0.25) * f;
      break;
    case GaussOperator::H2:
      out += half * xd1;
      out += Wide(0.375) * x2f;
      out += Wide(0.25) * f;
      break;
    case GaussOperator::HOsc:
      out += half * x2f;
      break;
    default:
      break;
  }
  return out.with_rate(f.rate());
}

}  // namespace qbasis
