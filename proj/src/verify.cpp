#include "qbasis/verify.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qbasis/specfun.hpp"

namespace qbasis {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::ReportOnly: return "REPORT-ONLY";
  }
  return "?";
}

void decide(VerificationReport& r) { r.verdict = r.residual <= r.tolerance ? Verdict::Pass : Verdict::Fail; }

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng::Rng(std::uint64_t seed, const std::string& stream) : engine_(seed ^ fnv1a(stream)) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

Complex Rng::complex_unit_box() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

namespace {

/// Worst value / tolerance ratio over several criteria; a zero tolerance
/// means the value must vanish exactly.
class Criteria {
 public:
  void add(double value, double tolerance) {
    double ratio = 0.0;
    if (std::isnan(value)) {
      ratio = std::numeric_limits<double>::infinity();
    } else if (tolerance > 0.0) {
      ratio = value / tolerance;
    } else if (value > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    worst_ = std::max(worst_, ratio);
  }
  void require(bool ok) { add(ok ? 0.0 : 1.0, 0.0); }

  void finish(VerificationReport& r) const {
    r.residual = worst_;
    r.tolerance = 1.0;
    decide(r);
  }

 private:
  double worst_ = 0.0;
};

const char kCriteriaNote[] = "residual is the worst value/tolerance ratio over the listed criteria";

VerificationReport make(const std::string& id) {
  VerificationReport r;
  r.check_id = id;
  return r;
}

std::string prefix(Example e) { return to_string(e); }

CoeffVector random_coeff_vector(int support, Rng& rng) {
  CoeffVector v(static_cast<std::size_t>(support));
  for (int k = 1; k <= support; ++k) v.at(k) = rng.complex_unit_box();
  return v;
}

Combination random_combination(int lo, int hi, int max_terms, Rng& rng) {
  Combination c;
  const int terms = rng.integer(1, max_terms);
  for (int t = 0; t < terms; ++t) c.push_back({rng.integer(lo, hi), rng.complex_unit_box()});
  return c;
}

/// alpha_1 = 0 followed by random nonnegative increments.
ScalarSequence random_ladder_sequence(int count, Rng& rng) {
  std::vector<Complex> v{Complex(0.0, 0.0)};
  double a = 0.0;
  for (int p = 2; p <= count; ++p) {
    a += rng.uniform(0.0, 2.0);
    v.emplace_back(a, 0.0);
  }
  return ScalarSequence::from_values("random ladder", std::move(v));
}

ScalarSequence random_complex_sequence(int count, Rng& rng) {
  std::vector<Complex> v;
  for (int p = 1; p <= count; ++p) v.push_back(rng.complex_unit_box() * (3.0 / p));
  return ScalarSequence::from_values("random complex", std::move(v));
}

ScalarSequence random_real_sequence(int count, Rng& rng) {
  std::vector<Complex> v;
  for (int p = 1; p <= count; ++p) v.emplace_back(rng.uniform(-2.0, 2.0), 0.0);
  return ScalarSequence::from_values("random real", std::move(v));
}

/// beta_n = exp(u_n) r^n, strictly positive.
ScalarSequence random_positive_sequence(int count, Rng& rng) {
  const double r = rng.uniform(0.5, 0.95);
  std::vector<Complex> v;
  for (int p = 1; p <= count; ++p) v.emplace_back(std::exp(rng.uniform(-1.0, 1.0)) * std::pow(r, p), 0.0);
  return ScalarSequence::from_values("random positive", std::move(v));
}

/// Runs body(pair) with the coefficient or Gaussian pair of the example.
template <class Body>
auto with_pair(Example example, int precompute, Body body) {
  if (example == Example::Ex3) return body(gauss_pair(precompute));
  return body(coeff_pair(example));
}

template <class V>
V random_reference_vector(const BiorthogonalPair<V>& pair, int span, Rng& rng);

template <>
CoeffVector random_reference_vector(const BiorthogonalPair<CoeffVector>&, int span, Rng& rng) {
  return random_coeff_vector(span, rng);
}

template <>
GaussPolyVector random_reference_vector(const BiorthogonalPair<GaussPolyVector>&, int span, Rng& rng) {
  return random_hermite_combination(span, rng);
}

}  // namespace

GaussPolyVector random_hermite_combination(int span, Rng& rng) {
  GaussPolyVector f;
  for (int k = 0; k <= span; ++k) f += rng.complex_unit_box() * gauss_member(FamilyKind::RefEGauss, k);
  return f;
}

// ---------------------------------------------------------------------------

VerificationReport biorthogonality_check(Example example, int probe) {
  auto r = make(prefix(example) + ".biorthogonality");
  r.inputs["probe"] = std::to_string(probe);
  r.tolerance = 1e-12;
  r.residual = with_pair(example, probe, [&](const auto& pair) {
    double worst = 0.0;
    for (int k = pair.base_index(); k <= probe; ++k) {
      const auto x = pair.x.member(k);
      for (int l = pair.base_index(); l <= probe; ++l) {
        worst = std::max(worst, std::abs(inner(x, pair.y.member(l)) - Complex(k == l ? 1.0 : 0.0)));
      }
    }
    return worst;
  });
  r.measured["max_deviation"] = r.residual;
  decide(r);
  return r;
}

VerificationReport quasi_basis_check(Example example, int cases, int max_support, int truncation, Rng& rng) {
  auto r = make(prefix(example) + ".quasi_basis");
  r.inputs["cases"] = std::to_string(cases);
  r.inputs["max_support"] = std::to_string(max_support);
  r.inputs["truncation"] = std::to_string(truncation);
  double worst_xy = 0.0;
  double worst_yx = 0.0;
  if (example == Example::Ex3) {
    const auto pair = gauss_pair(truncation);
    for (int c = 0; c < cases; ++c) {
      const GaussPolyVector f = random_hermite_combination(rng.integer(0, max_support), rng);
      const GaussPolyVector g = random_hermite_combination(rng.integer(0, max_support), rng);
      const auto [a, b] = quasi_basis_residual(pair, f, g, truncation);
      worst_xy = std::max(worst_xy, a);
      worst_yx = std::max(worst_yx, b);
    }
    r.tolerance = 1e-8;
    r.notes = "f, g are random combinations of the Hermite functions e_0..e_" + std::to_string(max_support);
  } else {
    const auto pair = coeff_pair(example);
    for (int c = 0; c < cases; ++c) {
      const int m = rng.integer(1, max_support);
      const CoeffVector f = random_coeff_vector(rng.integer(1, m), rng);
      const CoeffVector g = random_coeff_vector(rng.integer(1, m), rng);
      const auto [a, b] = quasi_basis_residual(pair, f, g, std::max(truncation, m));
      worst_xy = std::max(worst_xy, a);
      worst_yx = std::max(worst_yx, b);
    }
    r.tolerance = 1e-12;
    r.notes = "f, g finitely supported on e_1..e_M; both sums terminate at n = M";
  }
  r.measured["max_residual_xy"] = worst_xy;
  r.measured["max_residual_yx"] = worst_yx;
  r.residual = std::max(worst_xy, worst_yx);
  decide(r);
  return r;
}

// ---------------------------------------------------------------------------
// First example

VerificationReport ex1_completeness_witness(int truncation, int norm_truncation) {
  if (truncation < 2) throw std::invalid_argument("ex1_completeness_witness: N must be >= 2");
  auto r = make("ex1.completeness_witness");
  r.inputs["truncation"] = std::to_string(truncation);
  r.inputs["norm_truncation"] = std::to_string(norm_truncation);

  const RationalVector h = h_vector_exact(truncation);
  int nonzero = 0;
  Rational quasi_sum(0);
  for (int n = 1; n <= truncation - 1; ++n) {
    const Rational yh = inner(coeff_member<Rational>(FamilyKind::Ex1Y, n), h);
    if (yh != 0) {
      ++nonzero;
      quasi_sum += inner(h, coeff_member<Rational>(FamilyKind::Ex1X, n)) * yh;
    }
  }
  const double h_norm2 = h_norm_squared(truncation);
  const double big_norm2 = h_norm_squared(norm_truncation);
  const double zeta2 = boost::math::constants::pi_sqr<double>() / 6.0;
  const double deviation = zeta2 - big_norm2;

  r.measured["nonzero_y_h_products"] = nonzero;
  r.measured["quasi_basis_sum_h_h"] = quasi_sum.convert_to<double>();
  r.measured["h_norm_squared"] = h_norm2;
  r.measured["h_norm_squared_at_norm_truncation"] = big_norm2;
  r.measured["pi2_over_6_minus_norm_squared"] = deviation;
  r.measured["tail_bound"] = 1.0 / norm_truncation;

  Criteria c;
  c.require(nonzero == 0);
  c.require(quasi_sum == 0);
  c.require(h_norm2 > 0.0);
  c.require(deviation > 0.0);
  c.add(deviation, 1.0 / norm_truncation);
  c.add(deviation, 1e-5);
  c.finish(r);
  r.notes = std::string(kCriteriaNote) +
            "; <y_n, h_N> and the quasi-basis sum over n <= N-1 are exact rationals";
  return r;
}

RationalVector ex1_expansion_coefficients(int truncation) {
  const auto n = static_cast<std::size_t>(truncation);
  DenseMatrix<Rational> x(n, n);
  for (int k = 1; k <= truncation; ++k) {
    const RationalVector col = coeff_member<Rational>(FamilyKind::Ex1X, k);
    for (int i = 1; i <= k; ++i) x(i - 1, k - 1) = col(i);
  }
  const RationalVector h = h_vector_exact(truncation);
  std::vector<Rational> rhs(h.coefficients().begin(), h.coefficients().end());
  return RationalVector(solve_upper_triangular<Rational>(x, rhs));
}

namespace {

CoeffVector ex1_expansion_coefficients_float(int truncation) {
  const auto n = static_cast<std::size_t>(truncation);
  DenseMatrix<Complex> x(n, n);
  for (int k = 1; k <= truncation; ++k) {
    const CoeffVector col = coeff_member<Complex>(FamilyKind::Ex1X, k);
    for (int i = 1; i <= k; ++i) x(i - 1, k - 1) = col(i);
  }
  const CoeffVector h = h_vector(truncation);
  std::vector<Complex> rhs(h.coefficients().begin(), h.coefficients().end());
  return CoeffVector(solve_upper_triangular<Complex>(x, rhs));
}

}  // namespace

VerificationReport ex1_expansion_escape(int n_max, bool exact) {
  if (n_max < 2) throw std::invalid_argument("ex1_expansion_escape: N must be >= 2");
  auto r = make("ex1.expansion_escape");
  r.inputs["n_max"] = std::to_string(n_max);
  r.inputs["exact"] = exact ? "true" : "false";
  int exact_failures = 0;
  int fixed_index_nonzero = 0;
  double float_residual = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    if (exact) {
      const RationalVector a = ex1_expansion_coefficients(n);
      if (!(a == RationalVector::unit(n, n))) ++exact_failures;
      if (n > 3 && a(3) != 0) ++fixed_index_nonzero;
    }
    const CoeffVector af = ex1_expansion_coefficients_float(n);
    float_residual = std::max(float_residual, distance(af, CoeffVector::unit(n, n)));
  }
  r.measured["exact_failures"] = exact_failures;
  r.measured["alpha3_nonzero_beyond_3"] = fixed_index_nonzero;
  r.measured["max_float_residual"] = float_residual;
  Criteria c;
  c.require(exact_failures == 0);
  c.require(fixed_index_nonzero == 0);
  c.add(float_residual, 1e-12);
  c.finish(r);
  r.notes = std::string(kCriteriaNote) + "; h_N = x_N, so the coefficients concentrate at the last index";
  return r;
}

// ---------------------------------------------------------------------------
// Second example

VerificationReport ex2_e1_failure(int n_max) {
  if (n_max < 1) throw std::invalid_argument("ex2_e1_failure: N_max must be >= 1");
  auto r = make("ex2.e1_failure");
  r.inputs["n_max"] = std::to_string(n_max);
  const CoeffVector e1 = CoeffVector::unit(1);
  CoeffVector partial;
  double worst = 0.0;
  double worst_coeff = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const Complex c = inner(coeff_member<Complex>(FamilyKind::Ex2X, n), e1);
    worst_coeff = std::max(worst_coeff, std::abs(c - Complex(n % 2 == 1 ? 1.0 : -1.0)));
    partial += c * coeff_member<Complex>(FamilyKind::Ex2Y, n);
    worst = std::max(worst, std::abs(distance(partial, e1) - 1.0));
  }
  r.measured["max_distance_deviation"] = worst;
  r.measured["max_coefficient_deviation"] = worst_coeff;
  r.residual = std::max(worst, worst_coeff);
  r.tolerance = 1e-12;
  decide(r);
  r.notes = "the partial sum equals e_1 + (-1)^{N+1} e_{N+1}";
  return r;
}

namespace {

template <class S>
DenseMatrix<S> ex2_t_matrix(int dim) {
  DenseMatrix<S> t(dim, dim);
  for (int k = 1; k <= dim; ++k) {
    const auto col = coeff_member<S>(FamilyKind::Ex2X, k);
    for (int i = 1; i <= k; ++i) t(i - 1, k - 1) = col(i);
  }
  return t;
}

template <class S>
BasicCoeffVector<S> solve_ex2(const BasicCoeffVector<S>& c) {
  const int dim = std::max<int>(1, static_cast<int>(c.support_end()));
  std::vector<S> rhs(dim, S(0));
  for (int k = 1; k <= dim; ++k) rhs[k - 1] = c(k);
  return BasicCoeffVector<S>(solve_upper_triangular<S>(ex2_t_matrix<S>(dim), rhs));
}

}  // namespace

RationalVector ex2_expansion_solver(const RationalVector& c) { return solve_ex2(c); }
CoeffVector ex2_expansion_solver(const CoeffVector& c) { return solve_ex2(c); }

VerificationReport ex2_expansion_check(int n_max, int round_trip_dim, int cases, bool exact, Rng& rng) {
  auto r = make("ex2.expansion_matrix");
  r.inputs["n_max"] = std::to_string(n_max);
  r.inputs["round_trip_dim"] = std::to_string(round_trip_dim);
  r.inputs["cases"] = std::to_string(cases);
  r.inputs["exact"] = exact ? "true" : "false";
  Criteria c;
  int bad_det = 0;
  for (int n = 1; n <= n_max; ++n) {
    const TriangularExpansionMatrix t = expansion_matrix(2 * n);
    if (t.determinant != 1 || !t.unit_diagonal() || !t.upper_triangular()) ++bad_det;
  }
  c.require(bad_det == 0);
  int exact_failures = 0;
  int oracle_failures = 0;
  double float_residual = 0.0;
  const DenseMatrix<Rational> tq = ex2_t_matrix<Rational>(round_trip_dim);
  const DenseMatrix<Complex> tf = ex2_t_matrix<Complex>(round_trip_dim);
  for (int k = 0; k < cases; ++k) {
    std::vector<Rational> cq(round_trip_dim);
    std::vector<Complex> cf(round_trip_dim);
    for (int i = 0; i < round_trip_dim; ++i) {
      const int v = rng.integer(-9, 9);
      cq[i] = v;
      cf[i] = v;
    }
    if (exact) {
      const RationalVector a = ex2_expansion_solver(RationalVector(cq));
      std::vector<Rational> av(round_trip_dim, Rational(0));
      for (int i = 1; i <= round_trip_dim; ++i) av[i - 1] = a(i);
      if (tq.multiply(av) != cq) ++exact_failures;
      for (int i = 1; i <= round_trip_dim; ++i) {
        const Rational next = i < round_trip_dim ? cq[i] : Rational(0);
        if (av[i - 1] != cq[i - 1] + next) ++oracle_failures;
      }
    }
    const CoeffVector a = ex2_expansion_solver(CoeffVector(cf));
    std::vector<Complex> av(round_trip_dim);
    for (int i = 1; i <= round_trip_dim; ++i) av[i - 1] = a(i);
    const std::vector<Complex> back = tf.multiply(av);
    for (int i = 0; i < round_trip_dim; ++i) float_residual = std::max(float_residual, std::abs(back[i] - cf[i]));
  }
  c.require(exact_failures == 0);
  c.require(oracle_failures == 0);
  c.add(float_residual, 1e-13);
  r.measured["determinant_failures"] = bad_det;
  r.measured["exact_round_trip_failures"] = exact_failures;
  r.measured["closed_form_failures"] = oracle_failures;
  r.measured["max_float_round_trip"] = float_residual;
  c.finish(r);
  r.notes = std::string(kCriteriaNote) + "; det T_2N = 1 by Bareiss elimination, alpha_k = c_k + c_{k+1}";
  return r;
}

VerificationReport ex2_innpro_check(int probe) {
  auto r = make("ex2.innpro");
  r.inputs["probe"] = std::to_string(probe);
  double worst = 0.0;
  for (int n = 1; n <= probe; ++n) {
    const CoeffVector x = coeff_member<Complex>(FamilyKind::Ex2X, n);
    for (int k = 1; k <= probe; ++k) {
      const double expected = n >= k ? ((n + k) % 2 == 0 ? 1.0 : -1.0) : 0.0;
      worst = std::max(worst, std::abs(inner(x, CoeffVector::unit(k)) - Complex(expected)));
    }
  }
  r.residual = worst;
  r.tolerance = 0.0;
  decide(r);
  return r;
}

// ---------------------------------------------------------------------------
// Multiplier identities

VerificationReport multiplier_eigen_check(Example example, const ScalarSequence& alpha, int k_max, int truncation) {
  auto r = make(prefix(example) + ".eigenrelation");
  r.inputs["alpha"] = alpha.label();
  r.inputs["k_max"] = std::to_string(k_max);
  r.inputs["truncation"] = std::to_string(truncation);
  r.tolerance = 1e-12;
  r.residual = with_pair(example, truncation, [&](const auto& pair) {
    using V = std::decay_t<decltype(pair.x.member(0 + pair.base_index()))>;
    const int base = pair.base_index();
    double worst = 0.0;
    for (Orientation o : {Orientation::XY, Orientation::YX}) {
      const MultiplierOperator<V> h(pair, o, alpha, truncation);
      const auto& left = o == Orientation::XY ? pair.x : pair.y;
      for (int k = base; k <= std::min(k_max, truncation); ++k) {
        const V v = left.member(k);
        const Complex a = sequence_at(alpha, base, k);
        const double res = distance(h(v), a * v) / (1.0 + std::abs(a) * norm(v));
        worst = std::max(worst, res);
      }
    }
    return worst;
  });
  r.measured["max_scaled_residual"] = r.residual;
  r.notes = "residual is max ||H v_k - alpha_k v_k|| / (1 + |alpha_k| ||v_k||) over both orientations";
  decide(r);
  return r;
}

VerificationReport identity_collapse_check(Example example, int k_max, int truncation) {
  auto r = make(prefix(example) + ".identity_collapse");
  r.inputs["k_max"] = std::to_string(k_max);
  r.inputs["truncation"] = std::to_string(truncation);
  r.tolerance = 1e-12;
  const ScalarSequence one = ScalarSequence::constant({1.0, 0.0});
  r.residual = with_pair(example, truncation, [&](const auto& pair) {
    using V = std::decay_t<decltype(pair.x.member(pair.base_index()))>;
    double worst = 0.0;
    for (Orientation o : {Orientation::XY, Orientation::YX}) {
      const MultiplierOperator<V> h(pair, o, one, truncation);
      const auto& left = o == Orientation::XY ? pair.x : pair.y;
      for (int k = pair.base_index(); k <= std::min(k_max, truncation); ++k) {
        const V v = left.member(k);
        worst = std::max(worst, distance(h(v), v) / (1.0 + norm(v)));
      }
    }
    return worst;
  });
  decide(r);
  return r;
}

VerificationReport factorization_check(Example example, int cases, int truncation, Rng& rng) {
  auto r = make(prefix(example) + ".factorization");
  r.inputs["cases"] = std::to_string(cases);
  r.inputs["truncation"] = std::to_string(truncation);
  r.tolerance = 1e-10;
  r.residual = with_pair(example, truncation + 1, [&](const auto& pair) {
    const int base = pair.base_index();
    double worst = 0.0;
    for (int c = 0; c < cases; ++c) {
      const Orientation o = c % 2 == 0 ? Orientation::XY : Orientation::YX;
      const ScalarSequence alpha = random_ladder_sequence(truncation + 2, rng);
      const Combination f = random_combination(base, truncation - 1, 4, rng);
      worst = std::max(worst, factorization_residual(pair, o, alpha, f, truncation).relative());
    }
    return worst;
  });
  r.measured["max_scaled_residual"] = r.residual;
  r.notes = "||B A f - H f|| / (1 + ||H f||); f alternates between x-span and y-span combinations";
  decide(r);
  return r;
}

VerificationReport intertwining_check(Example example, int sequences, int truncation, Rng& rng) {
  auto r = make(prefix(example) + ".intertwining");
  r.inputs["sequences"] = std::to_string(sequences);
  r.inputs["truncation"] = std::to_string(truncation);
  r.tolerance = 1e-10;
  double worst_first = 0.0;
  double worst_second = 0.0;
  with_pair(example, truncation, [&](const auto& pair) {
    for (int s = 0; s < sequences; ++s) {
      const ScalarSequence alpha = random_complex_sequence(truncation + 2, rng);
      const ScalarSequence beta = random_positive_sequence(truncation + 2, rng);
      for (int n = pair.base_index(); n <= truncation - 1; ++n) {
        const auto [a, b] = intertwining_residual(pair, alpha, beta, n, truncation);
        worst_first = std::max(worst_first, a.relative());
        worst_second = std::max(worst_second, b.relative());
      }
    }
    return 0;
  });
  r.measured["max_scaled_residual_sx"] = worst_first;
  r.measured["max_scaled_residual_sy"] = worst_second;
  r.residual = std::max(worst_first, worst_second);
  r.notes = "gamma = 1/beta; every index n <= N-1";
  decide(r);
  return r;
}

VerificationReport adjoint_pairing_check(Example example, int cases, int truncation, Rng& rng) {
  auto r = make(prefix(example) + ".adjoint_pairing");
  r.inputs["cases"] = std::to_string(cases);
  r.inputs["truncation"] = std::to_string(truncation);
  r.tolerance = 1e-10;
  const int span = std::min(truncation, 8);
  r.residual = with_pair(example, truncation, [&](const auto& pair) {
    double worst = 0.0;
    for (int c = 0; c < cases; ++c) {
      const ScalarSequence alpha = random_real_sequence(truncation + 1, rng);
      const auto f = random_reference_vector(pair, span, rng);
      const auto h = random_reference_vector(pair, span, rng);
      worst = std::max(worst, adjoint_pairing_residual(pair, alpha, f, h, truncation).relative());
    }
    return worst;
  });
  r.measured["max_scaled_residual"] = r.residual;
  decide(r);
  return r;
}

VerificationReport adjoint_counterexample_check(Example example, int truncation) {
  auto r = make(prefix(example) + ".adjoint_counterexample");
  const ScalarSequence alpha("i/n^2", [](int n) { return Complex(0.0, 1.0 / (static_cast<double>(n) * n)); });
  r.inputs["alpha"] = alpha.label();
  r.inputs["truncation"] = std::to_string(truncation);
  const double pairing_tolerance = 1e-10;
  const AdjointCounterexample ce = with_pair(example, 4, [&](const auto& pair) {
    return find_adjoint_counterexample(pair, alpha, truncation, pairing_tolerance);
  });
  r.measured["counterexample_scaled_residual"] = ce.residual.relative();
  r.measured["counterexample_residual"] = ce.residual.residual;
  if (ce.found) {
    std::string f = "y:";
    for (std::size_t i = 0; i < ce.f_terms.size(); ++i) f += (i ? "+y:" : "") + std::to_string(ce.f_terms[i].index);
    r.findings["f"] = f;
    r.findings["h"] = "x:" + std::to_string(ce.h_terms.front().index);
  }
  r.findings["found"] = ce.found ? "true" : "false";
  Criteria c;
  c.require(ce.found);
  c.finish(r);
  r.notes = "a complex alpha breaks the pairing identity; passes when a violating (f, h) is found";
  return r;
}

namespace {

/// Matrix of sum w_n v_n v_n^* with v_n(j) = <e_j, fam_n> over the first dim
/// reference vectors.
template <class V>
Eigen::MatrixXcd gram_metric_matrix(const SequenceFamily<V>& fam, const SequenceFamily<V>& ref,
                                    const ScalarSequence& w, int truncation, int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const int base = fam.base_index();
  std::vector<V> refs;
  for (int j = 0; j < dim; ++j) refs.push_back(ref.member(ref.base_index() + j));
  for (int n = base; n <= truncation; ++n) {
    const V member = fam.member(n);
    Eigen::VectorXcd v(dim);
    for (int j = 0; j < dim; ++j) v(j) = inner(refs[j], member);
    m += sequence_at(w, base, n) * (v * v.adjoint());
  }
  return m;
}

}  // namespace

VerificationReport metric_psd_check(Example example, const ScalarSequence& beta, int truncation) {
  auto r = make(prefix(example) + ".metric_psd");
  r.inputs["beta"] = beta.label();
  r.inputs["truncation"] = std::to_string(truncation);
  const ScalarSequence gamma = ScalarSequence::reciprocal(beta);
  const int dim = truncation + 1;
  Eigen::MatrixXcd sx;
  Eigen::MatrixXcd sy;
  if (example == Example::Ex3) {
    const auto pair = gauss_pair(truncation);
    const GaussFamily ref = reference_gauss_family(dim);
    sx = gram_metric_matrix(pair.x, ref, beta, truncation, dim);
    sy = gram_metric_matrix(pair.y, ref, gamma, truncation, dim);
  } else {
    const auto pair = coeff_pair(example);
    sx = metric_matrix(MetricOperator<CoeffVector>(pair.x, beta, truncation), dim);
    sy = metric_matrix(MetricOperator<CoeffVector>(pair.y, gamma, truncation), dim);
  }
  const PsdReport px = psd_report(sx);
  const PsdReport py = psd_report(sy);
  r.measured["sx_min_eigenvalue"] = px.min_eigenvalue;
  r.measured["sx_trace"] = px.trace;
  r.measured["sy_min_eigenvalue"] = py.min_eigenvalue;
  r.measured["sy_trace"] = py.trace;
  r.measured["sx_hermitian_defect"] = px.hermitian_defect;
  r.measured["sy_hermitian_defect"] = py.hermitian_defect;
  Criteria c;
  c.add(std::max(0.0, -px.min_eigenvalue), 1e-10 * std::max(px.trace, 1.0));
  c.add(std::max(0.0, -py.min_eigenvalue), 1e-10 * std::max(py.trace, 1.0));
  c.add(px.hermitian_defect, 1e-12 * std::max(px.trace, 1.0));
  c.add(py.hermitian_defect, 1e-12 * std::max(py.trace, 1.0));
  c.finish(r);
  r.notes = std::string(kCriteriaNote) + "; gamma = 1/beta; matrices on the first N+1 reference vectors";
  return r;
}

VerificationReport formal_frame_check(Example example, const ScalarSequence& alpha, const ScalarSequence& beta,
                                      int truncation) {
  auto r = make(prefix(example) + ".formal_frame");
  r.inputs["alpha"] = alpha.label();
  r.inputs["beta"] = beta.label();
  r.inputs["truncation"] = std::to_string(truncation);
  const FormalFrame f = formal_frame(coeff_pair(example), alpha, beta, truncation);
  r.measured["orthonormality_residual"] = f.orthonormality_residual;
  r.measured["eigen_residual"] = f.eigen_residual;
  r.measured["construction_agreement"] = f.construction_agreement;
  r.measured["metric_inverse_defect"] = f.metric_inverse_defect;
  Criteria c;
  c.add(f.orthonormality_residual, 1e-8);
  c.add(f.eigen_residual, 1e-8);
  c.add(f.construction_agreement, 1e-8);
  c.finish(r);
  r.notes = std::string(kCriteriaNote) + "; indices 1..N-1 on span(e_1..e_{N+1}) with y_n compressed to that span";
  return r;
}

VerificationReport projection_norm_check(Example example, int n_max) {
  auto r = make(prefix(example) + ".projection_norm");
  r.inputs["n_max"] = std::to_string(n_max);
  double smallest = std::numeric_limits<double>::infinity();
  with_pair(example, n_max, [&](const auto& pair) {
    for (int n = pair.base_index(); n <= n_max; ++n) {
      smallest = std::min(smallest, norm(pair.x.member(n)) * norm(pair.y.member(n)));
    }
    return 0;
  });
  r.measured["min_norm_product"] = smallest;
  r.residual = std::max(0.0, 1.0 - smallest);
  r.tolerance = 1e-12;
  decide(r);
  r.notes = "||x_n|| ||y_n|| >= |<x_n, y_n>| = 1";
  return r;
}

// ---------------------------------------------------------------------------
// Dense definedness

const char* to_string(ProbeOperator op) { return op == ProbeOperator::Hyx ? "Hyx" : "Sx"; }

VerificationReport dense_definedness_probe(Example example, ProbeOperator op, const ScalarSequence& s, int truncation,
                                           const DyadicPolicy& policy) {
  if (example == Example::Ex3) throw std::invalid_argument("dense_definedness_probe: only examples 1 and 2");
  if (truncation < 16) throw std::invalid_argument("dense_definedness_probe: N must be >= 16");
  auto r = make(prefix(example) + ".dense." + to_string(op) + "." + s.label());
  r.inputs["example"] = to_string(example);
  r.inputs["operator"] = to_string(op);
  r.inputs["sequence"] = s.label();
  r.inputs["truncation"] = std::to_string(truncation);
  r.inputs["tail_tolerance"] = format_number(policy.tolerance);

  const bool alternating = example == Example::Ex2;
  const FamilyKind kind = op == ProbeOperator::Hyx ? (alternating ? FamilyKind::Ex2Y : FamilyKind::Ex1Y)
                                                   : (alternating ? FamilyKind::Ex2X : FamilyKind::Ex1X);
  if (op == ProbeOperator::Sx) {
    for (int n = 1; n <= truncation; ++n) {
      const Complex b = s(n);
      if (b.imag() != 0.0 || !(b.real() > 0.0)) {
        throw std::invalid_argument("dense_definedness_probe: S_x weights must be strictly positive");
      }
    }
  }
  const auto coef = [&](int n) { return (alternating && n % 2 == 1) ? -s(n) : s(n); };
  const Applied<CoeffVector> partial = detail::accumulate_series<CoeffVector>(
      1, truncation, policy, [&](int n, CoeffVector& acc) { detail::add_scaled(acc, coef(n), coeff_member<Complex>(kind, n)); });
  const double norm2 = norm_squared(partial.value);
  const TailDiagnostics& t = partial.tail;
  r.measured["partial_norm_quarter"] = t.quarter_norm;
  r.measured["partial_norm_half"] = t.half_norm;
  r.measured["partial_norm_full"] = t.full_norm;
  r.measured["cauchy_increment_early"] = t.early_increment;
  r.measured["cauchy_increment_late"] = t.late_increment;
  r.findings["tail"] = to_string(t.classification);

  const SummabilityReport diag = seq_diagnostics(s, truncation, policy);
  Criteria c;
  const PartialSumProfile* condition = nullptr;
  std::string condition_name;
  CompensatedSum sq;
  for (int n = 1; n <= truncation; ++n) sq.add(std::norm(s(n)));
  const double sum_sq = sq.value();

  if (op == ProbeOperator::Hyx && !alternating) {
    condition = &diag.index_weighted_square;
    condition_name = "sum n^2 |alpha_n|^2";
    CompensatedSum diag_part;
    CompensatedSum cross;
    for (int n = 1; n <= truncation; ++n) {
      const double dn = n;
      diag_part.add(std::norm(s(n)) * (dn * dn + (dn + 1) * (dn + 1)));
      if (n < truncation) cross.add(2.0 * ((dn + 1) * (dn + 1) * (std::conj(s(n)) * s(n + 1))).real());
    }
    const double formula = diag_part.value() - cross.value();
    const double scale = 1.0 + diag_part.value();
    r.measured["cc_formula_norm_squared"] = formula;
    r.measured["direct_norm_squared"] = norm2;
    r.measured["cc_identity_scaled_residual"] = std::abs(formula - norm2) / scale;
    c.add(std::abs(formula - norm2) / scale, 1e-12);
  } else if (op == ProbeOperator::Hyx) {
    condition = &diag.square_sum;
    condition_name = "sum |alpha_n|^2";
    CompensatedSum cross;
    bool nonnegative = true;
    for (int n = 1; n <= truncation; ++n) {
      if (s(n).imag() != 0.0 || s(n).real() < 0.0) nonnegative = false;
      if (n < truncation) cross.add((s(n) * std::conj(s(n + 1))).real());
    }
    const double formula = 2.0 * (sum_sq - cross.value());
    const double scale = 1.0 + 2.0 * sum_sq;
    r.measured["identity_norm_squared"] = formula;
    r.measured["direct_norm_squared"] = norm2;
    r.measured["identity_scaled_residual"] = std::abs(formula - norm2) / scale;
    r.measured["three_sum_bound"] = 3.0 * sum_sq;
    r.measured["four_sum_bound"] = 4.0 * sum_sq;
    c.add(std::abs(formula - norm2) / scale, 1e-12);
    c.require(norm2 <= 4.0 * sum_sq * (1.0 + 1e-12));
    const bool within_three = norm2 <= 3.0 * sum_sq * (1.0 + 1e-12);
    r.findings["three_sum_bound"] = within_three ? "respected" : "exceeded";
    if (nonnegative) {
      c.require(within_three);
    } else {
      r.findings["three_sum_bound_asserted"] = "false";
    }
  } else if (!alternating) {
    condition = &diag.abs_sum;
    condition_name = "sum beta_n";
    const double bound_const = boost::math::constants::pi<double>() / std::sqrt(6.0);
    CompensatedSum weighted;
    CompensatedSum plain;
    double max_member_norm = 0.0;
    for (int n = 1; n <= truncation; ++n) {
      const double xn = norm(coeff_member<Complex>(FamilyKind::Ex1X, n));
      max_member_norm = std::max(max_member_norm, xn);
      weighted.add(s(n).real() * xn);
      plain.add(s(n).real());
    }
    const double full = std::sqrt(norm2);
    r.measured["max_member_norm"] = max_member_norm;
    r.measured["member_norm_bound"] = bound_const;
    r.measured["triangle_bound"] = weighted.value();
    r.measured["constant_bound"] = bound_const * plain.value();
    c.require(max_member_norm < bound_const);
    c.require(full <= weighted.value() * (1.0 + 1e-12));
    c.require(weighted.value() <= bound_const * plain.value());
  } else {
    condition = &diag.root_weighted_abs;
    condition_name = "sum beta_n sqrt(n)";
    CompensatedSum weighted;
    double member_norm_defect = 0.0;
    for (int n = 1; n <= truncation; ++n) {
      const double xn = norm(coeff_member<Complex>(FamilyKind::Ex2X, n));
      member_norm_defect = std::max(member_norm_defect, std::abs(xn - std::sqrt(static_cast<double>(n))));
      weighted.add(s(n).real() * std::sqrt(static_cast<double>(n)));
    }
    r.measured["root_weighted_bound"] = weighted.value();
    r.measured["member_norm_defect"] = member_norm_defect;
    c.add(member_norm_defect, 1e-12);
    c.require(std::sqrt(norm2) <= weighted.value() * (1.0 + 1e-12));
  }

  const char* status = condition->growth == Growth::Bounded   ? "holds"
                       : condition->growth == Growth::Growing ? "violated"
                                                              : "undecided";
  r.findings["condition"] = condition_name;
  r.findings["condition_status"] = status;
  r.measured["condition_partial_sum"] = condition->full;
  if (condition->growth == Growth::Bounded && t.classification == TailClass::Inconclusive) {
    r.findings["classification_asserted"] = "report-only";
  } else if (condition->growth == Growth::Bounded) {
    c.require(t.classification == TailClass::Converged);
    r.findings["classification_asserted"] = "true";
  } else {
    r.findings["classification_asserted"] = "false";
  }
  c.finish(r);
  r.notes = std::string(kCriteriaNote) +
            "; the tail class is asserted only when the sufficient condition is decided to hold,"
            " and an INCONCLUSIVE tail there is report-only";
  return r;
}

// ---------------------------------------------------------------------------
// Third example

std::vector<NormSuiteRow> ex3_norm_table(int n_max) {
  if (n_max < 0) throw std::invalid_argument("ex3_norm_table: n_max must be >= 0");
  const QuadratureRule rule = gauss_hermite(n_max + 1);
  const double x_ref = 2.0 / std::sqrt(3.0);
  const double log3 = std::log(3.0);
  // ||psi_n(x) exp(-s x^2 / 2)||^2 = (1/sqrt s) sum_i w_i psi_n(u_i / sqrt s)^2
  const auto log_norm2 = [&](int n, double s) {
    const double inv_root = 1.0 / std::sqrt(s);
    double peak = -INFINITY;
    std::vector<double> terms(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const LogMagnitude psi = orthonormal_hermite(n, rule.nodes[i] * inv_root);
      terms[i] = psi.is_zero() ? -INFINITY : rule.log_weights[i] + 2.0 * psi.log_value();
      peak = std::max(peak, terms[i]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - peak);
    return peak + std::log(acc) + std::log(inv_root);
  };
  std::vector<NormSuiteRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    NormSuiteRow row;
    row.n = n;
    row.log_x_norm2 = log_norm2(n, 0.5);
    row.log_y_norm2 = log_norm2(n, 1.5);
    row.log_legendre = legendre_log(n, x_ref).log_value();
    row.x_ratio = std::exp(row.log_x_norm2 - 0.5 * n * log3 - row.log_legendre);
    row.y_ratio = std::exp(row.log_y_norm2 + 0.5 * n * log3 - row.log_legendre);
    rows.push_back(row);
  }
  return rows;
}

VerificationReport ex3_norm_suite(int n_max, int assert_max) {
  if (n_max > 200 || n_max < 1) throw std::invalid_argument("ex3_norm_suite: n_max must lie in [1, 200]");
  auto r = make("ex3.norm_suite");
  r.inputs["n_max"] = std::to_string(n_max);
  r.inputs["assert_max"] = std::to_string(assert_max);
  const auto rows = ex3_norm_table(n_max);
  const int upto = std::min(assert_max, n_max);
  const double sqrt2 = std::sqrt(2.0);
  const double log3 = std::log(3.0);

  double x_dev = 0.0;
  double x_dev_all = 0.0;
  double y_min = INFINITY;
  double y_max = -INFINITY;
  for (const auto& row : rows) {
    const double dev = std::abs(row.x_ratio / sqrt2 - 1.0);
    x_dev_all = std::max(x_dev_all, dev);
    if (row.n <= upto) {
      x_dev = std::max(x_dev, dev);
      y_min = std::min(y_min, row.y_ratio);
      y_max = std::max(y_max, row.y_ratio);
    }
  }
  const double y_spread = (y_max - y_min) / y_min;

  double cross = 0.0;
  const int cross_max = std::min(40, n_max);
  for (int n = 0; n <= cross_max; ++n) {
    const double xw = std::pow(norm(gauss_member(FamilyKind::Ex3X, n)), 2);
    const double yw = std::pow(norm(gauss_member(FamilyKind::Ex3Y, n)), 2);
    cross = std::max(cross, std::abs(xw / std::exp(rows[n].log_x_norm2) - 1.0));
    cross = std::max(cross, std::abs(yw / std::exp(rows[n].log_y_norm2) - 1.0));
  }

  Criteria c;
  c.add(x_dev, 1e-8);
  c.add(y_spread, 1e-8);
  c.add(cross, 1e-12);
  r.measured["x_ratio_max_relative_deviation"] = x_dev;
  r.measured["x_ratio_max_relative_deviation_all_n"] = x_dev_all;
  r.measured["y_ratio_relative_spread"] = y_spread;
  r.measured["y_ratio_measured"] = rows.front().y_ratio;
  r.measured["y_ratio_displayed_formula"] = 2.0 * std::sqrt(2.0 / 3.0);
  r.measured["quadrature_route_agreement"] = cross;

  const auto log_prod = [&](int n) { return rows[n].log_x_norm2 + rows[n].log_y_norm2; };
  if (n_max >= 101) {
    const double step = (log_prod(101) - log_prod(100)) / log3;
    const double corrected = (log_prod(101) + std::log(101.0) - log_prod(100) - std::log(100.0)) / log3;
    r.measured["product_growth_exponent_at_100"] = step;
    r.measured["product_growth_exponent_corrected_at_100"] = corrected;
    c.add(std::abs(step - 1.0), 0.02);
  }
  const int last = n_max;
  r.measured["product_constant_measured"] = std::exp(log_prod(last) + std::log(static_cast<double>(std::max(last, 1))) -
                                                     last * log3);
  r.measured["product_constant_displayed"] = 2.0 / (std::sqrt(3.0) * boost::math::constants::pi<double>());
  r.measured["product_at_n_max_log3"] = log_prod(last) / log3;
  r.findings["y_ratio_constant"] = "report-only";
  r.findings["product_constant"] = "report-only";
  c.finish(r);
  r.notes = std::string(kCriteriaNote) +
            "; the measured y-norm constant is half the displayed formula, so only its n-independence is asserted";
  return r;
}

VerificationReport ex3_sy_is_t_squared(const GaussPolyVector& f, const std::string& label, int truncation) {
  if (f.rate() < 0.5) throw std::invalid_argument("ex3_sy_is_t_squared: f must have rate >= 1/2");
  auto r = make("ex3.sy_is_t_squared." + label);
  r.inputs["f"] = label;
  r.inputs["truncation"] = std::to_string(truncation);
  const auto pair = gauss_pair(truncation);
  const MetricOperator<GaussPolyVector> sy(pair.y, ScalarSequence::constant({1.0, 0.0}), truncation);
  const Applied<GaussPolyVector> applied = sy.apply(f);
  const GaussPolyVector t2f = apply_gauss_operator(GaussOperator::TMult, apply_gauss_operator(GaussOperator::TMult, f));
  r.residual = distance(applied.value, t2f);
  r.tolerance = 1e-8;
  r.measured["residual"] = r.residual;
  r.measured["late_increment"] = applied.tail.late_increment;
  r.findings["tail"] = to_string(applied.tail.classification);
  decide(r);
  return r;
}

VerificationReport ex3_sy_on_x_check(int truncation) {
  auto r = make("ex3.sy_on_x");
  r.inputs["truncation"] = std::to_string(truncation);
  const auto pair = gauss_pair(truncation);
  const MetricOperator<GaussPolyVector> sy(pair.y, ScalarSequence::constant({1.0, 0.0}), truncation);
  double worst = 0.0;
  for (int n = 0; n <= truncation; ++n) worst = std::max(worst, distance(sy(pair.x.member(n)), pair.y.member(n)));
  r.residual = worst;
  r.tolerance = 1e-12;
  decide(r);
  return r;
}

VerificationReport ex3_sx_weak_check(const GaussPolyVector& xi, const GaussPolyVector& g, const std::string& label,
                                     int truncation, double tolerance) {
  auto r = make("ex3.sx_weak." + label);
  r.inputs["case"] = label;
  r.inputs["truncation"] = std::to_string(truncation);
  const GaussPolyVector t_inv2 =
      apply_gauss_operator(GaussOperator::TMultInv, apply_gauss_operator(GaussOperator::TMultInv, g));
  const auto pair = gauss_pair(truncation);
  const MetricOperator<GaussPolyVector> sx(pair.x, ScalarSequence::constant({1.0, 0.0}), truncation);
  const Applied<GaussPolyVector> applied = sx.apply(g);
  r.residual = std::abs(inner(xi, t_inv2) - inner(xi, applied.value));
  r.tolerance = tolerance;
  r.measured["residual"] = r.residual;
  r.findings["tail"] = to_string(applied.tail.classification);
  decide(r);
  return r;
}

VerificationReport ex3_eigenrelation_check(int n_max) {
  auto r = make("ex3.h_eigenrelation");
  r.inputs["n_max"] = std::to_string(n_max);
  double h1 = 0.0;
  double h2 = 0.0;
  double hosc = 0.0;
  double t_map = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const Complex e(n + 0.5, 0.0);
    const GaussPolyVector x = gauss_member(FamilyKind::Ex3X, n);
    const GaussPolyVector y = gauss_member(FamilyKind::Ex3Y, n);
    const GaussPolyVector en = gauss_member(FamilyKind::RefEGauss, n);
    h1 = std::max(h1, distance(apply_gauss_operator(GaussOperator::H1, y), e * y) / norm(y));
    h2 = std::max(h2, distance(apply_gauss_operator(GaussOperator::H2, x), e * x) / norm(x));
    hosc = std::max(hosc, distance(apply_gauss_operator(GaussOperator::HOsc, en), e * en));
    t_map = std::max(t_map, distance(apply_gauss_operator(GaussOperator::TMult, en), y));
  }
  r.measured["h1_relative_residual"] = h1;
  r.measured["h2_relative_residual"] = h2;
  r.measured["hosc_residual"] = hosc;
  r.measured["t_maps_e_to_y"] = t_map;
  Criteria c;
  c.add(h1, 1e-8);
  c.add(h2, 1e-8);
  c.add(hosc, 1e-8);
  c.add(t_map, 1e-12);
  c.finish(r);
  r.notes = kCriteriaNote;
  return r;
}

VerificationReport ex3_similarity_check(int span, int cases, Rng& rng) {
  auto r = make("ex3.similarity");
  r.inputs["span"] = std::to_string(span);
  r.inputs["cases"] = std::to_string(cases);
  const auto op = [](GaussOperator o, const GaussPolyVector& f) { return apply_gauss_operator(o, f); };
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (int c = 0; c < cases + span + 1; ++c) {
    const GaussPolyVector f =
        c <= span ? gauss_member(FamilyKind::RefEGauss, c) : random_hermite_combination(span, rng);
    const double nf = norm(f);
    const GaussPolyVector a1 = op(GaussOperator::TMult, op(GaussOperator::HOsc, op(GaussOperator::TMultInv, f)));
    const GaussPolyVector a2 = op(GaussOperator::TMultInv, op(GaussOperator::HOsc, op(GaussOperator::TMult, f)));
    worst1 = std::max(worst1, distance(a1, op(GaussOperator::H1, f)) / nf);
    worst2 = std::max(worst2, distance(a2, op(GaussOperator::H2, f)) / nf);
  }
  r.measured["t_h_tinv_vs_h1"] = worst1;
  r.measured["tinv_h_t_vs_h2"] = worst2;
  r.residual = std::max(worst1, worst2);
  r.tolerance = 1e-10;
  decide(r);
  r.notes = "residuals relative to ||f||; f ranges over e_0..e_span and random combinations";
  return r;
}

VerificationReport ex3_h_adjoint_check(int span, int cases, Rng& rng) {
  auto r = make("ex3.h_adjoint_pairing");
  r.inputs["span"] = std::to_string(span);
  r.inputs["cases"] = std::to_string(cases);
  double worst = 0.0;
  for (int c = 0; c < cases; ++c) {
    const GaussPolyVector f = random_hermite_combination(span, rng);
    const GaussPolyVector g = random_hermite_combination(span, rng);
    const Complex lhs = inner(g, apply_gauss_operator(GaussOperator::H2, f));
    const Complex rhs = inner(apply_gauss_operator(GaussOperator::H1, g), f);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  r.residual = worst;
  r.tolerance = 1e-10;
  decide(r);
  return r;
}

}  // namespace qbasis
