#pragma once

// Claim-by-claim checks producing VerificationReport records.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qbasis/families.hpp"
#include "qbasis/multipliers.hpp"
#include "qbasis/seqspace.hpp"

namespace qbasis {

enum class Verdict { Pass, Fail, ReportOnly };

const char* to_string(Verdict v);

/// Pass iff residual <= tolerance. Report-only records carry measured
/// values and never affect an exit status.
struct VerificationReport {
  std::string check_id;
  std::map<std::string, std::string> inputs;
  std::map<std::string, double> measured;
  std::map<std::string, std::string> findings;  // categorical outcomes such as tail classes
  double residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::ReportOnly;
  std::string notes;

  bool passed() const { return verdict != Verdict::Fail; }
};

/// Sets verdict to Pass or Fail from residual and tolerance (NaN fails).
void decide(VerificationReport& r);

/// Formats a double with 17 significant digits.
std::string format_number(double v);

/// Deterministic 64-bit stream; every check derives its own stream from
/// the run seed and its check id.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, const std::string& stream);

  std::uint64_t next();
  double uniform();                   // [0, 1)
  double uniform(double lo, double hi);
  int integer(int lo, int hi);        // inclusive
  Complex complex_unit_box();         // re, im in [-1, 1)

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Quasi-basis identity

/// |<f,g> - sum_{n<=N} <f,x_n><y_n,g>| and the mirrored sum's residual.
template <class V>
std::pair<double, double> quasi_basis_residual(const BiorthogonalPair<V>& pair, const V& f, const V& g,
                                               int truncation) {
  const Complex fg = inner(f, g);
  CompensatedSum re1, im1, re2, im2;
  for (int n = pair.base_index(); n <= truncation; ++n) {
    const V x = pair.x.member(n);
    const V y = pair.y.member(n);
    const Complex t1 = inner(f, x) * inner(y, g);
    const Complex t2 = inner(f, y) * inner(x, g);
    re1.add(t1.real());
    im1.add(t1.imag());
    re2.add(t2.real());
    im2.add(t2.imag());
  }
  return {std::abs(fg - Complex(re1.value(), im1.value())), std::abs(fg - Complex(re2.value(), im2.value()))};
}

/// Both quasi-basis sums on random finitely supported f, g.
VerificationReport quasi_basis_check(Example example, int cases, int max_support, int truncation, Rng& rng);

VerificationReport biorthogonality_check(Example example, int probe);

// ---------------------------------------------------------------------------
// First example

/// <y_n, h_N> = 0 exactly for n <= N-1, the truncated quasi-basis sum for
/// (h, h) vanishes while ||h_N||^2 > 0, and pi^2/6 - ||h_N||^2 lies in
/// (0, 1/M] with M = norm_truncation.
VerificationReport ex1_completeness_witness(int truncation, int norm_truncation = 1000000);

/// Exact triangular solve of h_N = sum alpha_k x_k for each N in
/// [2, n_max]; passes when every solution is the unit vector at N. With
/// exact = false only the floating-point solve runs.
VerificationReport ex1_expansion_escape(int n_max, bool exact = true);

RationalVector ex1_expansion_coefficients(int truncation);

// ---------------------------------------------------------------------------
// Second example

/// ||sum_{n<=N} <x_n, e_1> y_n - e_1|| = 1 for every N <= n_max.
VerificationReport ex2_e1_failure(int n_max);

/// alpha with sum alpha_k x_k = sum c_k e_k, by back-substitution on T_M.
RationalVector ex2_expansion_solver(const RationalVector& c);
CoeffVector ex2_expansion_solver(const CoeffVector& c);

/// det T_{2N} = 1 for N <= n_max and exact round trips T alpha = c on
/// random integer vectors of dimension round_trip_dim.
VerificationReport ex2_expansion_check(int n_max, int round_trip_dim, int cases, bool exact, Rng& rng);

/// <x_n, e_k> = (-1)^{n+k} for n >= k, 0 otherwise.
VerificationReport ex2_innpro_check(int probe);

// ---------------------------------------------------------------------------
// Multiplier identities

/// ||H^alpha x_k - alpha_k x_k|| <= 1e-12 (1 + |alpha_k| ||x_k||) for k <= k_max,
/// both orientations.
VerificationReport multiplier_eigen_check(Example example, const ScalarSequence& alpha, int k_max, int truncation);

/// alpha = 1 acts as the identity on the left family members.
VerificationReport identity_collapse_check(Example example, int k_max, int truncation);

VerificationReport factorization_check(Example example, int cases, int truncation, Rng& rng);
VerificationReport intertwining_check(Example example, int sequences, int truncation, Rng& rng);
VerificationReport adjoint_pairing_check(Example example, int cases, int truncation, Rng& rng);

/// A complex alpha violates the pairing; passes when a counterexample is found.
VerificationReport adjoint_counterexample_check(Example example, int truncation);

/// Metric matrices S^beta_x, S^gamma_y on span(e_1..e_{N+1}) are Hermitian PSD.
VerificationReport metric_psd_check(Example example, const ScalarSequence& beta, int truncation);

VerificationReport formal_frame_check(Example example, const ScalarSequence& alpha, const ScalarSequence& beta,
                                      int truncation);

// ---------------------------------------------------------------------------
// Dense definedness

enum class ProbeOperator { Hyx, Sx };

const char* to_string(ProbeOperator op);

/// Evaluates the partial sums behind the dense-definedness conditions of
/// H_{y,x} (sum alpha_n y_n resp. sum (-1)^n alpha_n y_n) or S_x
/// (sum beta_n x_n resp. sum (-1)^n beta_n x_n), checks the closed-form
/// norm identities and bounds, and compares the tail classification with
/// the sufficient condition as judged by seq_diagnostics.
VerificationReport dense_definedness_probe(Example example, ProbeOperator op, const ScalarSequence& s, int truncation,
                                           const DyadicPolicy& policy = {});

// ---------------------------------------------------------------------------
// Third example

struct NormSuiteRow {
  int n = 0;
  double log_x_norm2 = 0.0;  // log ||x_n||^2
  double log_y_norm2 = 0.0;
  double log_legendre = 0.0;  // log P_n(2/sqrt 3)
  double x_ratio = 0.0;       // ||x_n||^2 / (3^{n/2} P_n)
  double y_ratio = 0.0;       // ||y_n||^2 / (3^{-n/2} P_n)
};

/// ||x_n||^2 and ||y_n||^2 for n = 0..n_max in the log domain.
std::vector<NormSuiteRow> ex3_norm_table(int n_max);

VerificationReport ex3_norm_suite(int n_max, int assert_max = 40);

/// ||sum_{n<=N} <y_n,f> y_n - T^2 f||; f must have rate >= 1/2.
VerificationReport ex3_sy_is_t_squared(const GaussPolyVector& f, const std::string& label, int truncation);

/// S_y x_n = y_n for n <= N.
VerificationReport ex3_sy_on_x_check(int truncation);

/// |<xi, T^-2 g> - <xi, sum_{n<=N} <x_n,g> x_n>|.
VerificationReport ex3_sx_weak_check(const GaussPolyVector& xi, const GaussPolyVector& g, const std::string& label,
                                     int truncation, double tolerance = 1e-8);

/// H1 y_n = (n+1/2) y_n and H2 x_n = (n+1/2) x_n for n <= n_max, and
/// hosc e_0 = e_0 / 2.
VerificationReport ex3_eigenrelation_check(int n_max);

/// T hosc T^-1 = H1 and T^-1 hosc T = H2 on span(e_0..e_span).
VerificationReport ex3_similarity_check(int span, int cases, Rng& rng);

/// <g, H2 f> = <H1 g, f> on random rate-1/2 vectors.
VerificationReport ex3_h_adjoint_check(int span, int cases, Rng& rng);

/// ||x_n|| ||y_n|| >= 1 for n <= n_max.
VerificationReport projection_norm_check(Example example, int n_max);

/// Random combination of e_0..e_span with complex coefficients.
GaussPolyVector random_hermite_combination(int span, Rng& rng);

}  // namespace qbasis
