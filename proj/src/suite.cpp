#include "qbasis/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace qbasis {

namespace {

double parse_double(const std::string& text, const std::string& what) {
  if (text.empty()) throw std::invalid_argument("empty number in " + what);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("malformed number '" + text + "' in " + what);
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

ScalarSequence relabel(const ScalarSequence& s, const std::string& label) { return ScalarSequence(label, s); }

}  // namespace

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') return {parse_double(text, "complex literal"), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading one.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  const auto imag_of = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s, "complex literal");
  };
  if (cut == std::string::npos) return {0.0, imag_of(body)};
  return {parse_double(body.substr(0, cut), "complex literal"), imag_of(body.substr(cut))};
}

ScalarSequence parse_sequence(const std::string& spec) {
  if (spec == "inv_n") return relabel(ScalarSequence::inverse_power(1.0), spec);
  if (spec == "inv_n2") return relabel(ScalarSequence::inverse_power(2.0), spec);
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (colon != std::string::npos) {
    if (head == "pow") return relabel(ScalarSequence::inverse_power(parse_double(rest, spec)), spec);
    if (head == "geom") return relabel(ScalarSequence::geometric(parse_double(rest, spec)), spec);
    if (head == "const") return relabel(ScalarSequence::constant(parse_complex(rest)), spec);
    if (head == "affine") {
      const auto parts = split(rest, ':');
      if (parts.size() != 2) throw std::invalid_argument("affine preset needs affine:a:b");
      return relabel(ScalarSequence::affine(parse_double(parts[0], spec), parse_double(parts[1], spec)), spec);
    }
    if (head == "list") {
      std::vector<Complex> values;
      for (const auto& item : split(rest, ',')) values.push_back(parse_complex(item));
      if (values.empty()) throw std::invalid_argument("empty list preset");
      return ScalarSequence::from_values(spec, std::move(values));
    }
    throw std::invalid_argument("unknown sequence preset '" + spec + "'");
  }
  if (spec.find(',') != std::string::npos) {
    std::vector<Complex> values;
    for (const auto& item : split(spec, ',')) values.push_back(parse_complex(item));
    return ScalarSequence::from_values(spec, std::move(values));
  }
  throw std::invalid_argument("unknown sequence preset '" + spec + "'");
}

void validate(const SuiteConfig& config) {
  if (config.truncation < 2) throw std::invalid_argument("truncation N must be >= 2");
  if (config.tail_tolerance && !(*config.tail_tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (config.random_cases < 1) throw std::invalid_argument("random case count must be >= 1");
  if (config.sequence) parse_sequence(*config.sequence);
}

namespace {

DyadicPolicy policy_of(const SuiteConfig& c) {
  DyadicPolicy p;
  if (c.tail_tolerance) p.tolerance = *c.tail_tolerance;
  return p;
}

bool positive_real(const ScalarSequence& s, int count) {
  for (int n = 1; n <= count; ++n) {
    const Complex v = s(n);
    if (v.imag() != 0.0 || !(v.real() > 0.0)) return false;
  }
  return true;
}

void add_probes(Example ex, const SuiteConfig& c, std::vector<VerificationReport>& out) {
  const int n = std::max(c.truncation, 16);
  const DyadicPolicy policy = policy_of(c);
  std::vector<std::pair<ProbeOperator, ScalarSequence>> plan;
  const auto ops = c.probe ? std::vector<ProbeOperator>{*c.probe}
                           : std::vector<ProbeOperator>{ProbeOperator::Hyx, ProbeOperator::Sx};
  if (c.sequence) {
    const ScalarSequence s = parse_sequence(*c.sequence);
    for (ProbeOperator op : ops) {
      if (op == ProbeOperator::Sx && !positive_real(s, n)) {
        if (c.probe) throw std::invalid_argument("S_x probes need a strictly positive sequence");
        continue;
      }
      plan.emplace_back(op, s);
    }
  } else {
    std::vector<std::string> specs{"inv_n", "inv_n2", "geom:0.5"};
    for (int k = 2; k <= 10; ++k) {
      std::ostringstream os;
      os << "pow:" << k * 0.2;
      specs.push_back(os.str());
    }
    for (ProbeOperator op : ops) {
      for (const auto& spec : specs) plan.emplace_back(op, parse_sequence(spec));
    }
  }
  for (const auto& [op, s] : plan) out.push_back(dense_definedness_probe(ex, op, s, n, policy));
}

Rng stream(const SuiteConfig& c, const std::string& id) { return Rng(c.seed, id); }

std::vector<VerificationReport> coefficient_suite(Example ex, const SuiteConfig& c) {
  const std::string p = to_string(ex);
  const int n = c.truncation;
  const ScalarSequence alpha = c.sequence ? parse_sequence(*c.sequence) : parse_sequence("inv_n2");
  const ScalarSequence beta = parse_sequence("geom:0.5");
  std::vector<VerificationReport> out;
  out.push_back(biorthogonality_check(ex, std::max(n, 40)));
  {
    Rng rng = stream(c, p + ".quasi_basis");
    out.push_back(quasi_basis_check(ex, 2 * c.random_cases, 20, n, rng));
  }
  if (ex == Example::Ex1) {
    out.push_back(ex1_completeness_witness(n));
    out.push_back(ex1_expansion_escape(std::min(std::max(n, 2), 200), c.exact));
  } else {
    Rng rng = stream(c, p + ".expansion_matrix");
    out.push_back(ex2_e1_failure(std::max(n, 500)));
    out.push_back(ex2_expansion_check(10, 12, 20, c.exact, rng));
    out.push_back(ex2_innpro_check(30));
  }
  out.push_back(multiplier_eigen_check(ex, alpha, std::min(30, n), n));
  out.push_back(identity_collapse_check(ex, std::min(30, n), n));
  {
    Rng rng = stream(c, p + ".factorization");
    out.push_back(factorization_check(ex, c.random_cases, n, rng));
  }
  {
    Rng rng = stream(c, p + ".intertwining");
    out.push_back(intertwining_check(ex, 5, n, rng));
  }
  {
    Rng rng = stream(c, p + ".adjoint_pairing");
    out.push_back(adjoint_pairing_check(ex, c.random_cases, n, rng));
  }
  out.push_back(adjoint_counterexample_check(ex, n));
  out.push_back(metric_psd_check(ex, beta, n));
  out.push_back(formal_frame_check(ex, parse_sequence("inv_n2"), beta, 12));
  out.push_back(projection_norm_check(ex, std::max(n, 40)));
  add_probes(ex, c, out);
  return out;
}

std::vector<VerificationReport> gauss_suite(const SuiteConfig& c) {
  const int n = c.truncation;
  const int heavy = std::min(n, 12);
  // series checks need at least 40 terms to reach their tolerances
  const int series = std::clamp(n, 40, kMaxGaussDegree);
  const ScalarSequence alpha = c.sequence ? parse_sequence(*c.sequence) : parse_sequence("inv_n2");
  const auto e = [](int k) { return gauss_member(FamilyKind::RefEGauss, k); };
  const auto y = [](int k) { return gauss_member(FamilyKind::Ex3Y, k); };
  std::vector<VerificationReport> out;
  out.push_back(biorthogonality_check(Example::Ex3, std::min(n, 40)));
  {
    Rng rng = stream(c, "ex3.quasi_basis");
    out.push_back(quasi_basis_check(Example::Ex3, 2 * c.random_cases, 8, series, rng));
  }
  out.push_back(ex3_norm_suite(200, 40));
  {
    Rng rng = stream(c, "ex3.sy_is_t_squared");
    out.push_back(ex3_sy_is_t_squared(e(0), "e0", series));
    out.push_back(ex3_sy_is_t_squared(e(1) + Complex(2.0) * e(4), "e1_plus_2e4", series));
    out.push_back(ex3_sy_is_t_squared(e(2) - e(5), "e2_minus_e5", series));
    out.push_back(ex3_sy_is_t_squared(random_hermite_combination(8, rng), "random", series));
    out.push_back(ex3_sy_is_t_squared(y(1), "y1", series));
  }
  out.push_back(ex3_sy_on_x_check(std::min(n, 40)));
  {
    Rng rng = stream(c, "ex3.sx_weak");
    out.push_back(ex3_sx_weak_check(e(1), y(3), "y3_e1", series));
    out.push_back(ex3_sx_weak_check(e(0) + e(3), y(1) + y(2), "y1_plus_y2", series));
    out.push_back(ex3_sx_weak_check(random_hermite_combination(8, rng), y(5), "y5_random", series));
  }
  out.push_back(ex3_eigenrelation_check(20));
  {
    Rng rng = stream(c, "ex3.similarity");
    out.push_back(ex3_similarity_check(10, 10, rng));
  }
  {
    Rng rng = stream(c, "ex3.h_adjoint_pairing");
    out.push_back(ex3_h_adjoint_check(8, 20, rng));
  }
  out.push_back(multiplier_eigen_check(Example::Ex3, alpha, std::min(30, n), series));
  out.push_back(identity_collapse_check(Example::Ex3, std::min(10, n), series));
  {
    Rng rng = stream(c, "ex3.factorization");
    out.push_back(factorization_check(Example::Ex3, std::min(c.random_cases, 20), heavy, rng));
  }
  {
    Rng rng = stream(c, "ex3.intertwining");
    out.push_back(intertwining_check(Example::Ex3, 2, heavy, rng));
  }
  {
    Rng rng = stream(c, "ex3.adjoint_pairing");
    out.push_back(adjoint_pairing_check(Example::Ex3, std::min(c.random_cases, 20), heavy, rng));
  }
  out.push_back(adjoint_counterexample_check(Example::Ex3, heavy));
  out.push_back(metric_psd_check(Example::Ex3, parse_sequence("geom:0.5"), heavy));
  out.push_back(projection_norm_check(Example::Ex3, std::min(n, 40)));
  return out;
}

void sort_reports(std::vector<VerificationReport>& v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const VerificationReport& a, const VerificationReport& b) { return a.check_id < b.check_id; });
}

}  // namespace

std::vector<VerificationReport> run_suite(Example example, const SuiteConfig& config) {
  validate(config);
  auto out = example == Example::Ex3 ? gauss_suite(config) : coefficient_suite(example, config);
  sort_reports(out);
  return out;
}

std::vector<VerificationReport> run_all(const SuiteConfig& config) {
  std::vector<VerificationReport> out;
  for (Example e : {Example::Ex1, Example::Ex2, Example::Ex3}) {
    auto part = run_suite(e, config);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  sort_reports(out);
  return out;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.passed(); });
}

}  // namespace qbasis
