#include "qbasis/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <variant>

#include "qbasis/report_io.hpp"
#include "qbasis/specfun.hpp"
#include "qbasis/suite.hpp"

namespace qbasis {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyOptions {
  std::string example = "all";
  int n = 40;
  std::string seq;
  std::string op;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = SuiteConfig{}.seed;
  double tol = 0.0;
  bool exact = true;
  int cases = SuiteConfig{}.random_cases;
};

struct ApplyOptions {
  std::string op;
  std::string seq;
  std::string vec;
  std::string example = "ex1";
  int n = 40;
  int times = 1;
  std::string format = "json";
};

Example parse_example(const std::string& s) {
  if (s == "ex1") return Example::Ex1;
  if (s == "ex2") return Example::Ex2;
  if (s == "ex3") return Example::Ex3;
  throw std::invalid_argument("unknown example '" + s + "'");
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  SuiteConfig c;
  c.truncation = o.n;
  if (!o.seq.empty()) c.sequence = o.seq;
  if (!o.op.empty()) c.probe = o.op == "Hyx" ? ProbeOperator::Hyx : ProbeOperator::Sx;
  c.seed = o.seed;
  if (o.tol != 0.0) c.tail_tolerance = o.tol;
  c.exact = o.exact;
  c.random_cases = o.cases;
  validate(c);

  const std::vector<VerificationReport> reports =
      o.example == "all" ? run_all(c) : run_suite(parse_example(o.example), c);

  std::map<std::string, std::string> meta{{"example", o.example},
                                          {"truncation", std::to_string(o.n)},
                                          {"sequence", o.seq.empty() ? "default" : o.seq},
                                          {"operator", o.op.empty() ? "default" : o.op},
                                          {"seed", std::to_string(o.seed)},
                                          {"exact", o.exact ? "true" : "false"},
                                          {"random_cases", std::to_string(o.cases)},
                                          {"tail_tolerance", format_number(o.tol != 0.0 ? o.tol : DyadicPolicy{}.tolerance)}};
  std::string text;
  if (o.format == "json") {
    text = to_json(reports, meta);
  } else if (o.format == "csv") {
    text = to_csv(reports);
  } else {
    text = to_text(reports);
  }
  write_output(o.out, text, out);
  if (!o.out.empty()) {
    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.passed() ? 0 : 1;
    out << reports.size() << " reports, " << failed << " failed, written to " << o.out << "\n";
  }
  return all_passed(reports) ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// apply

using Vector = std::variant<CoeffVector, GaussPolyVector>;

std::pair<char, int> parse_member_ref(const std::string& spec) {
  if (spec.size() < 3 || spec[1] != ':' || (spec[0] != 'x' && spec[0] != 'y' && spec[0] != 'e')) return {0, 0};
  const std::string digits = spec.substr(2);
  if (digits.find_first_not_of("0123456789") != std::string::npos || digits.empty() || digits.size() > 6) return {0, 0};
  return {spec[0], std::stoi(digits)};
}

Vector parse_vector(Example ex, const std::string& spec) {
  const auto [kind, index] = parse_member_ref(spec);
  if (kind != 0) {
    if (ex == Example::Ex3) {
      const FamilyKind k = kind == 'x' ? FamilyKind::Ex3X : kind == 'y' ? FamilyKind::Ex3Y : FamilyKind::RefEGauss;
      return gauss_member(k, index);
    }
    if (kind == 'e') {
      if (index == 0) throw std::out_of_range("e:k is 1-based for ex1 and ex2");
      return CoeffVector::unit(index);
    }
    const bool ex1 = ex == Example::Ex1;
    const FamilyKind k = kind == 'x' ? (ex1 ? FamilyKind::Ex1X : FamilyKind::Ex2X) : (ex1 ? FamilyKind::Ex1Y : FamilyKind::Ex2Y);
    return coeff_member<Complex>(k, index);
  }
  std::vector<Complex> values;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_complex(item));
  if (values.empty()) throw std::invalid_argument("empty vector spec");
  if (ex != Example::Ex3) return CoeffVector(values);
  GaussPolyVector f;
  for (std::size_t k = 0; k < values.size(); ++k) {
    f += values[k] * gauss_member(FamilyKind::RefEGauss, static_cast<int>(k));
  }
  return f;
}

nlohmann::json complex_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

nlohmann::json vector_json(const Vector& v) {
  nlohmann::json j;
  if (const auto* c = std::get_if<CoeffVector>(&v)) {
    j["kind"] = "coefficients";
    j["first_index"] = 1;
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t k = 1; k <= c->support_end(); ++k) list.push_back(complex_json((*c)(k)));
    j["values"] = list;
    j["norm"] = norm(*c);
  } else {
    const auto& g = std::get<GaussPolyVector>(v);
    j["kind"] = "gaussian";
    j["rate"] = g.rate();
    nlohmann::json list = nlohmann::json::array();
    for (int k = 0; k <= g.degree(); ++k) list.push_back(complex_json(g.coefficient(static_cast<std::size_t>(k))));
    j["poly"] = list;
    j["norm"] = norm(g);
  }
  return j;
}

nlohmann::json tail_json(const TailDiagnostics& t) {
  return {{"truncation", t.truncation},         {"quarter_norm", t.quarter_norm},
          {"half_norm", t.half_norm},           {"full_norm", t.full_norm},
          {"early_increment", t.early_increment}, {"late_increment", t.late_increment},
          {"classification", to_string(t.classification)}};
}

template <class V>
Applied<V> apply_series(const std::string& op, const BiorthogonalPair<V>& pair, const ScalarSequence& s, int n,
                        const V& f) {
  if (op == "Hxy") return MultiplierOperator<V>(pair, Orientation::XY, s, n).apply(f);
  if (op == "Hyx") return MultiplierOperator<V>(pair, Orientation::YX, s, n).apply(f);
  if (op == "Sx") return MetricOperator<V>(pair.x, s, n).apply(f);
  if (op == "Sy") return MetricOperator<V>(pair.y, s, n).apply(f);
  if (op == "A") return LadderOperator<V>(pair, Orientation::XY, LadderDirection::Lower, s, n).apply(f);
  return LadderOperator<V>(pair, Orientation::XY, LadderDirection::Raise, s, n).apply(f);
}

int cmd_apply(const ApplyOptions& o, std::ostream& out) {
  if (o.n < 2) throw std::invalid_argument("truncation N must be >= 2");
  if (o.times < 1) throw std::invalid_argument("--times must be >= 1");
  const Example ex = parse_example(o.example);
  static const std::map<std::string, GaussOperator> gauss_ops{{"H1", GaussOperator::H1},
                                                              {"H2", GaussOperator::H2},
                                                              {"hosc", GaussOperator::HOsc},
                                                              {"T", GaussOperator::TMult},
                                                              {"Tinv", GaussOperator::TMultInv}};
  const bool is_gauss_op = gauss_ops.count(o.op) > 0;
  if (is_gauss_op && ex != Example::Ex3) throw std::invalid_argument(o.op + " acts only on the ex3 space");
  const bool needs_seq = o.op == "Hxy" || o.op == "Hyx" || o.op == "A" || o.op == "B";
  if (needs_seq && o.seq.empty()) throw std::invalid_argument(o.op + " needs --seq");
  const ScalarSequence s = parse_sequence(o.seq.empty() ? "const:1" : o.seq);

  Vector v = parse_vector(ex, o.vec);
  nlohmann::json result;
  result["operator"] = o.op;
  result["example"] = o.example;
  result["input"] = o.vec;
  result["times"] = o.times;
  if (!is_gauss_op) {
    result["sequence"] = s.label();
    result["truncation"] = o.n;
  }
  nlohmann::json steps = nlohmann::json::array();
  for (int step = 1; step <= o.times; ++step) {
    nlohmann::json j;
    j["step"] = step;
    if (is_gauss_op) {
      try {
        v = apply_gauss_operator(gauss_ops.at(o.op), std::get<GaussPolyVector>(v));
      } catch (const DomainError& e) {
        throw DomainError("application " + std::to_string(step) + " of " + o.op + ": " + e.what());
      }
    } else {
      if (ex == Example::Ex3) {
        const auto applied = apply_series(o.op, gauss_pair(o.n), s, o.n, std::get<GaussPolyVector>(v));
        v = applied.value;
        j["tail"] = tail_json(applied.tail);
      } else {
        const auto applied = apply_series(o.op, coeff_pair(ex), s, o.n, std::get<CoeffVector>(v));
        v = applied.value;
        j["tail"] = tail_json(applied.tail);
      }
    }
    j["result"] = vector_json(v);
    steps.push_back(std::move(j));
  }
  result["steps"] = steps;
  if (o.format == "json") {
    out << result.dump(2) << "\n";
  } else {
    const nlohmann::json& last = steps.back();
    out << last["result"].dump() << "\n";
    if (last.contains("tail")) out << "tail " << last["tail"].dump() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biorthogonal families, multiplier operators and verification suites"};
  app.require_subcommand(1);
  VerifyOptions vo;
  ApplyOptions ao;

  auto* verify = app.add_subcommand("verify", "Run the verification suite of an example");
  verify->add_option("--example", vo.example, "ex1, ex2, ex3 or all")
      ->check(CLI::IsMember({"ex1", "ex2", "ex3", "all"}));
  verify->add_option("--n", vo.n, "Truncation N")->check(CLI::Range(2, 1000000));
  verify->add_option("--seq", vo.seq, "Sequence preset: inv_n, inv_n2, pow:p, geom:r, const:c, affine:a:b, list:...");
  verify->add_option("--op", vo.op, "Dense-definedness probe operator")->check(CLI::IsMember({"Hyx", "Sx"}));
  verify->add_option("--format", vo.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  verify->add_option("--out", vo.out, "Output file (default stdout)");
  verify->add_option("--seed", vo.seed, "Random seed");
  verify->add_option("--tol", vo.tol, "Tail-classification tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--cases", vo.cases, "Random cases per property check")->check(CLI::Range(1, 100000));
  verify->add_flag("--exact,!--no-exact", vo.exact, "Exact rational arithmetic where available (default on)");

  auto* apply = app.add_subcommand("apply", "Apply an operator to a vector");
  apply->add_option("--op", ao.op, "Hxy, Hyx, Sx, Sy, A, B, H1, H2, T, Tinv or hosc")
      ->required()
      ->check(CLI::IsMember({"Hxy", "Hyx", "Sx", "Sy", "A", "B", "H1", "H2", "T", "Tinv", "hosc"}));
  apply->add_option("--seq", ao.seq, "Sequence preset");
  apply->add_option("--vec", ao.vec, "x:3, y:3, e:0 or a comma list of coefficients")->required();
  apply->add_option("--example", ao.example, "ex1, ex2 or ex3")->check(CLI::IsMember({"ex1", "ex2", "ex3"}));
  apply->add_option("--n", ao.n, "Truncation N")->check(CLI::Range(2, 1000000));
  apply->add_option("--times", ao.times, "Number of successive applications")->check(CLI::Range(1, 1000));
  apply->add_option("--format", ao.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(vo, out);
    return cmd_apply(ao, out);
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalDefect& e) {
    err << "numerical defect: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace qbasis
