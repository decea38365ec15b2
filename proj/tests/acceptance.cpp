// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qbasis/suite.hpp"
#include "qbasis/verify.hpp"

using namespace qbasis;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void require(const VerificationReport& r) {
    require(r.passed(), r.check_id + " residual " + format_number(r.residual) + " > " + format_number(r.tolerance));
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<Example> kAll{Example::Ex1, Example::Ex2, Example::Ex3};
const std::vector<Example> kCoefficient{Example::Ex1, Example::Ex2};

Outcome ac1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (Example e : kAll) o.require(biorthogonality_check(e, 40));
  const double t = seconds_since(t0);
  o.require(t < 5.0, "runtime " + std::to_string(t) + " s");
  return o;
}

Outcome ac2() {
  Outcome o;
  const VerificationReport r = ex1_completeness_witness(1000, 1000000);
  o.require(r);
  o.require(r.measured.at("pi2_over_6_minus_norm_squared") <= 1e-5, "deviation above 1e-5");
  o.require(r.measured.at("nonzero_y_h_products") == 0, "nonzero <y_n, h>");
  return o;
}

Outcome ac3() {
  Outcome o;
  o.require(ex1_expansion_escape(200, true));
  return o;
}

Outcome ac4() {
  Outcome o;
  Rng rng(1, "ac4");
  const VerificationReport r = ex2_expansion_check(10, 12, 50, true, rng);
  o.require(r);
  o.require(r.measured.at("determinant_failures") == 0, "det T_2N != 1");
  o.require(r.measured.at("exact_round_trip_failures") == 0, "exact round trip");
  return o;
}

Outcome ac5() {
  Outcome o;
  o.require(ex2_e1_failure(500));
  return o;
}

Outcome ac6() {
  Outcome o;
  for (Example e : kCoefficient) {
    Rng rng(1, std::string("ac6.") + to_string(e));
    o.require(quasi_basis_check(e, 200, 20, 20, rng));
  }
  Rng rng(1, "ac6.ex3");
  o.require(quasi_basis_check(Example::Ex3, 200, 8, 40, rng));
  return o;
}

Outcome ac7() {
  Outcome o;
  Rng rng(1, "ac7");
  std::vector<Complex> random;
  for (int k = 0; k < 45; ++k) random.push_back(rng.complex_unit_box());
  const std::vector<ScalarSequence> alphas{ScalarSequence::inverse_power(2), ScalarSequence::affine(1, 0),
                                           ScalarSequence::from_values("random", random)};
  for (Example e : kAll) {
    for (const auto& a : alphas) o.require(multiplier_eigen_check(e, a, 30, 40));
  }
  o.require(ex3_eigenrelation_check(20));
  return o;
}

Outcome ac8() {
  Outcome o;
  for (Example e : kAll) {
    Rng rng(1, std::string("ac8.") + to_string(e));
    o.require(factorization_check(e, 100, e == Example::Ex3 ? 12 : 40, rng));
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  for (Example e : kAll) {
    Rng rng(1, std::string("ac9.") + to_string(e));
    o.require(intertwining_check(e, e == Example::Ex3 ? 2 : 5, e == Example::Ex3 ? 12 : 40, rng));
  }
  return o;
}

Outcome ac10() {
  Outcome o;
  for (Example e : kAll) {
    Rng rng(1, std::string("ac10.") + to_string(e));
    const int n = e == Example::Ex3 ? 12 : 40;
    o.require(adjoint_pairing_check(e, 50, n, rng));
    const VerificationReport c = adjoint_counterexample_check(e, n);
    o.require(c);
    o.require(c.findings.at("found") == "true", "no counterexample for complex alpha");
  }
  return o;
}

Outcome ac11() {
  Outcome o;
  for (int n : {40, 1024}) {
    const auto conv = dense_definedness_probe(Example::Ex1, ProbeOperator::Hyx, ScalarSequence::inverse_power(2), n);
    o.require(conv);
    o.require(conv.findings.at("tail") == "CONVERGED", "ex1 1/n^2 not CONVERGED at N=" + std::to_string(n));
    const auto grow = dense_definedness_probe(Example::Ex1, ProbeOperator::Hyx, ScalarSequence::inverse_power(1), n);
    o.require(grow);
    o.require(grow.findings.at("tail") == "GROWING", "ex1 1/n not GROWING at N=" + std::to_string(n));
    const auto id = dense_definedness_probe(Example::Ex2, ProbeOperator::Hyx, ScalarSequence::inverse_power(1), n);
    o.require(id);
    o.require(id.measured.at("identity_scaled_residual") <= 1e-12, "ex2 identity");
    o.require(id.findings.at("three_sum_bound") == "respected", "ex2 3-sum bound");
    const auto s = dense_definedness_probe(Example::Ex1, ProbeOperator::Sx, ScalarSequence::inverse_power(2), n);
    o.require(s);
    o.require(s.measured.at("max_member_norm") < s.measured.at("member_norm_bound"), "pi/sqrt 6 bound");
  }
  for (Example e : kCoefficient) {
    for (ProbeOperator op : {ProbeOperator::Hyx, ProbeOperator::Sx}) {
      for (int k = 2; k <= 10; ++k) {
        const auto r = dense_definedness_probe(e, op, ScalarSequence::inverse_power(0.2 * k), 1024);
        o.require(r);
      }
    }
  }
  return o;
}

Outcome ac12() {
  Outcome o;
  const VerificationReport r = ex3_norm_suite(200, 40);
  o.require(r);
  o.require(r.measured.at("x_ratio_max_relative_deviation") <= 1e-8, "x ratio");
  o.require(r.measured.at("y_ratio_relative_spread") <= 1e-8, "y ratio spread");
  o.require(std::abs(r.measured.at("product_growth_exponent_at_100") - 1.0) <= 0.02, "growth exponent");
  o.require(projection_norm_check(Example::Ex3, 40).passed(), "norm products");
  return o;
}

Outcome ac13() {
  Outcome o;
  Rng rng(1, "ac13");
  const auto e = [](int k) { return gauss_member(FamilyKind::RefEGauss, k); };
  const auto y = [](int k) { return gauss_member(FamilyKind::Ex3Y, k); };
  o.require(ex3_sy_is_t_squared(e(0), "e0", 40));
  o.require(ex3_sy_is_t_squared(e(1) + Complex(2.0) * e(4), "e1_plus_2e4", 40));
  o.require(ex3_sy_is_t_squared(e(2) - e(5), "e2_minus_e5", 40));
  o.require(ex3_sy_is_t_squared(random_hermite_combination(8, rng), "random", 40));
  o.require(ex3_sy_is_t_squared(y(1), "y1", 40));
  o.require(ex3_sy_on_x_check(40));
  o.require(ex3_sx_weak_check(e(1), y(3), "y3_e1", 40));
  o.require(ex3_sx_weak_check(e(0) + e(3), y(1) + y(2), "y1_plus_y2", 40));
  o.require(ex3_sx_weak_check(random_hermite_combination(8, rng), y(5), "y5_random", 40));
  return o;
}

Outcome ac14() {
  Outcome o;
  for (Example e : kCoefficient) {
    o.require(formal_frame_check(e, ScalarSequence::inverse_power(2), ScalarSequence::geometric(0.5), 12));
  }
  return o;
}

Outcome ac15(const std::string& cli, const std::string& workdir) {
  Outcome o;
  if (cli.empty()) {
    o.require(false, "CLI path not given");
    return o;
  }
  const std::filesystem::path dir = std::filesystem::path(workdir.empty() ? "." : workdir);
  std::string outputs[2];
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    const auto path = dir / ("acceptance_all_" + std::to_string(i) + ".json");
    const std::string cmd = "\"" + cli + "\" verify --example all --seed 42 --format json --out \"" + path.string() +
                            "\" > /dev/null";
    const auto t0 = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    worst = std::max(worst, seconds_since(t0));
    o.require(status == 0, "run " + std::to_string(i) + " exit status " + std::to_string(status));
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    outputs[i] = ss.str();
  }
  o.require(!outputs[0].empty(), "empty report");
  o.require(outputs[0] == outputs[1], "JSON differs between runs");
  o.require(worst < 60.0, "runtime " + std::to_string(worst) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("slowest run ") + std::to_string(worst) + " s";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string workdir = argc > 2 ? argv[2] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 biorthogonality", ac1},
      {"AC2 completeness witness", ac2},
      {"AC3 expansion escape", ac3},
      {"AC4 expansion matrix", ac4},
      {"AC5 e_1 failure", ac5},
      {"AC6 quasi-basis identity", ac6},
      {"AC7 eigenrelations", ac7},
      {"AC8 factorization", ac8},
      {"AC9 intertwining", ac9},
      {"AC10 adjoint pairing", ac10},
      {"AC11 dense definedness", ac11},
      {"AC12 ex3 norm suite", ac12},
      {"AC13 metric and T", ac13},
      {"AC14 formal frame", ac14},
      {"AC15 end to end", [&] { return ac15(cli, workdir); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", seconds_since(t0));
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << time << ")";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
