#include "qbasis/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>

namespace qbasis {

LogMagnitude LogMagnitude::from_value(double v) {
  if (v == 0.0) return {};
  return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b) {
  if (b.is_zero()) throw std::domain_error("LogMagnitude: division by zero");
  if (a.is_zero()) return {};
  return {a.log_value_ - b.log_value_, a.sign_ * b.sign_};
}

LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogMagnitude& big = a.log_value_ >= b.log_value_ ? a : b;
  const LogMagnitude& small = a.log_value_ >= b.log_value_ ? b : a;
  const double t = std::exp(small.log_value_ - big.log_value_);
  const double s = big.sign_ == small.sign_ ? 1.0 + t : 1.0 - t;
  if (s == 0.0) return {};
  return {big.log_value_ + std::log(s), big.sign_};
}

std::vector<BigInt> hermite_coeffs(int n) {
  if (n < 0) throw std::invalid_argument("hermite_coeffs: n must be >= 0");
  std::vector<BigInt> prev{1};
  if (n == 0) return prev;
  std::vector<BigInt> cur{0, 2};
  for (int k = 1; k < n; ++k) {
    // H_{k+1} = 2x H_k - 2k H_{k-1}
    std::vector<BigInt> next(cur.size() + 1, BigInt(0));
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * k * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_hermite_normalizer(int n) {
  return -0.5 * (n * std::numbers::ln2 + log_factorial(n) + 0.5 * std::log(std::numbers::pi));
}

namespace {

// psi_{n-1}(x) and psi_n(x) sharing one exponent: value = mantissa * e^scale.
struct HermitePair {
  double previous = 0.0;
  double current = 0.0;
  double log_scale = 0.0;
};

HermitePair orthonormal_hermite_pair(int n, double x) {
  constexpr double kRescaleAbove = 1e150;
  HermitePair p;
  const double psi0 = std::pow(std::numbers::pi, -0.25);
  p.previous = 0.0;
  p.current = psi0;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * p.current - std::sqrt(static_cast<double>(k) / (k + 1)) * p.previous;
    p.previous = p.current;
    p.current = next;
    if (std::abs(p.current) > kRescaleAbove) {
      p.current /= kRescaleAbove;
      p.previous /= kRescaleAbove;
      p.log_scale += std::log(kRescaleAbove);
    }
  }
  return p;
}

LogMagnitude scaled(double mantissa, double log_scale) {
  LogMagnitude m = LogMagnitude::from_value(mantissa);
  if (m.is_zero()) return m;
  return {m.log_value() + log_scale, m.sign()};
}

}  // namespace

LogMagnitude orthonormal_hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("orthonormal_hermite: n must be >= 0");
  const HermitePair p = orthonormal_hermite_pair(n, x);
  return scaled(p.current, p.log_scale);
}

double legendre_eval(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_eval: n must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

LogMagnitude legendre_log(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_log: n must be >= 0");
  if (std::abs(x) <= 1.0) return LogMagnitude::from_value(legendre_eval(n, x));
  if (x < 0) {
    LogMagnitude m = legendre_log(n, -x);
    return {m.log_value(), (n % 2 == 0) ? m.sign() : -m.sign()};
  }
  // For x > 1 every P_k(x) is positive, so accumulate log of the ratios.
  double log_value = 0.0;
  double ratio = x;
  if (n >= 1) log_value += std::log(ratio);
  for (int k = 1; k < n; ++k) {
    ratio = ((2.0 * k + 1.0) * x - k / ratio) / (k + 1.0);
    log_value += std::log(ratio);
  }
  return {log_value, 1};
}

double legendre_growth_rate(int n, double x) {
  if (n < 2) throw std::invalid_argument("legendre_growth_rate: n must be >= 2");
  if (!(x > 1.0)) throw std::invalid_argument("legendre_growth_rate: x must be > 1");
  double ratio = x;
  for (int k = 1; k < n; ++k) ratio = ((2.0 * k + 1.0) * x - k / ratio) / (k + 1.0);
  return std::log(ratio);
}

QuadratureRule gauss_hermite(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  QuadratureRule rule;
  rule.order = m;
  if (m == 1) {
    rule.nodes = {0.0};
    rule.weights = {std::sqrt(std::numbers::pi)};
    rule.log_weights = {0.5 * std::log(std::numbers::pi)};
    return rule;
  }

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(m - 1);
  for (int k = 1; k < m; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalDefect("gauss_hermite: Jacobi eigensolver did not converge for order " + std::to_string(m));
  }
  std::vector<double> x(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  std::sort(x.begin(), x.end());

  // Enforce exact symmetry, then refine the non-negative half.
  for (int i = 0; i < m / 2; ++i) {
    const double v = 0.5 * (x[m - 1 - i] - x[i]);
    x[i] = -v;
    x[m - 1 - i] = v;
  }
  if (m % 2 == 1) x[m / 2] = 0.0;

  rule.nodes.resize(m);
  rule.weights.resize(m);
  rule.log_weights.resize(m);
  const double sqrt2m = std::sqrt(2.0 * m);
  for (int i = m / 2; i < m; ++i) {
    double node = x[i];
    if (node != 0.0) {
      const HermitePair p = orthonormal_hermite_pair(m, node);
      node -= p.current / (sqrt2m * p.previous);
    }
    const HermitePair p = orthonormal_hermite_pair(m, node);
    const LogMagnitude prev = scaled(p.previous, p.log_scale);
    const double log_w = -std::log(static_cast<double>(m)) - 2.0 * prev.log_value();
    rule.nodes[i] = node;
    rule.nodes[m - 1 - i] = -node;
    rule.log_weights[i] = rule.log_weights[m - 1 - i] = log_w;
    rule.weights[i] = rule.weights[m - 1 - i] = std::exp(log_w);
  }
  for (int i = 1; i < m; ++i) {
    if (!(rule.nodes[i] > rule.nodes[i - 1])) {
      throw NumericalDefect("gauss_hermite: nodes not strictly increasing for order " + std::to_string(m));
    }
  }
  return rule;
}

namespace {

struct WideHermitePair {
  Wide previous;
  Wide current;
};

WideHermitePair wide_orthonormal_pair(int n, const Wide& x, const Wide& psi0) {
  WideHermitePair p{Wide(0), psi0};
  for (int k = 0; k < n; ++k) {
    Wide next = sqrt(Wide(2) / (k + 1)) * x * p.current - sqrt(Wide(k) / (k + 1)) * p.previous;
    p.previous = std::move(p.current);
    p.current = std::move(next);
  }
  return p;
}

WideQuadratureRule build_wide_rule(int m) {
  const QuadratureRule seed = gauss_hermite(m);
  const Wide pi = boost::math::constants::pi<Wide>();
  const Wide psi0 = 1 / sqrt(sqrt(pi));
  const Wide sqrt2m = sqrt(Wide(2 * m));
  const Wide stop = std::numeric_limits<Wide>::epsilon() * 64;

  WideQuadratureRule rule;
  rule.order = m;
  rule.nodes.assign(m, Wide(0));
  rule.weights.assign(m, Wide(0));
  for (int i = m / 2; i < m; ++i) {
    Wide node = seed.nodes[i];
    if (node != 0) {
      for (int iter = 0; iter < 12; ++iter) {
        const WideHermitePair p = wide_orthonormal_pair(m, node, psi0);
        const Wide step = p.current / (sqrt2m * p.previous);
        node -= step;
        if (abs(step) <= stop * abs(node)) break;
      }
    }
    const WideHermitePair p = wide_orthonormal_pair(m, node, psi0);
    const Wide w = 1 / (Wide(m) * p.previous * p.previous);
    rule.nodes[i] = node;
    rule.nodes[m - 1 - i] = -node;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const WideQuadratureRule& gauss_hermite_wide(int m) {
  if (m < 1 || m > kMaxWideQuadratureOrder) {
    throw std::invalid_argument("gauss_hermite_wide: order out of range: " + std::to_string(m));
  }
  struct Table {
    std::array<std::once_flag, kMaxWideQuadratureOrder + 1> built;
    std::array<WideQuadratureRule, kMaxWideQuadratureOrder + 1> rules;
  };
  static Table table;
  std::call_once(table.built[m], [m] { table.rules[m] = build_wide_rule(m); });
  return table.rules[m];
}

}  // namespace qbasis
