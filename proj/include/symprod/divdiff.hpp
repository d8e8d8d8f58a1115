#ifndef SYMPROD_DIVDIFF_HPP
#define SYMPROD_DIVDIFF_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "symprod/error.hpp"
#include "symprod/quadrature.hpp"
#include "symprod/types.hpp"

namespace symprod {

/// A holomorphic function handle. When no analytic derivative is supplied,
/// derivatives come from the Cauchy integral over a circle of radius
/// `cauchy_radius` about the evaluation point, which must stay in the domain.
class HolomorphicFunction {
public:
  using Value = std::function<cplx(cplx)>;
  using Derivative = std::function<cplx(int, cplx)>;

  HolomorphicFunction(Value value, Derivative derivative, std::string name,
                      double cauchy_radius = 0.1)
      : value_(std::move(value)), derivative_(std::move(derivative)), name_(std::move(name)),
        radius_(cauchy_radius) {}

  cplx operator()(cplx z) const { return value_(z); }

  /// k-th complex derivative.
  cplx derivative(int k, cplx z) const {
    if (k == 0)
      return value_(z);
    if (derivative_)
      return derivative_(k, z);
    // f^(k)(z) = k! / (M r^k) sum_j f(z + r e^{i theta_j}) e^{-i k theta_j}
    const int m = std::max(64, 4 * k + 16);
    ComplexSum acc;
    for (int j = 0; j < m; ++j) {
      double th = two_pi * j / m;
      acc.add(value_(z + std::polar(radius_, th)) * std::polar(1.0, -k * th));
    }
    return std::tgamma(k + 1.0) / (m * std::pow(radius_, k)) * acc.value();
  }

  bool has_analytic_derivative() const noexcept { return static_cast<bool>(derivative_); }
  const std::string &name() const noexcept { return name_; }

private:
  Value value_;
  Derivative derivative_;
  std::string name_;
  double radius_;
};

inline HolomorphicFunction exp_function() {
  return {[](cplx z) { return std::exp(z); }, [](int, cplx z) { return std::exp(z); }, "exp"};
}

/// z^m with falling-factorial derivatives.
inline HolomorphicFunction monomial_function(int m) {
  return {[m](cplx z) { return std::pow(z, m); },
          [m](int k, cplx z) -> cplx {
            if (k > m)
              return 0.0;
            double c = 1.0;
            for (int i = 0; i < k; ++i)
              c *= m - i;
            return c * std::pow(z, m - k);
          },
          "z^" + std::to_string(m)};
}

/// 1 / (z - a)^r
inline HolomorphicFunction pole_function(cplx a, int r = 1) {
  return {[a, r](cplx z) { return 1.0 / std::pow(z - a, r); },
          [a, r](int k, cplx z) {
            // d^k (z-a)^{-r} = (-1)^k r (r+1) ... (r+k-1) (z-a)^{-r-k}
            double c = k % 2 == 0 ? 1.0 : -1.0;
            for (int i = 0; i < k; ++i)
              c *= r + i;
            return c / std::pow(z - a, r + k);
          },
          "pole"};
}

namespace detail {

inline double node_spread(std::span<const cplx> nodes) {
  double spread = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      spread = std::max(spread, std::abs(nodes[i] - nodes[j]));
  return spread;
}

} // namespace detail

/// Refusal threshold of the recursive path: pairs closer than this fraction
/// of the node spread count as coincident.
inline constexpr double diag_tolerance = 1e-8;

/// Order m-1 divided difference from values at m distinct nodes, by the Newton
/// table with denominator (first node - last node) of each sub-block.
inline cplx divdiff_from_values(std::span<const cplx> nodes, std::span<const cplx> values) {
  require(!nodes.empty() && nodes.size() == values.size(), ErrorKind::InvalidArgument,
          "divided difference needs matching nonempty nodes and values");
  const std::size_t m = nodes.size();
  const double tol = diag_tolerance * detail::node_spread(nodes);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(nodes[i] - nodes[j]) <= tol)
        fail(ErrorKind::CoincidentNodes, "recursive divided difference needs distinct nodes");
  std::vector<cplx> table(values.begin(), values.end());
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = 0; i + level < m; ++i)
      table[i] = (table[i] - table[i + 1]) / (nodes[i] - nodes[i + level]);
  return table[0];
}

template <typename F> cplx divdiff_recursive(const F &f, std::span<const cplx> nodes) {
  std::vector<cplx> values;
  values.reserve(nodes.size());
  for (cplx z : nodes)
    values.push_back(f(z));
  return divdiff_from_values(nodes, values);
}

/// Genocchi-Hermite representation: f^[n](z_1..z_{n+1}) is the integral over
/// A_n of f^(n)(sum_{j<=n} tau_j z_j + (1 - sum tau) z_{n+1}). Valid at
/// confluent nodes; needs the convex hull of the nodes inside f's domain.
inline cplx divdiff_gh(const HolomorphicFunction &f, std::span<const cplx> nodes,
                       const SimplexRule &rule) {
  require(!nodes.empty(), ErrorKind::InvalidArgument, "no nodes");
  const int n = static_cast<int>(nodes.size()) - 1;
  if (n == 0)
    return f(nodes[0]);
  require(rule.dimension() == n, ErrorKind::InvalidArgument, "simplex rule dimension mismatch");
  return simplex_integrate(rule, [&](std::span<const double> tau) {
    cplx arg = nodes[n];
    for (int j = 0; j < n; ++j)
      arg += tau[j] * (nodes[j] - nodes[n]);
    return f.derivative(n, arg);
  });
}

inline cplx divdiff_gh(const HolomorphicFunction &f, std::span<const cplx> nodes,
                       int order = default_simplex_order) {
  if (nodes.size() <= 1)
    return divdiff_gh(f, nodes, SimplexRule(1, 1));
  return divdiff_gh(f, nodes, SimplexRule(static_cast<int>(nodes.size()) - 1, order));
}

struct SymmetryReport {
  double max_deviation = 0.0;
  std::size_t permutations_tested = 0;
};

/// Deviation of the recursive divided difference under node permutations:
/// all of them when m! <= trials, otherwise `trials` random shuffles.
template <typename F>
SymmetryReport check_symmetry(const F &f, std::span<const cplx> nodes, std::size_t trials,
                              std::uint64_t seed = 42) {
  std::vector<cplx> values;
  for (cplx z : nodes)
    values.push_back(f(z));
  const cplx reference = divdiff_from_values(nodes, values);
  std::vector<std::size_t> perm(nodes.size());
  std::iota(perm.begin(), perm.end(), 0);
  SymmetryReport report;
  auto probe = [&] {
    std::vector<cplx> pn, pv;
    for (std::size_t i : perm) {
      pn.push_back(nodes[i]);
      pv.push_back(values[i]);
    }
    report.max_deviation =
        std::max(report.max_deviation, std::abs(divdiff_from_values(pn, pv) - reference));
    ++report.permutations_tested;
  };
  double total = std::tgamma(nodes.size() + 1.0);
  if (total <= static_cast<double>(trials)) {
    do
      probe();
    while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      probe();
    }
  }
  return report;
}

} // namespace symprod

#endif // SYMPROD_DIVDIFF_HPP
