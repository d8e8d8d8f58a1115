#ifndef SYMPROD_QUADRATURE_HPP
#define SYMPROD_QUADRATURE_HPP

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "symprod/error.hpp"
#include "symprod/types.hpp"

namespace symprod {

/// Neumaier-compensated complex accumulator.
class ComplexSum {
public:
  void add(cplx v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
  static void add_part(double &sum, double &comp, double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

/// (1/2pi i) sum_j value_j weight_j.
inline cplx periodic_trapezoid(std::span<const cplx> values, std::span<const cplx> weights) {
  require(!values.empty() && values.size() == weights.size(), ErrorKind::InvalidArgument,
          "periodic_trapezoid needs equally sized nonempty inputs");
  ComplexSum acc;
  for (std::size_t j = 0; j < values.size(); ++j)
    acc.add(values[j] * weights[j]);
  return acc.value() / two_pi_i;
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule mapped to [0, 1]; exact through degree 2*order - 1.
inline GaussRule gauss_legendre(int order) {
  require(order >= 1 && order <= 64, ErrorKind::InvalidArgument,
          "Gauss-Legendre order must lie in [1, 64]");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    {
      // recompute the derivative at the converged node
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
        p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root on [-1, 1]
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[n - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  if (n % 2 == 1) {
    // the middle node is exactly 0.5; fix roundoff from the symmetric pass
    rule.nodes[n / 2] = 0.5;
  }
  return rule;
}

/// Tensor Gauss-Legendre rule on the solid simplex
/// A_d = {x in R^d : x_j >= 0, sum x_j <= 1}, built by collapsing the unit
/// cube with x_k = u_k prod_{i<k} (1 - u_i).
class SimplexRule {
public:
  SimplexRule(int dimension, int order) : dim_(dimension) {
    require(dimension >= 1, ErrorKind::InvalidArgument, "simplex dimension must be >= 1");
    const GaussRule g = gauss_legendre(order);
    std::size_t count = 1;
    for (int k = 0; k < dimension; ++k)
      count *= static_cast<std::size_t>(order);
    coords_.resize(count * dimension);
    weights_.resize(count);
    std::vector<int> idx(dimension, 0);
    for (std::size_t p = 0; p < count; ++p) {
      double scale = 1.0, weight = 1.0;
      for (int k = 0; k < dimension; ++k) {
        double u = g.nodes[idx[k]];
        coords_[p * dimension + k] = scale * u;
        weight *= g.weights[idx[k]] * (k + 1 < dimension ? std::pow(1.0 - u, dimension - 1 - k) : 1.0);
        scale *= 1.0 - u;
      }
      weights_[p] = weight;
      for (int k = dimension - 1; k >= 0; --k) {
        if (++idx[k] < order)
          break;
        idx[k] = 0;
      }
    }
  }

  int dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> node(std::size_t p) const {
    return std::span<const double>(coords_).subspan(p * dim_, dim_);
  }
  double weight(std::size_t p) const { return weights_[p]; }

private:
  int dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

inline constexpr int default_simplex_order = 16;

/// Lebesgue integral over A_d. For the Genocchi-Hermite representation this
/// is the whole story: the 1/sqrt(d+1) prefactor and the sqrt(1+d) density of
/// the Hausdorff measure on the standard simplex in standard coordinates
/// cancel exactly.
template <typename F> cplx simplex_integrate(const SimplexRule &rule, F &&integrand) {
  ComplexSum acc;
  for (std::size_t p = 0; p < rule.size(); ++p)
    acc.add(rule.weight(p) * cplx(integrand(rule.node(p))));
  return acc.value();
}

template <typename F> cplx simplex_integrate(int d, F &&integrand, int order = default_simplex_order) {
  return simplex_integrate(SimplexRule(d, order), std::forward<F>(integrand));
}

} // namespace symprod

#endif // SYMPROD_QUADRATURE_HPP
