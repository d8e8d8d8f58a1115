#ifndef SYMPROD_CAUCHY_HPP
#define SYMPROD_CAUCHY_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "symprod/catalog.hpp"
#include "symprod/error.hpp"
#include "symprod/geometry.hpp"
#include "symprod/quadrature.hpp"
#include "symprod/regression.hpp"
#include "symprod/roots.hpp"
#include "symprod/types.hpp"

namespace symprod {

/// Boundary data phi(t_j) attached to a quadrature grid.
class BoundarySamples {
public:
  BoundarySamples(std::shared_ptr<const BoundaryGrid> grid, std::vector<cplx> values,
                  std::string description)
      : grid_(std::move(grid)), values_(std::move(values)),
        description_(std::move(description)) {
    require(grid_ && values_.size() == grid_->size(), ErrorKind::InvalidArgument,
            "boundary samples must match the grid node count");
  }

  const BoundaryGrid &grid() const noexcept { return *grid_; }
  std::shared_ptr<const BoundaryGrid> grid_ptr() const noexcept { return grid_; }
  const DomainBoundary &domain() const noexcept { return grid_->domain(); }
  std::span<const cplx> values() const noexcept { return values_; }
  const std::string &description() const noexcept { return description_; }

private:
  std::shared_ptr<const BoundaryGrid> grid_;
  std::vector<cplx> values_;
  std::string description_;
};

inline BoundarySamples make_samples(std::shared_ptr<const BoundaryGrid> grid, const PhiSpec &spec) {
  std::vector<cplx> values;
  values.reserve(grid->size());
  for (const auto &node : grid->nodes())
    values.push_back(evaluate(spec, node));
  return BoundarySamples(std::move(grid), std::move(values), describe(spec));
}

template <typename F>
BoundarySamples make_samples(std::shared_ptr<const BoundaryGrid> grid, F &&trace,
                             std::string description) {
  std::vector<cplx> values;
  values.reserve(grid->size());
  for (const auto &node : grid->nodes())
    values.push_back(trace(node.t));
  return BoundarySamples(std::move(grid), std::move(values), std::move(description));
}

inline BoundarySamples make_samples(const DomainBoundary &domain, int nodes_per_contour,
                                    const PhiSpec &spec) {
  return make_samples(std::make_shared<const BoundaryGrid>(sample_boundary(domain, nodes_per_contour)),
                      spec);
}

/// A polynomial p(z, t) in n + 1 variables, of degree `degree` in t.
struct PolynomialKernel {
  std::function<cplx(std::span<const cplx>, cplx)> eval;
  int degree = 1;
  std::size_t arity = 1;
  std::string name;
};

/// t - z
inline PolynomialKernel cauchy_kernel() {
  return {[](std::span<const cplx> z, cplx t) { return t - z[0]; }, 1, 1, "cauchy"};
}

/// omega_n(z, t) = prod_j (t - z_j)
inline PolynomialKernel omega_kernel(std::size_t n) {
  return {[](std::span<const cplx> z, cplx t) {
            cplx acc = 1.0;
            for (cplx zj : z)
              acc *= t - zj;
            return acc;
          },
          static_cast<int>(n), n, "omega"};
}

/// q_n(z, t) = t^n - z_1 t^{n-1} + ... + (-1)^n z_n
inline PolynomialKernel q_kernel(std::size_t n) {
  return {[](std::span<const cplx> z, cplx t) { return q_eval(z, t); }, static_cast<int>(n), n,
          "q"};
}

/// Evaluation is refused when min_j |p(z, t_j)| falls below
/// (kernel_floor_factor * diameter)^degree.
inline constexpr double kernel_floor_factor = 1e-4;

inline double kernel_floor(const DomainBoundary &domain, int degree) {
  return std::pow(kernel_floor_factor * domain.diameter(), degree);
}

/// (1/2pi i) * integral over Gamma of phi(t) / p(z, t) dt.
inline cplx generic_transform(const PolynomialKernel &p, const BoundarySamples &phi,
                              std::span<const cplx> z) {
  require(z.size() == p.arity, ErrorKind::InvalidArgument, "kernel arity mismatch");
  const auto nodes = phi.grid().nodes();
  const auto values = phi.values();
  const double floor = kernel_floor(phi.domain(), p.degree);
  ComplexSum acc;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    cplx k = p.eval(z, nodes[j].t);
    if (std::abs(k) < floor)
      fail(ErrorKind::KernelProximity, p.name + " kernel nearly vanishes on the boundary grid");
    acc.add(values[j] * nodes[j].weight / k);
  }
  return acc.value() / two_pi_i;
}

namespace detail {

inline void require_in_domain(const DomainBoundary &domain, cplx w) {
  if (classify_point(domain, w).index != 0)
    fail(ErrorKind::WrongRegion, "point lies outside U");
}

} // namespace detail

inline cplx cauchy_transform(const BoundarySamples &phi, cplx z) {
  detail::require_in_domain(phi.domain(), z);
  const cplx zz[1] = {z};
  return generic_transform(cauchy_kernel(), phi, zz);
}

/// Cauchy-Norlund transform: the omega_n kernel restricted to U^n.
inline cplx norlund_transform(const BoundarySamples &phi, const ProductPoint &w) {
  require(w.arity() >= 1, ErrorKind::InvalidArgument, "empty point");
  for (cplx wj : w.coords())
    detail::require_in_domain(phi.domain(), wj);
  return generic_transform(omega_kernel(w.arity()), phi, w.coords());
}

/// Symmetrized Cauchy transform: the q_n kernel restricted to Sigma^n U.
inline cplx symmetrized_transform(const BoundarySamples &phi, const SymPoint &z) {
  require(z.arity() >= 1, ErrorKind::InvalidArgument, "empty point");
  for (cplx root : desymmetrize(z).roots)
    detail::require_in_domain(phi.domain(), root);
  return generic_transform(q_kernel(z.arity()), phi, z.coords());
}

/// u_gamma(t) = (-1)^{|gamma|} |gamma|! t^{sum_j gamma_j (n - j)}.
inline cplx multiplier_weight(const MultiIndex &gamma, std::size_t n, cplx t) {
  int exponent = 0;
  for (std::size_t j = 0; j < gamma.size(); ++j)
    exponent += gamma[j] * static_cast<int>(n - (j + 1));
  double factorial = std::tgamma(gamma.order() + 1.0);
  double sign = gamma.order() % 2 == 0 ? 1.0 : -1.0;
  return sign * factorial * std::pow(t, exponent);
}

/// M_gamma: pointwise multiplication by u_gamma.
inline BoundarySamples apply_multiplier(const BoundarySamples &phi, const MultiIndex &gamma,
                                        std::size_t n) {
  require(gamma.size() == n, ErrorKind::InvalidArgument, "multi-index length must equal n");
  std::vector<cplx> values(phi.values().begin(), phi.values().end());
  const auto nodes = phi.grid().nodes();
  for (std::size_t j = 0; j < values.size(); ++j)
    values[j] *= multiplier_weight(gamma, n, nodes[j].t);
  return BoundarySamples(phi.grid_ptr(), std::move(values), phi.description() + " * u_gamma");
}

/// (-1)^{sum_j j gamma_j}. Since dq_n/dz_j = (-1)^j t^{n-j}, this is the sign
/// that u_gamma omits: d^gamma (1/q_n) = sign * u_gamma / q_n^{|gamma|+1}.
inline double coordinate_sign(const MultiIndex &gamma) {
  int s = 0;
  for (std::size_t j = 0; j < gamma.size(); ++j)
    s += static_cast<int>(j + 1) * gamma[j];
  return s % 2 == 0 ? 1.0 : -1.0;
}

/// d^gamma E_n phi (z), evaluated as the push-forward of the diagonal
/// restriction of B_{n(|gamma|+1)} applied to M_gamma phi. The repeated-point
/// kernel is evaluated in contour form, which is regular there.
inline cplx derivative_symmetrized(const MultiIndex &gamma, const BoundarySamples &phi,
                                   const SymPoint &z) {
  const std::size_t n = z.arity();
  require(gamma.size() == n, ErrorKind::InvalidArgument, "multi-index length must equal n");
  for (cplx root : desymmetrize(z).roots)
    detail::require_in_domain(phi.domain(), root);
  const int copies = gamma.order() + 1;
  const BoundarySamples weighted = apply_multiplier(phi, gamma, n);
  const PolynomialKernel big = omega_kernel(n * copies);
  SymmetricFunction norlund_big = [&](std::span<const cplx> w) {
    return generic_transform(big, weighted, w);
  };
  SymmetricFunction pulled = [&](std::span<const cplx> w) {
    return diagonal_pullback(norlund_big, w, copies);
  };
  return coordinate_sign(gamma) * push_forward(pulled, z);
}

/// chi(z): largest number of coordinates that coincide, clustering values
/// with |z_i - z_j| <= tol.
inline int chi(const ProductPoint &z, double tol) { return cluster_multiplicity(z.coords(), tol); }

/// Integral of phi / omega_n(z, .) over the grid nodes outside the union of
/// the discs B(z_j, rho). Whole nodes are dropped; no partial-arc correction.
inline cplx truncated_pv(const BoundarySamples &phi, const ProductPoint &z, double rho) {
  const DomainBoundary &domain = phi.domain();
  require(rho > 0.0 && rho < domain.diameter() / 4.0, ErrorKind::InvalidArgument,
          "rho must lie in (0, diam/4)");
  for (cplx zj : z.coords())
    require(distance_to_boundary(domain, zj) <= 1e-8 * domain.diameter(),
            ErrorKind::InvalidArgument, "truncated_pv needs every z_j on the boundary");
  const auto nodes = phi.grid().nodes();
  const auto values = phi.values();
  ComplexSum acc;
  std::size_t kept = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    bool outside = true;
    cplx kernel = 1.0;
    for (cplx zk : z.coords()) {
      if (std::abs(nodes[j].t - zk) <= rho) {
        outside = false;
        break;
      }
      kernel *= nodes[j].t - zk;
    }
    if (!outside)
      continue;
    ++kept;
    acc.add(values[j] * nodes[j].weight / kernel);
  }
  if (kept == 0)
    fail(ErrorKind::Degenerate, "no quadrature nodes survive the truncation");
  return acc.value() / two_pi_i;
}

struct PvGrowthFit {
  int multiplicity = 0;                   ///< chi of the evaluation point
  std::vector<double> radii;              ///< rho values
  std::vector<double> base_thetas;        ///< parameters of the base points t_0
  std::vector<std::vector<double>> magnitudes; ///< |value| per base point per rho
  std::vector<double> slopes;             ///< log-log slope per base point
  double median_slope = 0.0;
};

/// Blow-up rate of the truncated integral at z = (t_0, ..., t_0) on the outer
/// contour: log|value| is regressed on log rho for rho = 2^-k,
/// k = k_min..k_max, at `base_points` equispaced parameters
/// theta = 2pi (i + 1/2) / base_points; the median slope is reported.
inline PvGrowthFit pv_growth_fit(const BoundarySamples &phi, int multiplicity, int base_points = 32,
                                 int k_min = 3, int k_max = 8) {
  require(multiplicity >= 1 && base_points >= 1 && k_max > k_min, ErrorKind::InvalidArgument,
          "bad PV experiment parameters");
  PvGrowthFit fit;
  fit.multiplicity = multiplicity;
  for (int k = k_min; k <= k_max; ++k)
    fit.radii.push_back(std::ldexp(1.0, -k));
  const Contour &outer = phi.domain().contours()[0];
  std::vector<double> log_r;
  for (double r : fit.radii)
    log_r.push_back(std::log(r));
  for (int b = 0; b < base_points; ++b) {
    double theta = two_pi * (b + 0.5) / base_points;
    ProductPoint z(std::vector<cplx>(multiplicity, outer.point(theta)));
    std::vector<double> mags, log_m;
    for (double r : fit.radii) {
      double m = std::abs(truncated_pv(phi, z, r));
      mags.push_back(m);
      log_m.push_back(std::log(m));
    }
    fit.base_thetas.push_back(theta);
    fit.magnitudes.push_back(mags);
    fit.slopes.push_back(least_squares(log_r, log_m).slope);
  }
  fit.median_slope = median(fit.slopes);
  return fit;
}

} // namespace symprod

#endif // SYMPROD_CAUCHY_HPP
