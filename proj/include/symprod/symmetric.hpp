#ifndef SYMPROD_SYMMETRIC_HPP
#define SYMPROD_SYMMETRIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "symprod/cauchy.hpp"
#include "symprod/error.hpp"
#include "symprod/geometry.hpp"
#include "symprod/regression.hpp"
#include "symprod/roots.hpp"
#include "symprod/types.hpp"

namespace symprod {

inline constexpr std::size_t max_delta_arity = 8;

/// min over permutations sigma of |z - sigma(w)|.
inline double delta_metric(const ProductPoint &z, const ProductPoint &w) {
  require(z.arity() == w.arity(), ErrorKind::InvalidArgument, "arity mismatch");
  const std::size_t n = z.arity();
  if (n > max_delta_arity)
    fail(ErrorKind::ArityTooLarge, "delta_metric enumerates permutations only for n <= 8");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n && s < best; ++i)
      s += std::norm(z[i] - w[perm[i]]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best);
}

/// Lojasiewicz exponent: n! for n <= 3, 3n!/2 beyond.
inline double lambda_n(int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "lambda_n needs n >= 1");
  double f = std::tgamma(n + 1.0);
  return n <= 3 ? f : 1.5 * f;
}

struct LojasiewiczReport {
  int n = 0;
  double lambda = 0.0;
  std::size_t pairs_sampled = 0;
  std::size_t pairs_used = 0;      ///< after the |pi(z) - pi(w)| > 1e-12 filter
  double c_max = 0.0;              ///< max of delta^Lambda / |pi(z) - pi(w)|
  std::size_t violations = 0;      ///< pairs exceeding c_max (zero by construction)
  std::size_t near_diagonal_pairs = 0;
  double near_diagonal_slope = 0.0; ///< d log(delta) / d log|pi(z) - pi(w)|
};

namespace detail {

inline cplx uniform_in_disc(cplx center, double radius, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return center + std::polar(radius * std::sqrt(u(rng)), two_pi * u(rng));
}

} // namespace detail

/// Samples pairs in U^n and measures delta(z, w)^Lambda_n / |pi(z) - pi(w)|.
/// About a tenth of the pairs sit at a common point with a pair of
/// coordinates split by eps in [1e-4, 1e-1]; the slope is fitted over pairs
/// with delta <= 0.1 diam.
inline LojasiewiczReport lojasiewicz_check(const DomainBoundary &domain, int n,
                                           std::size_t num_pairs, std::uint64_t seed = 42) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be positive");
  require(num_pairs >= 100, ErrorKind::InvalidArgument, "lojasiewicz_check needs >= 100 pairs");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lambda = lambda_n(n);
  const double diam = domain.diameter();
  LojasiewiczReport rep;
  rep.n = n;
  rep.lambda = lambda;
  std::vector<double> ratios, log_delta, log_gap;
  for (std::size_t p = 0; p < num_pairs; ++p) {
    std::vector<cplx> a, b;
    if (n >= 2 && p % 10 == 9) {
      // split a common centre along two directions at scale eps
      double eps = std::pow(10.0, -1.0 - 3.0 * u(rng));
      cplx c = sample_interior(domain, 1, rng, 2.0 * eps)[0];
      a = sample_interior(domain, n, rng);
      b = a;
      cplx da = std::polar(eps, two_pi * u(rng)), db = std::polar(eps, two_pi * u(rng));
      a[0] = c + da;
      a[1] = c - da;
      b[0] = c + db;
      b[1] = c - db;
    } else {
      a = sample_interior(domain, n, rng);
      b = sample_interior(domain, n, rng);
    }
    ++rep.pairs_sampled;
    ProductPoint z(a), w(b);
    const auto pz = symmetrize(z), pw = symmetrize(w);
    double gap = 0.0;
    for (int j = 0; j < n; ++j)
      gap += std::norm(pz[j] - pw[j]);
    gap = std::sqrt(gap);
    if (gap <= 1e-12)
      continue;
    double d = delta_metric(z, w);
    ++rep.pairs_used;
    ratios.push_back(std::pow(d, lambda) / gap);
    if (d <= 0.1 * diam && d > 0.0) {
      log_delta.push_back(std::log(d));
      log_gap.push_back(std::log(gap));
    }
  }
  for (double r : ratios)
    rep.c_max = std::max(rep.c_max, r);
  for (double r : ratios)
    if (r > rep.c_max)
      ++rep.violations;
  rep.near_diagonal_pairs = log_delta.size();
  if (log_delta.size() >= 2)
    rep.near_diagonal_slope = least_squares(log_gap, log_delta).slope;
  return rep;
}

/// h_p(z): sum of all monomials of degree p, via h_p(z_1..z_k) =
/// h_p(z_1..z_{k-1}) + z_k h_{p-1}(z_1..z_k). Zero for p < 0.
inline cplx complete_symmetric(int p, std::span<const cplx> z) {
  if (p < 0)
    return 0.0;
  if (z.empty())
    return p == 0 ? 1.0 : 0.0;
  std::vector<cplx> h(p + 1, cplx(0.0));
  h[0] = 1.0;
  for (cplx zk : z)
    for (int d = 1; d <= p; ++d)
      h[d] += zk * h[d - 1];
  return h[p];
}

/// Root counts per region of C \ Gamma, indexed by RegionLabel.
struct ComponentSignature {
  std::vector<int> counts;

  int total() const { return std::accumulate(counts.begin(), counts.end(), 0); }
  friend auto operator<=>(const ComponentSignature &, const ComponentSignature &) = default;
};

inline ComponentSignature classify_symmetric_point(const DomainBoundary &domain, const SymPoint &z) {
  const RootMultiset roots = desymmetrize(z);
  ComponentSignature sig{std::vector<int>(domain.kappa(), 0)};
  for (cplx r : roots.roots)
    ++sig.counts[classify_point(domain, r).index];
  return sig;
}

/// Number of components of C^n \ Gamma*_{q_n}: C(n + kappa - 1, kappa - 1).
inline std::size_t expected_component_count(int n, std::size_t kappa) {
  double c = 1.0;
  for (std::size_t i = 1; i + 1 <= kappa; ++i)
    c = c * (n + i) / i;
  return static_cast<std::size_t>(std::llround(c));
}

struct ComponentCensus {
  std::map<ComponentSignature, std::size_t> tally;
  std::size_t samples = 0;
  std::size_t skipped = 0; ///< roots too close to Gamma
  std::size_t expected = 0;
};

/// Classifies pi-images of random root tuples. Each root is drawn with radius
/// uniform in [0, 2R] and uniform angle about the outer contour's centroid,
/// R being the centroid's largest distance to that contour.
inline ComponentCensus component_census(const DomainBoundary &domain, int n, std::size_t samples,
                                        std::uint64_t seed = 42) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be positive");
  const auto outer = detail::dense_samples(domain.contours()[0], 512);
  cplx centre = 0.0;
  for (cplx p : outer)
    centre += p;
  centre /= static_cast<double>(outer.size());
  double reach = 0.0;
  for (cplx p : outer)
    reach = std::max(reach, std::abs(p - centre));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComponentCensus census;
  census.expected = expected_component_count(n, domain.kappa());
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<cplx> w(n);
    for (auto &x : w)
      x = centre + std::polar(2.0 * reach * u(rng), two_pi * u(rng));
    ++census.samples;
    try {
      ++census.tally[classify_symmetric_point(domain, symmetrize(ProductPoint(w)))];
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::BoundaryProximity)
        throw;
      ++census.skipped;
    }
  }
  return census;
}

namespace detail {

inline void require_roots_in_domain(const DomainBoundary &domain, const SymPoint &z) {
  for (cplx r : desymmetrize(z).roots)
    require_in_domain(domain, r);
}

/// (1/2pi i) integral of f^ell q'/q without the region check.
inline cplx psi_unchecked(const BoundarySamples &f, int ell, const SymPoint &z) {
  const auto nodes = f.grid().nodes();
  const auto values = f.values();
  const double floor = kernel_floor(f.domain(), static_cast<int>(z.arity()));
  ComplexSum acc;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    cplx q = q_eval(z.coords(), nodes[j].t);
    if (std::abs(q) < floor)
      fail(ErrorKind::KernelProximity, "q kernel nearly vanishes on the boundary grid");
    acc.add(std::pow(values[j], ell) * q_derivative(z.coords(), nodes[j].t) / q * nodes[j].weight);
  }
  return acc.value() / two_pi_i;
}

} // namespace detail

/// Psi_ell(z) = (1/2pi i) integral of f(t)^ell q_n'(z, t) / q_n(z, t) dt,
/// the ell-th power sum of f over the roots of q_n(z, .).
inline cplx psi_ell(const BoundarySamples &f, int ell, const SymPoint &z) {
  require(ell >= 1 && static_cast<std::size_t>(ell) <= z.arity(), ErrorKind::InvalidArgument,
          "ell must lie in 1..n");
  detail::require_roots_in_domain(f.domain(), z);
  return detail::psi_unchecked(f, ell, z);
}

/// Sigma^n f evaluated as Newton's identities applied to (Psi_1, ..., Psi_n).
inline SymPoint symmetric_power_map(const BoundarySamples &f, const SymPoint &z) {
  detail::require_roots_in_domain(f.domain(), z);
  std::vector<cplx> p;
  for (std::size_t ell = 1; ell <= z.arity(); ++ell)
    p.push_back(detail::psi_unchecked(f, static_cast<int>(ell), z));
  return SymPoint(newton_map(p));
}

} // namespace symprod

#endif // SYMPROD_SYMMETRIC_HPP
