#ifndef SYMPROD_ROOTS_HPP
#define SYMPROD_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "symprod/error.hpp"
#include "symprod/types.hpp"

namespace symprod {

/// z = pi(w): z_j is the j-th elementary symmetric polynomial of w, obtained
/// by expanding prod (t - w_j) one factor at a time.
inline SymPoint symmetrize(const ProductPoint &w) {
  const std::size_t n = w.arity();
  std::vector<cplx> e(n + 1, cplx(0.0));
  e[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k >= 1; --k)
      e[k] += w[j] * e[k - 1];
  return SymPoint(std::vector<cplx>(e.begin() + 1, e.end()));
}

/// q_n(z, t) = t^n - z_1 t^{n-1} + ... + (-1)^n z_n.
inline cplx q_eval(std::span<const cplx> z, cplx t) {
  cplx acc = 1.0;
  double sign = -1.0;
  for (cplx zj : z) {
    acc = acc * t + sign * zj;
    sign = -sign;
  }
  return acc;
}

/// d/dt q_n(z, t).
inline cplx q_derivative(std::span<const cplx> z, cplx t) {
  const std::size_t n = z.size();
  cplx acc = static_cast<double>(n);
  double sign = -1.0;
  for (std::size_t j = 1; j < n; ++j) {
    acc = acc * t + sign * static_cast<double>(n - j) * z[j - 1];
    sign = -sign;
  }
  return acc;
}

inline double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (cplx x : v)
    s += std::norm(x);
  return std::sqrt(s);
}

struct RootMultiset {
  std::vector<cplx> roots;
  double residual = 0.0; ///< max |q_n(z, root)|

  ProductPoint as_point() const { return ProductPoint(roots); }
};

inline constexpr int max_root_arity = 12;
inline constexpr int aberth_max_iterations = 200;

/// Size of the largest cluster of values under single-linkage |a - b| <= tol.
inline int cluster_multiplicity(std::span<const cplx> values, double tol) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i)
      i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= tol)
        parent[find(i)] = find(j);
  std::vector<int> count(n, 0);
  int best = n ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i)
    best = std::max(best, ++count[find(i)]);
  return best;
}

/// All roots of q_n(z, .) by Aberth-Ehrlich simultaneous iteration.
inline RootMultiset desymmetrize(const SymPoint &z) {
  const std::size_t n = z.arity();
  require(n >= 1, ErrorKind::InvalidArgument, "desymmetrize needs n >= 1");
  if (n > static_cast<std::size_t>(max_root_arity))
    fail(ErrorKind::ArityTooLarge, "desymmetrize supports n <= 12");
  const auto coeffs = z.coords();
  const double root_tol = 1e-10 * (1.0 + norm(coeffs));
  if (n == 1)
    return {{z[0]}, 0.0};

  double radius = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    radius = std::max(radius, std::pow(std::abs(coeffs[j]), 1.0 / (j + 1)));
  radius += 1.0;
  std::vector<cplx> r(n);
  for (std::size_t k = 0; k < n; ++k)
    r[k] = std::polar(radius, two_pi * k / n + 0.4);

  auto residual_of = [&](const std::vector<cplx> &roots) {
    double res = 0.0;
    for (cplx x : roots)
      res = std::max(res, std::abs(q_eval(coeffs, x)));
    return res;
  };

  for (int it = 0; it < aberth_max_iterations; ++it) {
    double max_step = 0.0, max_mod = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx p = q_eval(coeffs, r[i]);
      if (p == cplx(0.0))
        continue;
      cplx ratio = p / q_derivative(coeffs, r[i]);
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && r[i] != r[j])
          repulsion += 1.0 / (r[i] - r[j]);
      cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
        continue;
      r[i] -= step;
      max_step = std::max(max_step, std::abs(step));
      max_mod = std::max(max_mod, std::abs(r[i]));
    }
    if (max_step <= 4e-16 * (1.0 + max_mod))
      break;
  }

  // Newton polish, kept only where it lowers the residual
  for (std::size_t i = 0; i < n; ++i) {
    for (int it = 0; it < 3; ++it) {
      cplx p = q_eval(coeffs, r[i]);
      cplx dp = q_derivative(coeffs, r[i]);
      if (std::abs(dp) < 1e-12)
        break;
      cplx cand = r[i] - p / dp;
      if (std::abs(q_eval(coeffs, cand)) < std::abs(p))
        r[i] = cand;
      else
        break;
    }
  }

  RootMultiset out{r, residual_of(r)};
  if (out.residual <= root_tol)
    return out;
  // multiple roots converge slowly; accept a relaxed residual when they cluster
  if (out.residual <= 1e-6 * (1.0 + norm(coeffs)) && cluster_multiplicity(r, 1e-4) > 1)
    return out;
  fail(ErrorKind::RootFailure, "Aberth iteration did not reach the residual tolerance");
}

/// Power sums p_l = sum_j v_j^l for l = 1..count.
inline std::vector<cplx> power_sums(std::span<const cplx> values, std::size_t count) {
  std::vector<cplx> p(count, cplx(0.0));
  for (cplx v : values) {
    cplx pw = 1.0;
    for (std::size_t l = 0; l < count; ++l) {
      pw *= v;
      p[l] += pw;
    }
  }
  return p;
}

/// Newton's identities: elementary symmetric values from power sums,
/// e_k = (1/k) sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i.
inline std::vector<cplx> newton_map(std::span<const cplx> power_sums) {
  const std::size_t n = power_sums.size();
  std::vector<cplx> e(n + 1, cplx(0.0));
  e[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    cplx acc = 0.0;
    double sign = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
      acc += sign * e[k - i] * power_sums[i - 1];
      sign = -sign;
    }
    e[k] = acc / static_cast<double>(k);
  }
  return std::vector<cplx>(e.begin() + 1, e.end());
}

using SymmetricFunction = std::function<cplx(std::span<const cplx>)>;

/// (j_k^* f)(w) = f(w, ..., w) with k copies of w.
inline cplx diagonal_pullback(const SymmetricFunction &f, std::span<const cplx> w, int k) {
  require(k >= 1, ErrorKind::InvalidArgument, "diagonal_pullback needs k >= 1");
  std::vector<cplx> rep;
  rep.reserve(w.size() * k);
  for (int c = 0; c < k; ++c)
    rep.insert(rep.end(), w.begin(), w.end());
  return f(rep);
}

/// (pi_* f)(z) = f(w) for any w with pi(w) = z. The symmetry of f is probed
/// with one non-identity permutation drawn from the seeded generator.
inline cplx push_forward(const SymmetricFunction &f, const SymPoint &z,
                         std::uint64_t seed = 42) {
  RootMultiset roots = desymmetrize(z);
  const auto &w = roots.roots;
  cplx value = f(w);
  if (w.size() >= 2) {
    std::vector<std::size_t> perm(w.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    do {
      std::shuffle(perm.begin(), perm.end(), rng);
    } while (std::is_sorted(perm.begin(), perm.end()));
    std::vector<cplx> permuted(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      permuted[i] = w[perm[i]];
    cplx other = f(permuted);
    if (std::abs(other - value) > 1e-8 * (1.0 + std::abs(value)))
      fail(ErrorKind::AsymmetryDetected, "function is not symmetric under permutation");
  }
  return value;
}

} // namespace symprod

#endif // SYMPROD_ROOTS_HPP
