#ifndef SYMPROD_TYPES_HPP
#define SYMPROD_TYPES_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "symprod/error.hpp"

namespace symprod {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx two_pi_i{0.0, two_pi};

namespace detail {

/// Common storage for the two coordinate-tuple types. They are kept distinct
/// so that a point of U^n is never passed where a coefficient vector is meant.
template <typename Tag> class Coordinates {
public:
  Coordinates() = default;
  explicit Coordinates(std::vector<cplx> coords) : coords_(std::move(coords)) {}
  Coordinates(std::initializer_list<cplx> coords) : coords_(coords) {}

  std::size_t arity() const noexcept { return coords_.size(); }
  std::span<const cplx> coords() const noexcept { return coords_; }
  const std::vector<cplx> &vec() const noexcept { return coords_; }
  cplx operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const Coordinates &, const Coordinates &) = default;

private:
  std::vector<cplx> coords_;
};

struct ProductTag {};
struct SymTag {};

} // namespace detail

/// A point w = (w_1, ..., w_n) of the Cartesian power U^n.
using ProductPoint = detail::Coordinates<detail::ProductTag>;

/// A point z of coefficient space, i.e. the monic polynomial
/// q_n(z, t) = t^n - z_1 t^{n-1} + ... + (-1)^n z_n.
using SymPoint = detail::Coordinates<detail::SymTag>;

class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
      require(e >= 0, ErrorKind::InvalidArgument,
              "multi-index entries must be nonnegative");
  }
  MultiIndex(std::initializer_list<int> entries)
      : MultiIndex(std::vector<int>(entries)) {}

  static MultiIndex zero(std::size_t n) {
    return MultiIndex(std::vector<int>(n, 0));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const int> entries() const noexcept { return entries_; }
  int order() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
  }

  friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;

private:
  std::vector<int> entries_;
};

/// All multi-indices of length n and total order exactly k, in lexicographic
/// order (largest first entry first).
inline std::vector<MultiIndex> multi_indices_of_order(std::size_t n, int k) {
  std::vector<MultiIndex> out;
  if (n == 0)
    return out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto &&self, std::size_t pos, int left) -> void {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.emplace_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

} // namespace symprod

#endif // SYMPROD_TYPES_HPP
