#ifndef SYMPROD_HOLDER_HPP
#define SYMPROD_HOLDER_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "symprod/error.hpp"
#include "symprod/parallel.hpp"
#include "symprod/regression.hpp"
#include "symprod/types.hpp"

namespace symprod {

/// Values at points of C^d (real data uses zero imaginary parts).
struct SampledField {
  std::vector<std::vector<cplx>> points;
  std::vector<cplx> values;
  std::map<std::string, std::string> metadata;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }

  void validate() const {
    require(points.size() == values.size(), ErrorKind::InvalidArgument,
            "field needs one value per point");
    for (const auto &p : points)
      require(p.size() == dimension(), ErrorKind::InvalidArgument,
              "field points must share a dimension");
  }
};

/// Field from real abscissae x_i with values f(x_i).
template <typename F> SampledField sample_real_field(const std::vector<double> &xs, F &&f) {
  SampledField field;
  for (double x : xs) {
    field.points.push_back({cplx(x, 0.0)});
    field.values.push_back(f(x));
  }
  return field;
}

inline double point_distance(const std::vector<cplx> &a, const std::vector<cplx> &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

inline constexpr std::size_t max_seminorm_points = 5000;
inline constexpr std::size_t max_estimate_points = 20000;

/// sup over point pairs of |f(x) - f(y)| / |x - y|^alpha; coincident points
/// are skipped.
inline double holder_seminorm(const SampledField &field, double alpha) {
  field.validate();
  require(field.size() >= 2, ErrorKind::InvalidArgument, "seminorm needs at least two points");
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  if (field.size() > max_seminorm_points)
    fail(ErrorKind::TooManyPoints, "holder_seminorm supports at most 5000 points");
  const std::size_t m = field.size();
  std::vector<double> block_max(block_count(m), 0.0);
  parallel_blocks(m, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        double d = point_distance(field.points[i], field.points[j]);
        if (d == 0.0)
          continue;
        block_max[b] =
            std::max(block_max[b], std::abs(field.values[i] - field.values[j]) / std::pow(d, alpha));
      }
  });
  return *std::max_element(block_max.begin(), block_max.end());
}

struct DistanceBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t pair_count = 0;
  double max_diff = 0.0;
};

struct ExponentFit {
  double alpha_hat = 0.0;
  double lo = 0.0; ///< alpha_hat - 2 stderr
  double hi = 0.0; ///< alpha_hat + 2 stderr
  std::size_t pairs_used = 0;
  std::vector<double> bin_edges;
  std::vector<DistanceBin> bins; ///< bins entering the regression
  bool flagged = false;          ///< alpha_hat outside [0, 1.5]
};

inline constexpr std::size_t min_estimate_points = 100;
inline constexpr std::size_t min_pairs_per_bin = 5;

/// Pairs are grouped into dyadic distance bins [2^k, 2^{k+1}) lying between
/// twice the median nearest-neighbour distance (the sampling resolution) and a
/// quarter of the cloud diameter. log of the per-bin max |f(x) - f(y)| is
/// regressed on log of the bin's geometric midpoint.
inline ExponentFit estimate_exponent(const SampledField &field) {
  field.validate();
  const std::size_t m = field.size();
  if (m < min_estimate_points)
    fail(ErrorKind::InsufficientPairs, "estimate_exponent needs at least 100 points");
  if (m > max_estimate_points)
    fail(ErrorKind::TooManyPoints, "estimate_exponent supports at most 20000 points");

  const std::size_t blocks = block_count(m);
  std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
  std::vector<double> block_diam(blocks, 0.0);
  parallel_blocks(m, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j)
          continue;
        double d = point_distance(field.points[i], field.points[j]);
        if (d > 0.0)
          nearest[i] = std::min(nearest[i], d);
        block_diam[b] = std::max(block_diam[b], d);
      }
  });
  const double diam = *std::max_element(block_diam.begin(), block_diam.end());
  const double floor = 2.0 * median(nearest);
  const double ceiling = diam / 4.0;
  int k_lo = static_cast<int>(std::ceil(std::log2(floor)));
  int k_hi = static_cast<int>(std::floor(std::log2(ceiling)));
  if (!(std::isfinite(floor) && k_hi - k_lo >= 2))
    fail(ErrorKind::InsufficientPairs, "sampling resolution leaves fewer than two distance bins");

  ExponentFit fit;
  const std::size_t nbins = static_cast<std::size_t>(k_hi - k_lo);
  for (int k = k_lo; k <= k_hi; ++k)
    fit.bin_edges.push_back(std::ldexp(1.0, k));
  std::vector<std::vector<DistanceBin>> partial(blocks, std::vector<DistanceBin>(nbins));
  parallel_blocks(m, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    auto &bins = partial[b];
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        double d = point_distance(field.points[i], field.points[j]);
        if (d < fit.bin_edges.front() || d >= fit.bin_edges.back())
          continue;
        int kk = static_cast<int>(std::floor(std::log2(d))) - k_lo;
        auto k = std::min(static_cast<std::size_t>(std::max(kk, 0)), nbins - 1);
        ++bins[k].pair_count;
        bins[k].max_diff = std::max(bins[k].max_diff, std::abs(field.values[i] - field.values[j]));
      }
  });
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < nbins; ++k) {
    DistanceBin bin{fit.bin_edges[k], fit.bin_edges[k + 1], 0, 0.0};
    for (const auto &p : partial)
      bin.pair_count += p[k].pair_count, bin.max_diff = std::max(bin.max_diff, p[k].max_diff);
    if (bin.pair_count < min_pairs_per_bin || bin.max_diff <= 0.0)
      continue;
    fit.pairs_used += bin.pair_count;
    fit.bins.push_back(bin);
    lx.push_back(0.5 * (std::log(bin.lo) + std::log(bin.hi)));
    ly.push_back(std::log(bin.max_diff));
  }
  if (lx.size() < 2)
    fail(ErrorKind::InsufficientPairs, "fewer than two populated distance bins");
  LineFit line = least_squares(lx, ly);
  fit.alpha_hat = line.slope;
  fit.lo = line.slope - 2.0 * line.slope_stderr;
  fit.hi = line.slope + 2.0 * line.slope_stderr;
  fit.flagged = fit.alpha_hat < 0.0 || fit.alpha_hat > 1.5;
  return fit;
}

/// Sup norms of every derivative field with |gamma| <= k plus the alpha
/// seminorms of the order-k fields. `fields` is keyed by multi-index; the
/// zero index holds the function itself.
inline double ck_norm(const std::map<MultiIndex, SampledField> &fields, std::size_t dimension, int k,
                      double alpha) {
  require(k >= 0, ErrorKind::InvalidArgument, "k must be nonnegative");
  double total = 0.0;
  for (int order = 0; order <= k; ++order) {
    for (const auto &gamma : multi_indices_of_order(dimension, order)) {
      auto it = fields.find(gamma);
      if (it == fields.end())
        fail(ErrorKind::MissingDerivativeField, "no field for a derivative of order " +
                                                     std::to_string(order));
      double sup = 0.0;
      for (cplx v : it->second.values)
        sup = std::max(sup, std::abs(v));
      total += sup;
      if (order == k)
        total += holder_seminorm(it->second, alpha);
    }
  }
  return total;
}

/// Bin statistics as CSV with header bin_lo,bin_hi,pair_count,max_diff.
inline std::string bins_csv(const ExponentFit &fit) {
  std::ostringstream os;
  os.precision(17);
  os << "bin_lo,bin_hi,pair_count,max_diff\n";
  for (const auto &b : fit.bins)
    os << b.lo << ',' << b.hi << ',' << b.pair_count << ',' << b.max_diff << '\n';
  return os.str();
}

} // namespace symprod

#endif // SYMPROD_HOLDER_HPP
