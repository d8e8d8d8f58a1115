#ifndef SYMPROD_PROPERMAP_HPP
#define SYMPROD_PROPERMAP_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "symprod/cauchy.hpp"
#include "symprod/error.hpp"
#include "symprod/geometry.hpp"
#include "symprod/holder.hpp"
#include "symprod/roots.hpp"
#include "symprod/symmetric.hpp"

namespace symprod {

namespace disc_map {

/// prod_i (t - a_i) / (1 - conj(a_i) t), |a_i| < 1
struct Blaschke {
  std::vector<cplx> zeros;
};

/// t^degree
struct Power {
  int degree = 1;
};

} // namespace disc_map

using DiscMap = std::variant<disc_map::Blaschke, disc_map::Power>;

inline cplx apply(const DiscMap &f, cplx t) {
  if (auto b = std::get_if<disc_map::Blaschke>(&f)) {
    cplx v = 1.0;
    for (cplx a : b->zeros)
      v *= (t - a) / (1.0 - std::conj(a) * t);
    return v;
  }
  return std::pow(t, std::get<disc_map::Power>(f).degree);
}

/// A proper self-map Sigma^n f of the symmetrized polydisc.
struct ProperMapSpec {
  DiscMap f;
  int n = 1;

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    if (auto b = std::get_if<disc_map::Blaschke>(&f)) {
      os << "blaschke";
      for (cplx a : b->zeros) {
        os << ' ' << a.real();
        if (a.imag() != 0.0)
          os << ',' << a.imag();
      }
    } else {
      int d = std::get<disc_map::Power>(f).degree;
      if (d == 1)
        os << "identity";
      else
        os << "monomial " << d;
    }
    return os.str();
  }
};

inline void validate(const ProperMapSpec &spec) {
  require(spec.n >= 1, ErrorKind::InvalidArgument, "proper map arity must be positive");
  if (auto b = std::get_if<disc_map::Blaschke>(&spec.f)) {
    require(!b->zeros.empty(), ErrorKind::InvalidArgument, "Blaschke product needs a zero");
    for (cplx a : b->zeros)
      require(std::abs(a) < 1.0, ErrorKind::InvalidArgument, "Blaschke zeros must lie in the disc");
  } else {
    require(std::get<disc_map::Power>(spec.f).degree >= 1, ErrorKind::InvalidArgument,
            "monomial degree must be >= 1");
  }
}

/// Parses `identity`, `monomial d`, or `blaschke a_1 a_2 ...` where each zero
/// is `re` or `re,im`.
inline DiscMap parse_disc_map(const std::string &text) {
  std::istringstream is(text);
  std::string kind;
  if (!(is >> kind))
    fail(ErrorKind::ConfigParse, "empty proper map descriptor");
  if (kind == "identity")
    return disc_map::Power{1};
  if (kind == "monomial") {
    int d = 0;
    if (!(is >> d) || d < 1)
      fail(ErrorKind::ConfigParse, "monomial needs a degree >= 1");
    return disc_map::Power{d};
  }
  if (kind == "blaschke") {
    disc_map::Blaschke b;
    std::string tok;
    while (is >> tok) {
      auto comma = tok.find(',');
      try {
        double re = std::stod(tok.substr(0, comma));
        double im = comma == std::string::npos ? 0.0 : std::stod(tok.substr(comma + 1));
        b.zeros.emplace_back(re, im);
      } catch (const std::logic_error &) {
        fail(ErrorKind::ConfigParse, "bad Blaschke zero '" + tok + "'");
      }
      if (std::abs(b.zeros.back()) >= 1.0)
        fail(ErrorKind::ConfigParse, "Blaschke zeros must lie in the unit disc");
    }
    if (b.zeros.empty())
      fail(ErrorKind::ConfigParse, "blaschke needs at least one zero");
    return b;
  }
  fail(ErrorKind::ConfigParse, "unknown proper map '" + kind + "'");
}

enum class Route { integral, roots };

/// Integral route is trusted only when every root stays this many grid
/// spacings (in units of 1/N) inside the unit circle.
inline constexpr double integral_route_margin = 28.0;

class ProperMapEvaluator {
public:
  explicit ProperMapEvaluator(ProperMapSpec spec, int nodes = 256)
      : spec_(std::move(spec)), nodes_(nodes) {
    validate(spec_);
    auto grid = std::make_shared<const BoundaryGrid>(sample_boundary(build_domain("disc 0 0 1"), nodes));
    DiscMap f = spec_.f;
    samples_ = std::make_shared<BoundarySamples>(
        make_samples(grid, [f](cplx t) { return apply(f, t); }, spec_.describe()));
  }

  const ProperMapSpec &spec() const noexcept { return spec_; }
  int nodes() const noexcept { return nodes_; }
  const DomainBoundary &domain() const noexcept { return samples_->domain(); }

  SymPoint evaluate(const SymPoint &z, Route route) const {
    require(z.arity() == static_cast<std::size_t>(spec_.n), ErrorKind::InvalidArgument,
            "point arity differs from the map's n");
    if (route == Route::integral)
      return symmetric_power_map(*samples_, z);
    const RootMultiset roots = desymmetrize(z);
    std::vector<cplx> image;
    for (cplx w : roots.roots) {
      detail::require_in_domain(domain(), w);
      image.push_back(apply(spec_.f, w));
    }
    return symmetrize(ProductPoint(image));
  }

  /// Integral route when the roots leave room for the quadrature, else roots.
  Route preferred_route(const SymPoint &z) const {
    double depth = 1.0;
    for (cplx w : desymmetrize(z).roots)
      depth = std::min(depth, 1.0 - std::abs(w));
    return depth >= integral_route_margin / nodes_ ? Route::integral : Route::roots;
  }

private:
  ProperMapSpec spec_;
  int nodes_;
  std::shared_ptr<BoundarySamples> samples_;
};

inline SymPoint evaluate_proper_map(const ProperMapSpec &spec, const SymPoint &z, Route route,
                                    int nodes = 256) {
  return ProperMapEvaluator(spec, nodes).evaluate(z, route);
}

struct BoundaryExperiment {
  std::vector<ExponentFit> fits; ///< one per component of F
  std::vector<SampledField> fields;
  double theta = 0.9;
  double threshold = 0.0;  ///< theta / Lambda_n - 0.05
  double min_alpha = 0.0;
  std::size_t integral_evaluations = 0;
  std::size_t root_evaluations = 0;
  bool passed = false;
};

/// Root tuples in the disc, in clusters of ten: a base tuple and nine
/// satellites whose roots are moved by 10^-u, u in [1, 4]. Base roots are
/// uniform; with probability 1/2 the first is moved to distance 10^-u,
/// u in [2, 4], from the circle, and with probability 1/10 the second is
/// placed within 1e-3 of the first.
inline std::vector<ProductPoint> near_boundary_tuples(int n, std::size_t count, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ProductPoint> out;
  out.reserve(count);
  std::vector<cplx> base(n);
  for (std::size_t s = 0; s < count; ++s) {
    if (s % 10 == 0) {
      for (auto &x : base)
        x = std::polar(0.999 * std::sqrt(u(rng)), two_pi * u(rng));
      if (u(rng) < 0.5)
        base[0] = std::polar(1.0 - std::pow(10.0, -2.0 - 2.0 * u(rng)), std::arg(base[0]));
      if (n >= 2 && u(rng) < 0.1) {
        cplx off = std::polar(1e-3 * u(rng), two_pi * u(rng));
        base[1] = std::abs(base[0] + off) < 1.0 ? base[0] + off : base[0] - off;
      }
      out.emplace_back(base);
      continue;
    }
    const double scale = std::pow(10.0, -1.0 - 3.0 * u(rng));
    std::vector<cplx> w(base);
    for (auto &x : w) {
      cplx moved = x + std::polar(scale * u(rng), two_pi * u(rng));
      // stay inside the disc at the base root's depth or deeper
      if (std::abs(moved) < std::abs(x) || std::abs(moved) < 1.0 - scale)
        x = moved;
    }
    out.emplace_back(std::move(w));
  }
  return out;
}

inline BoundaryExperiment boundary_regularity_experiment(const ProperMapSpec &spec,
                                                         std::size_t num_samples,
                                                         std::uint64_t seed = 42, int nodes = 256,
                                                         double theta = 0.9) {
  require(num_samples >= 1000, ErrorKind::InvalidArgument, "experiment needs >= 1000 samples");
  ProperMapEvaluator map(spec, nodes);
  std::mt19937_64 rng(seed);
  const auto tuples = near_boundary_tuples(spec.n, num_samples, rng);
  BoundaryExperiment out;
  out.theta = theta;
  out.threshold = theta / lambda_n(spec.n) - 0.05;
  out.fields.resize(spec.n);
  for (int c = 0; c < spec.n; ++c) {
    out.fields[c].metadata = {{"map", spec.describe()},
                              {"n", std::to_string(spec.n)},
                              {"component", std::to_string(c + 1)},
                              {"nodes", std::to_string(nodes)}};
  }
  for (const auto &w : tuples) {
    SymPoint z = symmetrize(w);
    Route route = map.preferred_route(z);
    ++(route == Route::integral ? out.integral_evaluations : out.root_evaluations);
    SymPoint image = map.evaluate(z, route);
    for (int c = 0; c < spec.n; ++c) {
      out.fields[c].points.push_back(z.vec());
      out.fields[c].values.push_back(image[c]);
    }
  }
  out.min_alpha = std::numeric_limits<double>::infinity();
  for (const auto &field : out.fields) {
    out.fits.push_back(estimate_exponent(field));
    out.min_alpha = std::min(out.min_alpha, out.fits.back().alpha_hat);
  }
  out.passed = out.min_alpha >= out.threshold;
  return out;
}

} // namespace symprod

#endif // SYMPROD_PROPERMAP_HPP
