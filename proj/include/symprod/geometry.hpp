#ifndef SYMPROD_GEOMETRY_HPP
#define SYMPROD_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symprod/error.hpp"
#include "symprod/types.hpp"

namespace symprod {

enum class Orientation { positive, negative };

/// A smooth simple closed curve given by an analytic 2pi-periodic
/// parametrization. Orientation only affects quadrature weights and winding
/// contributions; the parametrization itself always runs counter-clockwise.
class Contour {
public:
  using Map = std::function<cplx(double)>;

  Contour(Map point, Map tangent, Map curvature_vector, Orientation orientation,
          std::string label)
      : point_(std::move(point)), tangent_(std::move(tangent)),
        second_(std::move(curvature_vector)), orientation_(orientation),
        label_(std::move(label)) {}

  static Contour circle(cplx center, double radius,
                        Orientation o = Orientation::positive) {
    require(radius > 0.0, ErrorKind::InvalidGeometry, "circle radius must be positive");
    std::ostringstream os;
    os << "circle " << center.real() << ' ' << center.imag() << ' ' << radius;
    return Contour(
        [=](double th) { return center + radius * std::polar(1.0, th); },
        [=](double th) { return cplx(0.0, radius) * std::polar(1.0, th); },
        [=](double th) { return -radius * std::polar(1.0, th); }, o, os.str());
  }

  static Contour ellipse(cplx center, double a, double b,
                         Orientation o = Orientation::positive) {
    require(a > 0.0 && b > 0.0, ErrorKind::InvalidGeometry,
            "ellipse semi-axes must be positive");
    std::ostringstream os;
    os << "ellipse " << center.real() << ' ' << center.imag() << ' ' << a << ' ' << b;
    return Contour(
        [=](double th) { return center + cplx(a * std::cos(th), b * std::sin(th)); },
        [=](double th) { return cplx(-a * std::sin(th), b * std::cos(th)); },
        [=](double th) { return cplx(-a * std::cos(th), -b * std::sin(th)); }, o,
        os.str());
  }

  /// Polar star r(theta) = R (1 + eps cos(m theta)).
  static Contour star(cplx center, double R, double eps, int m,
                      Orientation o = Orientation::positive) {
    require(R > 0.0 && m >= 1 && eps >= 0.0, ErrorKind::InvalidGeometry,
            "star needs R > 0, m >= 1, eps >= 0");
    std::ostringstream os;
    os << "star " << center.real() << ' ' << center.imag() << ' ' << R << ' ' << eps
       << ' ' << m;
    auto r = [=](double th) { return R * (1.0 + eps * std::cos(m * th)); };
    auto dr = [=](double th) { return -R * eps * m * std::sin(m * th); };
    auto ddr = [=](double th) { return -R * eps * m * m * std::cos(m * th); };
    return Contour(
        [=](double th) { return center + r(th) * std::polar(1.0, th); },
        [=](double th) { return cplx(dr(th), r(th)) * std::polar(1.0, th); },
        [=](double th) {
          return cplx(ddr(th) - r(th), 2.0 * dr(th)) * std::polar(1.0, th);
        },
        o, os.str());
  }

  cplx point(double theta) const { return point_(theta); }
  cplx tangent(double theta) const { return tangent_(theta); }
  cplx second_derivative(double theta) const { return second_(theta); }
  Orientation orientation() const noexcept { return orientation_; }
  double sign() const noexcept {
    return orientation_ == Orientation::positive ? 1.0 : -1.0;
  }
  const std::string &label() const noexcept { return label_; }

  Contour reversed() const {
    return Contour(point_, tangent_, second_,
                   orientation_ == Orientation::positive ? Orientation::negative
                                                         : Orientation::positive,
                   label_);
  }

private:
  Map point_;
  Map tangent_;
  Map second_;
  Orientation orientation_;
  std::string label_;
};

/// Index of a component of C \ Gamma: 0 is U itself, 1 the unbounded
/// component, 2..kappa-1 the holes in contour order.
struct RegionLabel {
  int index = 0;
  friend bool operator==(RegionLabel, RegionLabel) = default;
};

inline constexpr int validation_points = 2048;

namespace detail {

inline std::vector<cplx> dense_samples(const Contour &c, int count) {
  std::vector<cplx> pts(count);
  for (int j = 0; j < count; ++j)
    pts[j] = c.point(two_pi * j / count);
  return pts;
}

inline double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

inline bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  double d1 = cross(p2 - p1, q1 - p1);
  double d2 = cross(p2 - p1, q2 - p1);
  double d3 = cross(q2 - q1, p1 - q1);
  double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 &&
         d3 != 0 && d4 != 0;
}

/// Winding number of a closed polygon about w by summed argument increments.
inline double polygon_winding(const std::vector<cplx> &poly, cplx w) {
  double total = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t j = 0; j < n; ++j)
    total += std::arg((poly[(j + 1) % n] - w) / (poly[j] - w));
  return total / two_pi;
}

inline void check_simple_and_regular(const Contour &c) {
  const int n = validation_points;
  auto pts = dense_samples(c, n);
  for (int j = 0; j < n; ++j) {
    if (std::abs(c.tangent(two_pi * j / n)) <= 1e-12)
      fail(ErrorKind::InvalidGeometry, c.label() + ": vanishing derivative");
  }
  for (int i = 0; i < n; ++i) {
    cplx a = pts[i], b = pts[(i + 1) % n];
    double lo_x = std::min(a.real(), b.real()), hi_x = std::max(a.real(), b.real());
    double lo_y = std::min(a.imag(), b.imag()), hi_y = std::max(a.imag(), b.imag());
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1)
        continue; // adjacent through the seam
      cplx p = pts[j], q = pts[(j + 1) % n];
      if (std::max(p.real(), q.real()) < lo_x || std::min(p.real(), q.real()) > hi_x ||
          std::max(p.imag(), q.imag()) < lo_y || std::min(p.imag(), q.imag()) > hi_y)
        continue;
      if (segments_intersect(a, b, p, q))
        fail(ErrorKind::InvalidGeometry, c.label() + ": self-intersection");
    }
  }
}

inline void check_positive_curvature(const Contour &c) {
  const int n = validation_points;
  for (int j = 0; j < n; ++j) {
    double th = two_pi * j / n;
    if (cross(c.tangent(th), c.second_derivative(th)) <= 0.0)
      fail(ErrorKind::InvalidGeometry,
           c.label() + ": curvature changes sign (star parameter too large)");
  }
}

} // namespace detail

class DomainBoundary {
public:
  /// Validates simplicity, regularity, and hole nesting on the dense grid.
  DomainBoundary(std::vector<Contour> contours, std::string descriptor = {})
      : contours_(std::move(contours)), descriptor_(std::move(descriptor)) {
    require(!contours_.empty(), ErrorKind::InvalidGeometry, "no contours");
    require(contours_.front().orientation() == Orientation::positive,
            ErrorKind::InvalidGeometry, "outer contour must be positively oriented");
    for (std::size_t i = 1; i < contours_.size(); ++i)
      require(contours_[i].orientation() == Orientation::negative,
              ErrorKind::InvalidGeometry, "hole contours must be negatively oriented");
    std::vector<std::vector<cplx>> polys;
    for (const auto &c : contours_) {
      detail::check_simple_and_regular(c);
      polys.push_back(detail::dense_samples(c, validation_points));
    }
    for (std::size_t i = 1; i < polys.size(); ++i) {
      for (std::size_t j = 0; j < polys[i].size(); j += 8) {
        if (std::lround(detail::polygon_winding(polys[0], polys[i][j])) != 1)
          fail(ErrorKind::InvalidGeometry, contours_[i].label() + " not inside outer contour");
        for (std::size_t k = 1; k < polys.size(); ++k) {
          if (k == i)
            continue;
          if (std::lround(detail::polygon_winding(polys[k], polys[i][j])) != 0)
            fail(ErrorKind::InvalidGeometry,
                 contours_[i].label() + " overlaps " + contours_[k].label());
        }
      }
    }
    // all-pairs over every 4th sample; holes lie inside the outer contour
    const auto &outer = polys[0];
    for (std::size_t i = 0; i < outer.size(); i += 4)
      for (std::size_t j = i + 4; j < outer.size(); j += 4)
        diameter_ = std::max(diameter_, std::abs(outer[i] - outer[j]));
  }

  const std::vector<Contour> &contours() const noexcept { return contours_; }
  std::size_t kappa() const noexcept { return contours_.size() + 1; }
  double diameter() const noexcept { return diameter_; }
  double tol_boundary() const noexcept { return 1e-6 * diameter_; }
  const std::string &descriptor() const noexcept { return descriptor_; }

private:
  std::vector<Contour> contours_;
  std::string descriptor_;
  double diameter_ = 0.0;
};

/// Parses and validates a domain descriptor. Grammar: one or more shapes
/// separated by '+', the first being the outer boundary and the rest holes.
///   disc cx cy r | ellipse cx cy a b | star cx cy R eps m |
///   annulus cx cy r_in r_out
inline DomainBoundary build_domain(const std::string &descriptor) {
  std::vector<std::string> pieces;
  {
    std::string cur;
    for (char ch : descriptor) {
      if (ch == '+') {
        pieces.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    pieces.push_back(cur);
  }
  std::vector<Contour> contours;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    std::istringstream in(pieces[p]);
    std::string kind;
    in >> kind;
    Orientation o = p == 0 ? Orientation::positive : Orientation::negative;
    auto need = [&](bool ok) {
      if (!ok || in.fail())
        fail(ErrorKind::ConfigParse, "bad domain descriptor: '" + pieces[p] + "'");
      std::string extra;
      if (in >> extra)
        fail(ErrorKind::ConfigParse, "trailing tokens in domain descriptor: '" + pieces[p] + "'");
    };
    double cx = 0, cy = 0;
    if (kind == "disc") {
      double r = 0;
      in >> cx >> cy >> r;
      need(true);
      contours.push_back(Contour::circle({cx, cy}, r, o));
    } else if (kind == "ellipse") {
      double a = 0, b = 0;
      in >> cx >> cy >> a >> b;
      need(true);
      contours.push_back(Contour::ellipse({cx, cy}, a, b, o));
    } else if (kind == "star") {
      double R = 0, eps = 0;
      int m = 0;
      in >> cx >> cy >> R >> eps >> m;
      need(true);
      auto c = Contour::star({cx, cy}, R, eps, m, o);
      detail::check_positive_curvature(c);
      contours.push_back(std::move(c));
    } else if (kind == "annulus") {
      double rin = 0, rout = 0;
      in >> cx >> cy >> rin >> rout;
      need(p == 0);
      require(rin > 0 && rin < rout, ErrorKind::InvalidGeometry,
              "annulus needs 0 < r_in < r_out");
      contours.push_back(Contour::circle({cx, cy}, rout, Orientation::positive));
      contours.push_back(Contour::circle({cx, cy}, rin, Orientation::negative));
    } else {
      fail(ErrorKind::ConfigParse, "unknown domain shape '" + kind + "'");
    }
  }
  return DomainBoundary(std::move(contours), descriptor);
}

/// Distance from w to a contour: dense scan then golden-section refinement.
inline double distance_to_contour(const Contour &c, cplx w) {
  const int n = 512;
  int best = 0;
  double best_d = std::abs(c.point(0.0) - w);
  for (int j = 1; j < n; ++j) {
    double d = std::abs(c.point(two_pi * j / n) - w);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = two_pi * (best - 1) / n, b = two_pi * (best + 1) / n;
  auto f = [&](double th) { return std::abs(c.point(th) - w); };
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(best_d, std::min(f1, f2));
}

inline double distance_to_boundary(const DomainBoundary &domain, cplx w) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto &c : domain.contours())
    d = std::min(d, distance_to_contour(c, w));
  return d;
}

namespace detail {

/// Argument increment of t(theta) - w over [a, b], bisecting until each chord
/// is short relative to its distance from w.
inline double arg_increment(const Contour &c, cplx w, double a, double b, cplx pa,
                            cplx pb, int depth) {
  double ra = std::abs(pa - w), rb = std::abs(pb - w);
  if (depth >= 60 || std::abs(pb - pa) <= 0.25 * std::min(ra, rb))
    return std::arg((pb - w) / (pa - w));
  double m = 0.5 * (a + b);
  cplx pm = c.point(m);
  return arg_increment(c, w, a, m, pa, pm, depth + 1) +
         arg_increment(c, w, m, b, pm, pb, depth + 1);
}

/// Real-valued winding of the counter-clockwise parametrization about w.
inline double raw_winding(const Contour &c, cplx w) {
  const int base = 256;
  double total = 0.0;
  cplx prev = c.point(0.0);
  for (int j = 0; j < base; ++j) {
    double a = two_pi * j / base, b = two_pi * (j + 1) / base;
    cplx next = c.point(b);
    total += arg_increment(c, w, a, b, prev, next, 0);
    prev = next;
  }
  return total / two_pi;
}

inline int rounded_winding(double value) {
  double r = std::round(value);
  if (std::abs(value - r) > 0.25)
    fail(ErrorKind::Nonconvergent, "winding value not near an integer");
  return static_cast<int>(r);
}

} // namespace detail

/// Total oriented winding number of a cycle of contours about w.
inline int winding_number(std::span<const Contour> contours, cplx w, double tol_boundary) {
  double total = 0.0;
  for (const auto &c : contours) {
    if (distance_to_contour(c, w) <= tol_boundary)
      fail(ErrorKind::BoundaryProximity, "point too close to " + c.label());
    total += c.sign() * detail::raw_winding(c, w);
  }
  return detail::rounded_winding(total);
}

inline int winding_number(const DomainBoundary &domain, cplx w) {
  return winding_number(domain.contours(), w, domain.tol_boundary());
}

inline RegionLabel classify_point(const DomainBoundary &domain, cplx w) {
  const auto &cs = domain.contours();
  const double tol = domain.tol_boundary();
  for (const auto &c : cs)
    if (distance_to_contour(c, w) <= tol)
      fail(ErrorKind::BoundaryProximity, "point too close to " + c.label());
  if (detail::rounded_winding(detail::raw_winding(cs[0], w)) == 0)
    return {1};
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (detail::rounded_winding(detail::raw_winding(cs[i], w)) != 0)
      return {static_cast<int>(i) + 1};
  return {0};
}

struct BoundaryNode {
  cplx t;       ///< point on the contour
  cplx dt;      ///< parametric derivative (counter-clockwise parametrization)
  cplx weight;  ///< signed trapezoid weight: orientation * (2pi/N) * dt
  double theta; ///< parameter value
  int contour;  ///< index into DomainBoundary::contours()
};

/// Equispaced-parameter quadrature grid over every contour of a domain, such
/// that sum_j weight_j g(t_j) approximates the oriented integral of g over Gamma.
class BoundaryGrid {
public:
  BoundaryGrid(std::shared_ptr<const DomainBoundary> domain, std::vector<BoundaryNode> nodes,
               int per_contour)
      : domain_(std::move(domain)), nodes_(std::move(nodes)), per_contour_(per_contour) {}

  const DomainBoundary &domain() const noexcept { return *domain_; }
  std::shared_ptr<const DomainBoundary> domain_ptr() const noexcept { return domain_; }
  std::span<const BoundaryNode> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  int per_contour() const noexcept { return per_contour_; }

private:
  std::shared_ptr<const DomainBoundary> domain_;
  std::vector<BoundaryNode> nodes_;
  int per_contour_;
};

inline BoundaryGrid sample_boundary(const DomainBoundary &domain, int nodes_per_contour) {
  require(nodes_per_contour >= 4 && nodes_per_contour % 2 == 0, ErrorKind::InvalidArgument,
          "nodes per contour must be even and >= 4");
  auto shared = std::make_shared<const DomainBoundary>(domain);
  std::vector<BoundaryNode> nodes;
  nodes.reserve(shared->contours().size() * nodes_per_contour);
  const double h = two_pi / nodes_per_contour;
  for (std::size_t c = 0; c < shared->contours().size(); ++c) {
    const auto &contour = shared->contours()[c];
    for (int j = 0; j < nodes_per_contour; ++j) {
      double th = h * j;
      cplx dt = contour.tangent(th);
      nodes.push_back({contour.point(th), dt, contour.sign() * h * dt, th, static_cast<int>(c)});
    }
  }
  return BoundaryGrid(std::move(shared), std::move(nodes), nodes_per_contour);
}

/// Uniform samples of {w in U : dist(w, Gamma) >= margin} by rejection from
/// the bounding box of the outer contour.
template <typename Rng>
std::vector<cplx> sample_interior(const DomainBoundary &domain, std::size_t count, Rng &rng,
                                  double margin = 0.0) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto &p : detail::dense_samples(domain.contours()[0], 512)) {
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_y = std::max(hi_y, p.imag());
  }
  std::uniform_real_distribution<double> ux(lo_x, hi_x), uy(lo_y, hi_y);
  std::vector<cplx> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    require(++attempts < 1000 * count + 10000, ErrorKind::Degenerate,
            "interior sampling rejected too many points");
    cplx w(ux(rng), uy(rng));
    double d = distance_to_boundary(domain, w);
    if (d <= std::max(margin, domain.tol_boundary()))
      continue;
    if (classify_point(domain, w).index == 0)
      out.push_back(w);
  }
  return out;
}

} // namespace symprod

#endif // SYMPROD_GEOMETRY_HPP
