#ifndef SYMPROD_CATALOG_HPP
#define SYMPROD_CATALOG_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "symprod/error.hpp"
#include "symprod/geometry.hpp"
#include "symprod/types.hpp"

namespace symprod {

namespace phi {

/// t^m
struct Monomial {
  int power = 0;
};
/// 1 / (t - a)^r
struct Pole {
  cplx center;
  int order = 1;
};
/// conj(t); not the trace of a holomorphic function
struct Conjugate {};
/// W(theta) = sum_{k=0}^{K} 2^{-alpha k} cos(2^k theta), theta the contour
/// parameter; Hoelder of order alpha and no better.
struct Weierstrass {
  double alpha = 0.5;
  int terms = 12;
};

} // namespace phi

using PhiSpec = std::variant<phi::Monomial, phi::Pole, phi::Conjugate, phi::Weierstrass>;

inline double weierstrass(double theta, double alpha, int terms) {
  double acc = 0.0, freq = 1.0;
  for (int k = 0; k <= terms; ++k) {
    acc += std::pow(2.0, -alpha * k) * std::cos(freq * theta);
    freq *= 2.0;
  }
  return acc;
}

inline cplx evaluate(const PhiSpec &spec, const BoundaryNode &node) {
  return std::visit(
      [&](const auto &s) -> cplx {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, phi::Monomial>)
          return std::pow(node.t, s.power);
        else if constexpr (std::is_same_v<S, phi::Pole>)
          return 1.0 / std::pow(node.t - s.center, s.order);
        else if constexpr (std::is_same_v<S, phi::Conjugate>)
          return std::conj(node.t);
        else
          return weierstrass(node.theta, s.alpha, s.terms);
      },
      spec);
}

/// The holomorphic function whose boundary trace the descriptor is, where one
/// exists.
inline std::optional<std::function<cplx(cplx)>> holomorphic_extension(const PhiSpec &spec) {
  if (auto m = std::get_if<phi::Monomial>(&spec)) {
    int p = m->power;
    return [p](cplx z) { return std::pow(z, p); };
  }
  if (auto pole = std::get_if<phi::Pole>(&spec)) {
    cplx a = pole->center;
    int r = pole->order;
    return [a, r](cplx z) { return 1.0 / std::pow(z - a, r); };
  }
  return std::nullopt;
}

inline std::string describe(const PhiSpec &spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto &s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, phi::Monomial>)
          os << "monomial " << s.power;
        else if constexpr (std::is_same_v<S, phi::Pole>)
          os << "pole " << s.center.real() << ' ' << s.center.imag() << ' ' << s.order;
        else if constexpr (std::is_same_v<S, phi::Conjugate>)
          os << "conj";
        else
          os << "weierstrass " << s.alpha << ' ' << s.terms;
      },
      spec);
  return os.str();
}

/// `monomial m` | `pole re im r` | `conj` | `weierstrass alpha K`
inline PhiSpec parse_phi(const std::string &text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  auto finish = [&] {
    std::string extra;
    if (in.fail() || (in >> extra))
      fail(ErrorKind::ConfigParse, "bad phi descriptor: '" + text + "'");
  };
  if (kind == "monomial") {
    phi::Monomial m;
    in >> m.power;
    finish();
    require(m.power >= 0, ErrorKind::ConfigParse, "monomial power must be >= 0");
    return m;
  }
  if (kind == "pole") {
    double re = 0, im = 0;
    int r = 1;
    in >> re >> im >> r;
    finish();
    require(r >= 1, ErrorKind::ConfigParse, "pole order must be >= 1");
    return phi::Pole{{re, im}, r};
  }
  if (kind == "conj") {
    finish();
    return phi::Conjugate{};
  }
  if (kind == "weierstrass") {
    phi::Weierstrass w;
    in >> w.alpha;
    if (!(in >> w.terms)) {
      in.clear();
      w.terms = 12;
    }
    finish();
    require(w.alpha > 0.0 && w.terms >= 0, ErrorKind::ConfigParse,
            "weierstrass needs alpha > 0, K >= 0");
    return w;
  }
  fail(ErrorKind::ConfigParse, "unknown phi kind '" + kind + "'");
}

} // namespace symprod

#endif // SYMPROD_CATALOG_HPP
