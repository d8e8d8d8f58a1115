// Acceptance checks. `acceptance` runs every criterion, `acceptance c4` runs one.
// Each prints a single line: <id> PASS|FAIL <name> <measured> <bound> <seconds>.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "symprod/symprod.hpp"

using namespace symprod;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<cplx> separated(const DomainBoundary &domain, int n, std::mt19937_64 &rng, double margin,
                            double sep) {
  for (;;) {
    auto pts = sample_interior(domain, n, rng, margin);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        ok = std::abs(pts[i] - pts[j]) >= sep;
    if (ok)
      return pts;
  }
}

double max_abs_diff(const SymPoint &a, const SymPoint &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.arity(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const char *kDomains[] = {"disc 0 0 1", "ellipse 0 0 1 0.7", "annulus 0 0 0.3 1"};

Outcome cauchy_reproduction() {
  std::mt19937_64 rng(1);
  std::vector<std::pair<PhiSpec, std::function<cplx(cplx)>>> cases;
  for (int m = 0; m <= 8; ++m)
    cases.push_back({phi::Monomial{m}, [m](cplx z) { return std::pow(z, m); }});
  cases.push_back({phi::Pole{3.0, 1}, [](cplx z) { return 1.0 / (z - 3.0); }});
  double worst = 0.0;
  for (const char *d : kDomains) {
    auto domain = build_domain(d);
    auto grid = std::make_shared<const BoundaryGrid>(sample_boundary(domain, 256));
    auto points = sample_interior(domain, 200, rng, 0.1);
    for (const auto &[spec, exact] : cases) {
      auto phi = make_samples(grid, spec);
      for (cplx z : points)
        worst = std::max(worst, std::abs(cauchy_transform(phi, z) - exact(z)));
    }
  }
  return {worst <= 1e-10, fmt("max_err=%.3e bound=1e-10", worst)};
}

Outcome norlund_identity() {
  std::mt19937_64 rng(2);
  auto domain = build_domain("disc 0 0 1");
  double worst = 0.0;
  for (const char *desc : {"pole 3 0 1", "weierstrass 0.5"}) {
    auto phi = make_samples(domain, 256, parse_phi(desc));
    auto transform = [&](cplx z) { return cauchy_transform(phi, z); };
    for (int n = 2; n <= 4; ++n)
      for (int s = 0; s < 200; ++s) {
        ProductPoint w(separated(domain, n, rng, 0.1, 0.1));
        worst = std::max(worst, std::abs(norlund_transform(phi, w) - divdiff_recursive(transform, w.coords())));
      }
  }
  return {worst <= 1e-9, fmt("max_err=%.3e bound=1e-9", worst)};
}

Outcome genocchi_hermite() {
  std::mt19937_64 rng(3);
  auto domain = build_domain("disc 0 0 1");
  std::vector<HolomorphicFunction> fs{exp_function(), monomial_function(5), pole_function(3.0)};
  double worst = 0.0;
  for (const auto &f : fs)
    for (int m = 1; m <= 4; ++m)
      for (int s = 0; s < 50; ++s) {
        auto nodes = separated(domain, m, rng, 0.0, 0.1);
        auto value = [&](cplx z) { return f(z); };
        worst = std::max(worst, std::abs(divdiff_gh(f, nodes) - divdiff_recursive(value, nodes)));
      }
  return {worst <= 1e-9, fmt("max_err=%.3e bound=1e-9", worst)};
}

Outcome push_forward_identity() {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (const char *d : {"disc 0 0 1", "annulus 0 0 0.3 1"}) {
    auto domain = build_domain(d);
    for (const char *desc : {"pole 3 0 1", "weierstrass 0.5"}) {
      auto phi = make_samples(domain, 256, parse_phi(desc));
      for (int n = 1; n <= 3; ++n)
        for (int s = 0; s < 200; ++s) {
          ProductPoint w(sample_interior(domain, n, rng, 0.1));
          worst = std::max(worst,
                           std::abs(symmetrized_transform(phi, symmetrize(w)) - norlund_transform(phi, w)));
        }
    }
  }
  return {worst <= 1e-9, fmt("max_err=%.3e bound=1e-9", worst)};
}

Outcome derivative_factorization() {
  std::mt19937_64 rng(5);
  auto domain = build_domain("disc 0 0 1");
  const double h = 1e-3;
  double worst = 0.0;
  for (const char *desc : {"pole 3 0 1", "weierstrass 0.5"}) {
    auto phi = make_samples(domain, 256, parse_phi(desc));
    for (int n = 1; n <= 3; ++n)
      for (int s = 0; s < 5; ++s) {
        SymPoint z = symmetrize(ProductPoint(sample_interior(domain, n, rng, 0.25)));
        auto at = [&](std::size_t i, double di, std::size_t j, double dj) {
          std::vector<cplx> v = z.vec();
          v[i] += di;
          v[j] += dj;
          return symmetrized_transform(phi, SymPoint(v));
        };
        for (int order = 1; order <= 2; ++order)
          for (const auto &gamma : multi_indices_of_order(n, order)) {
            std::vector<std::size_t> dirs;
            for (std::size_t j = 0; j < gamma.size(); ++j)
              for (int c = 0; c < gamma[j]; ++c)
                dirs.push_back(j);
            // central differences at steps h and h/2, combined to cancel the h^2 term
            auto central = [&](double step) -> cplx {
              if (dirs.size() == 1)
                return (at(dirs[0], step, dirs[0], 0) - at(dirs[0], -step, dirs[0], 0)) / (2 * step);
              if (dirs[0] == dirs[1])
                return (at(dirs[0], step, dirs[0], 0) - 2.0 * symmetrized_transform(phi, z) +
                        at(dirs[0], -step, dirs[0], 0)) /
                       (step * step);
              std::size_t a = dirs[0], b = dirs[1];
              return (at(a, step, b, step) - at(a, step, b, -step) - at(a, -step, b, step) +
                      at(a, -step, b, -step)) /
                     (4 * step * step);
            };
            cplx fd = (4.0 * central(h / 2) - central(h)) / 3.0;
            cplx exact = derivative_symmetrized(gamma, phi, z);
            worst = std::max(worst, std::abs(exact - fd) / std::abs(exact));
          }
      }
  }
  return {worst <= 1e-5, fmt("max_rel_err=%.3e bound=1e-5", worst)};
}

Outcome component_counts() {
  struct Case {
    const char *domain;
    int n;
    std::size_t want;
  };
  bool ok = true;
  std::string detail;
  for (const Case &c : {Case{"disc 0 0 1", 2, 3}, Case{"annulus 0 0 0.3 1", 2, 6}, Case{"disc 0 0 1", 3, 4}}) {
    auto census = component_census(build_domain(c.domain), c.n, 10000, 6);
    ok = ok && census.tally.size() == c.want && census.expected == c.want;
    detail += fmt("%.0f/%.0f ", static_cast<double>(census.tally.size()), static_cast<double>(c.want));
  }
  return {ok, "signatures=" + detail + "(found/expected)"};
}

Outcome lojasiewicz() {
  auto domain = build_domain("disc 0 0 1");
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 3; ++n) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::size_t violations = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto rep = lojasiewicz_check(domain, n, 10000, seed);
      violations += rep.violations;
      lo = std::min(lo, rep.c_max);
      hi = std::max(hi, rep.c_max);
    }
    ok = ok && violations == 0 && hi <= 5.0 * lo;
    detail += fmt("n=%.0f C_max=[%.3g, %.3g] ", n, lo, hi) + "violations=" + std::to_string(violations) + " ";
  }
  return {ok, detail + "bound=factor 5"};
}

Outcome pv_blowup() {
  auto phi = make_samples(build_domain("disc 0 0 1"), 65536, phi::Weierstrass{0.5, 12});
  auto two = pv_growth_fit(phi, 2);
  auto three = pv_growth_fit(phi, 3);
  bool ok2 = std::abs(two.median_slope + 1.0) <= 0.2;
  bool ok3 = std::abs(three.median_slope + 2.0) <= 0.3;
  return {ok2 && ok3, fmt("slope_chi2=%.3f (-1+-0.2) slope_chi3=%.3f (-2+-0.3)", two.median_slope,
                          three.median_slope)};
}

Outcome proper_map() {
  ProperMapSpec spec{disc_map::Power{2}, 2};
  ProperMapEvaluator map(spec, 256);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    std::vector<cplx> w(2);
    for (auto &x : w)
      x = std::polar(0.8 * std::sqrt(u(rng)), two_pi * u(rng));
    SymPoint z = symmetrize(ProductPoint(w));
    worst = std::max(worst, max_abs_diff(map.evaluate(z, Route::integral), map.evaluate(z, Route::roots)));
  }
  auto e = boundary_regularity_experiment(spec, 2000, 42);
  return {worst <= 1e-8 && e.passed,
          fmt("route_err=%.3e (1e-8) min_alpha=%.3f (>=%.3f)", worst, e.min_alpha, e.threshold)};
}

Outcome calibration() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> grid, cloud, circle;
  for (int i = 0; i <= 2000; ++i)
    grid.push_back(-1.0 + i / 1000.0);
  for (int i = 0; i < 2000; ++i)
    cloud.push_back(-1.0 + 2.0 * u(rng));
  for (int i = 0; i < 2000; ++i)
    circle.push_back(two_pi * u(rng));
  double a03 = estimate_exponent(sample_real_field(circle, [](double x) { return weierstrass(x, 0.3, 12); }))
                   .alpha_hat;
  double a05 = estimate_exponent(sample_real_field(grid, [](double x) { return std::sqrt(std::abs(x)); }))
                   .alpha_hat;
  double a10 = estimate_exponent(sample_real_field(cloud, [](double x) { return 2.0 * x + 1.0; })).alpha_hat;
  bool ok = std::abs(a03 - 0.3) <= 0.07 && std::abs(a05 - 0.5) <= 0.07 && std::abs(a10 - 1.0) <= 0.07;
  return {ok, fmt("alpha_hat=%.3f/%.3f/%.3f for 0.3/0.5/1.0 bound=0.07", a03, a05, a10)};
}

Outcome newton_consistency() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n)
    for (int s = 0; s < 1000; ++s) {
      std::vector<cplx> w(n);
      for (auto &x : w)
        x = std::polar(std::sqrt(u(rng)), two_pi * u(rng));
      auto e = newton_map(power_sums(w, n));
      SymPoint expected = symmetrize(ProductPoint(w));
      double num = 0.0, den = 0.0;
      for (int k = 0; k < n; ++k) {
        num += std::norm(e[k] - expected[k]);
        den += std::norm(expected[k]);
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
  return {worst <= 1e-11, fmt("max_rel_err=%.3e bound=1e-11", worst)};
}

} // namespace

int main(int argc, char **argv) {
  const std::vector<std::pair<std::string, std::pair<const char *, Outcome (*)()>>> criteria{
      {"c1", {"cauchy_reproduction", cauchy_reproduction}},
      {"c2", {"norlund_divided_difference", norlund_identity}},
      {"c3", {"genocchi_hermite_vs_recursive", genocchi_hermite}},
      {"c4", {"symmetrized_vs_norlund", push_forward_identity}},
      {"c5", {"derivative_vs_finite_difference", derivative_factorization}},
      {"c6", {"component_census", component_counts}},
      {"c7", {"lojasiewicz_sampling", lojasiewicz}},
      {"c8", {"pv_blowup_slope", pv_blowup}},
      {"c9", {"proper_map_routes_and_regularity", proper_map}},
      {"c10", {"exponent_calibration", calibration}},
      {"c11", {"newton_power_sums", newton_consistency}},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  bool all_pass = true, matched = false;
  for (const auto &[id, entry] : criteria) {
    if (!only.empty() && only != id)
      continue;
    matched = true;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = entry.second();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all_pass = all_pass && o.pass;
    std::cout << id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << entry.first << ' ' << o.detail
              << fmt(" time=%.2fs", secs) << std::endl;
  }
  if (!matched) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
