#ifndef SYMPROD_CLI_HPP
#define SYMPROD_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symprod/symprod.hpp"

namespace symprod::cli {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string domain = "disc 0 0 1";
  std::optional<std::string> phi; ///< per-command default when unset
  int n = 2;
  std::optional<int> nodes;   ///< per-command default when unset
  std::optional<std::size_t> samples;
  std::uint64_t seed = 42;
  std::string out = "symprod-out";
  double tol_scale = 1.0;
  std::string propermap = "monomial 2";

  int nodes_or(int fallback) const { return nodes.value_or(fallback); }
  std::size_t samples_or(std::size_t fallback) const { return samples.value_or(fallback); }
  std::string phi_or(const std::string &fallback) const { return phi.value_or(fallback); }
};

namespace detail {

inline std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T> T parse_number(const std::string &key, const std::string &value) {
  std::istringstream is(value);
  T v{};
  std::string extra;
  if (!(is >> v) || (is >> extra))
    fail(ErrorKind::ConfigParse, "bad value for '" + key + "': '" + value + "'");
  return v;
}

inline void assign(RunConfig &cfg, const std::string &key, const std::string &value) {
  if (key == "domain")
    cfg.domain = value;
  else if (key == "phi")
    cfg.phi = value;
  else if (key == "n")
    cfg.n = parse_number<int>(key, value);
  else if (key == "nodes")
    cfg.nodes = parse_number<int>(key, value);
  else if (key == "samples")
    cfg.samples = parse_number<std::size_t>(key, value);
  else if (key == "seed")
    cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "out")
    cfg.out = value;
  else if (key == "tol_scale" || key == "tol-scale")
    cfg.tol_scale = parse_number<double>(key, value);
  else if (key == "propermap")
    cfg.propermap = value;
  else
    fail(ErrorKind::ConfigParse, "unknown config key '" + key + "'");
}

} // namespace detail

/// `key = value` entries separated by newlines or ';'; '#' starts a comment.
inline void apply_config_text(RunConfig &cfg, const std::string &text) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream parts(line);
    std::string entry;
    while (std::getline(parts, entry, ';')) {
      entry = detail::trim(entry);
      if (entry.empty())
        continue;
      auto eq = entry.find('=');
      if (eq == std::string::npos)
        fail(ErrorKind::ConfigParse, "expected 'key = value', got '" + entry + "'");
      detail::assign(cfg, detail::trim(entry.substr(0, eq)), detail::trim(entry.substr(eq + 1)));
    }
  }
}

inline void apply_config_file(RunConfig &cfg, const std::string &path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorKind::ConfigParse, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

inline json echo(const RunConfig &cfg) {
  json j;
  j["command"] = cfg.command;
  j["domain"] = cfg.domain;
  j["phi"] = cfg.phi ? json(*cfg.phi) : json(nullptr);
  j["n"] = cfg.n;
  j["nodes"] = cfg.nodes ? json(*cfg.nodes) : json(nullptr);
  j["samples"] = cfg.samples ? json(*cfg.samples) : json(nullptr);
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  j["tol_scale"] = cfg.tol_scale;
  j["propermap"] = cfg.propermap;
  return j;
}

/// Checks collected by a subcommand; any failure turns the exit code to 1.
class Checks {
public:
  void add(const std::string &name, double value, double tolerance, bool passed,
           const std::string &relation = "<=") {
    json c;
    c["name"] = name;
    c["value"] = value;
    c["tolerance"] = tolerance;
    c["relation"] = relation;
    c["passed"] = passed;
    (passed ? passed_ : failures_).push_back(c);
    all_.push_back(c);
  }
  void at_most(const std::string &name, double value, double tolerance) {
    add(name, value, tolerance, value <= tolerance);
  }
  bool ok() const { return failures_.empty(); }
  json all() const { return all_; }
  json failures() const { return failures_; }

private:
  json all_ = json::array(), passed_ = json::array(), failures_ = json::array();
};

class Csv {
public:
  explicit Csv(std::vector<std::string> header) {
    os_.precision(17);
    for (std::size_t i = 0; i < header.size(); ++i)
      os_ << (i ? "," : "") << header[i];
    os_ << '\n';
  }
  template <typename... Ts> void row(const Ts &...cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cells, first = false), ...);
    os_ << '\n';
  }
  void row(const std::vector<double> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

private:
  std::ostringstream os_;
};

struct Outputs {
  json body = json::object();
  std::map<std::string, std::string> csv;
  Checks checks;
};

namespace detail {

inline json fit_json(const ExponentFit &f) {
  json j;
  j["alpha_hat"] = f.alpha_hat;
  j["confidence_band"] = {f.lo, f.hi};
  j["pairs_used"] = f.pairs_used;
  j["bin_edges"] = f.bin_edges;
  j["flagged"] = f.flagged;
  return j;
}

inline std::vector<double> split(std::span<const cplx> values) {
  std::vector<double> out;
  for (cplx v : values) {
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

inline std::vector<std::string> complex_header(const std::string &stem, std::size_t count) {
  std::vector<std::string> h;
  for (std::size_t i = 1; i <= count; ++i) {
    std::string s = count == 1 ? stem : stem + std::to_string(i);
    h.push_back(s + "_re");
    h.push_back(s + "_im");
  }
  return h;
}

/// n random points of U, at least `margin` from Gamma and `sep` from each other.
inline std::vector<cplx> separated_points(const DomainBoundary &domain, int n, std::mt19937_64 &rng,
                                          double margin, double sep) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto pts = sample_interior(domain, n, rng, margin);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        ok = std::abs(pts[i] - pts[j]) >= sep;
    if (ok)
      return pts;
  }
  fail(ErrorKind::Degenerate, "could not draw well-separated points");
}

inline double rel_err(std::span<const cplx> a, std::span<const cplx> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

} // namespace detail

inline void cmd_transform(const RunConfig &cfg, Outputs &out) {
  const auto domain = build_domain(cfg.domain);
  const auto spec = parse_phi(cfg.phi_or("monomial 2"));
  const auto phi = make_samples(domain, cfg.nodes_or(256), spec);
  const double diam = domain.diameter();
  const std::size_t target = cfg.samples_or(200);
  // lattice over the bounding box, kept where dist(z, Gamma) >= 0.05 diam
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto &c : domain.contours())
    for (int j = 0; j < 256; ++j) {
      cplx p = c.point(two_pi * j / 256);
      lo_x = std::min(lo_x, p.real()), hi_x = std::max(hi_x, p.real());
      lo_y = std::min(lo_y, p.imag()), hi_y = std::max(hi_y, p.imag());
    }
  const int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(2.0 * target))));
  std::vector<cplx> grid;
  for (int iy = 0; iy < side; ++iy)
    for (int ix = 0; ix < side; ++ix) {
      cplx z(lo_x + (hi_x - lo_x) * (ix + 0.5) / side, lo_y + (hi_y - lo_y) * (iy + 0.5) / side);
      if (distance_to_boundary(domain, z) >= 0.05 * diam && classify_point(domain, z).index == 0)
        grid.push_back(z);
    }
  Csv cauchy({"z_re", "z_im", "value_re", "value_im"});
  for (cplx z : grid) {
    cplx v = cauchy_transform(phi, z);
    cauchy.row(z.real(), z.imag(), v.real(), v.imag());
  }
  out.csv["cauchy.csv"] = cauchy.str();

  const int n = cfg.n;
  require(n >= 1, ErrorKind::ConfigParse, "n must be >= 1");
  auto header = detail::complex_header("w", n);
  for (auto h : detail::complex_header("norlund", 1))
    header.push_back(h);
  for (auto h : detail::complex_header("symmetrized", 1))
    header.push_back(h);
  Csv multi(header);
  double worst = 0.0;
  std::size_t points = 0;
  for (std::size_t s = 0; s + n <= grid.size(); s += n) {
    ProductPoint w(std::vector<cplx>(grid.begin() + s, grid.begin() + s + n));
    cplx b = norlund_transform(phi, w);
    cplx e = symmetrized_transform(phi, symmetrize(w));
    worst = std::max(worst, std::abs(b - e));
    auto row = detail::split(w.coords());
    for (double x : {b.real(), b.imag(), e.real(), e.imag()})
      row.push_back(x);
    multi.row(row);
    ++points;
  }
  out.csv["transforms.csv"] = multi.str();
  out.body["grid_points"] = grid.size();
  out.body["product_points"] = points;
  out.checks.at_most("symmetrized_vs_norlund", worst, 1e-9 * cfg.tol_scale);
}

inline void cmd_identities(const RunConfig &cfg, Outputs &out) {
  const auto domain = build_domain(cfg.domain);
  const auto spec = parse_phi(cfg.phi_or("monomial 2"));
  const int nodes = cfg.nodes_or(256);
  const auto phi = make_samples(domain, nodes, spec);
  const int n = cfg.n;
  require(n >= 1, ErrorKind::ConfigParse, "n must be >= 1");
  const std::size_t count = cfg.samples_or(200);
  const double diam = domain.diameter();
  const double ts = cfg.tol_scale;
  std::mt19937_64 rng(cfg.seed);

  if (auto ext = holomorphic_extension(spec)) {
    bool applies = true;
    if (auto pole = std::get_if<symprod::phi::Pole>(&spec))
      applies = distance_to_boundary(domain, pole->center) > domain.tol_boundary() &&
                classify_point(domain, pole->center).index != 0;
    if (applies) {
      double worst = 0.0;
      for (cplx z : sample_interior(domain, count, rng, 0.1))
        worst = std::max(worst, std::abs(cauchy_transform(phi, z) - (*ext)(z)));
      out.checks.at_most("cauchy_reproduction", worst, 1e-10 * ts);
    }
  }

  double norlund = 0.0, pushfwd = 0.0, gh = 0.0, roundtrip = 0.0, psi = 0.0, newton = 0.0;
  const auto f_psi = holomorphic_extension(spec).value_or([](cplx t) { return t; });
  auto psi_samples = make_samples(phi.grid_ptr(), f_psi, "psi");
  const auto expf = exp_function();
  const double sep = std::min(0.1, 0.05 * diam);
  for (std::size_t s = 0; s < count; ++s) {
    auto pts = detail::separated_points(domain, n, rng, 0.05 * diam, sep);
    ProductPoint w(pts);
    std::vector<cplx> tvals;
    for (cplx x : pts)
      tvals.push_back(cauchy_transform(phi, x));
    cplx b = norlund_transform(phi, w);
    norlund = std::max(norlund, std::abs(b - divdiff_from_values(pts, tvals)));
    SymPoint z = symmetrize(w);
    pushfwd = std::max(pushfwd, std::abs(symmetrized_transform(phi, z) - b));
    if (n <= 4)
      gh = std::max(gh, std::abs(divdiff_gh(expf, pts) - divdiff_recursive(expf, pts)));
    if (n <= static_cast<int>(max_delta_arity))
      roundtrip = std::max(roundtrip, delta_metric(w, desymmetrize(z).as_point()));
    for (int ell = 1; ell <= n; ++ell) {
      cplx direct = 0.0;
      for (cplx x : pts)
        direct += std::pow(f_psi(x), ell);
      psi = std::max(psi, std::abs(psi_ell(psi_samples, ell, z) - direct));
    }
    newton = std::max(newton, detail::rel_err(newton_map(power_sums(pts, n)), z.coords()));
  }
  out.checks.at_most("norlund_vs_divided_difference", norlund, 1e-9 * ts);
  out.checks.at_most("symmetrized_vs_norlund", pushfwd, 1e-9 * ts);
  if (n <= 4)
    out.checks.at_most("genocchi_hermite_vs_recursive", gh, 1e-9 * ts);
  if (n <= static_cast<int>(max_delta_arity))
    out.checks.at_most("desymmetrize_roundtrip", roundtrip, 1e-8 * ts);
  out.checks.at_most("psi_vs_power_sums", psi, 1e-9 * ts);
  out.checks.at_most("newton_vs_symmetrize", newton, 1e-11 * ts);

  Csv csv({"name", "value", "tolerance", "passed"});
  for (const auto &c : out.checks.all())
    csv.row(c["name"].get<std::string>(), c["value"].get<double>(), c["tolerance"].get<double>(),
            c["passed"].get<bool>() ? 1 : 0);
  out.csv["identities.csv"] = csv.str();
  out.body["points_per_identity"] = count;
}

inline void cmd_components(const RunConfig &cfg, Outputs &out) {
  const auto domain = build_domain(cfg.domain);
  const auto census = component_census(domain, cfg.n, cfg.samples_or(10000), cfg.seed);
  json sigs = json::array();
  Csv csv({"signature", "count"});
  for (const auto &[sig, c] : census.tally) {
    std::string label;
    for (std::size_t i = 0; i < sig.counts.size(); ++i)
      label += (i ? " " : "") + std::to_string(sig.counts[i]);
    sigs.push_back({{"counts", sig.counts}, {"samples", c}});
    csv.row(label, c);
  }
  out.csv["components.csv"] = csv.str();
  out.body["signatures"] = sigs;
  out.body["distinct"] = census.tally.size();
  out.body["expected"] = census.expected;
  out.body["skipped_near_boundary"] = census.skipped;
  out.checks.add("distinct_signatures", static_cast<double>(census.tally.size()),
                 static_cast<double>(census.expected), census.tally.size() == census.expected, "==");
}

inline void cmd_loja(const RunConfig &cfg, Outputs &out) {
  const auto domain = build_domain(cfg.domain);
  const auto rep = lojasiewicz_check(domain, cfg.n, cfg.samples_or(10000), cfg.seed);
  out.body["lambda"] = rep.lambda;
  out.body["pairs_sampled"] = rep.pairs_sampled;
  out.body["pairs_used"] = rep.pairs_used;
  out.body["c_max"] = rep.c_max;
  out.body["violations"] = rep.violations;
  out.body["near_diagonal_pairs"] = rep.near_diagonal_pairs;
  out.body["near_diagonal_slope"] = rep.near_diagonal_slope;
  out.checks.add("violations", static_cast<double>(rep.violations), 0.0, rep.violations == 0, "==");
}

inline void cmd_pv(const RunConfig &cfg, Outputs &out) {
  const auto domain = build_domain(cfg.domain);
  const std::string phi_text = cfg.phi_or("weierstrass 0.5");
  const auto phi = make_samples(domain, cfg.nodes_or(65536), parse_phi(phi_text));
  Csv csv({"multiplicity", "theta", "rho", "magnitude"});
  json fits = json::array();
  for (int chi : {2, 3}) {
    const auto fit = pv_growth_fit(phi, chi);
    for (std::size_t b = 0; b < fit.base_thetas.size(); ++b)
      for (std::size_t r = 0; r < fit.radii.size(); ++r)
        csv.row(chi, fit.base_thetas[b], fit.radii[r], fit.magnitudes[b][r]);
    const double expected = -(chi - 1.0);
    const double band = (chi == 2 ? 0.2 : 0.3) * cfg.tol_scale;
    fits.push_back({{"multiplicity", chi},
                    {"median_slope", fit.median_slope},
                    {"expected_slope", expected},
                    {"slopes", fit.slopes}});
    out.checks.add("pv_slope_chi" + std::to_string(chi), fit.median_slope, band,
                   std::abs(fit.median_slope - expected) <= band, "within");
  }
  out.body["phi"] = phi_text;
  out.body["fits"] = fits;
  out.csv["pv.csv"] = csv.str();
}

inline void cmd_holder(const RunConfig &cfg, Outputs &out) {
  const double ts = cfg.tol_scale;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  json calib = json::array();
  auto calibrate = [&](const std::string &name, const SampledField &field, double lo, double hi) {
    auto fit = estimate_exponent(field);
    calib.push_back({{"name", name}, {"fit", detail::fit_json(fit)}, {"accept", {lo, hi}}});
    double slack = (ts - 1.0) * 0.5 * (hi - lo);
    out.checks.add("calibration_" + name, fit.alpha_hat, hi, fit.alpha_hat >= lo - slack &&
                                                                 fit.alpha_hat <= hi + slack,
                   "within");
  };
  std::vector<double> grid, cloud, circle;
  for (int i = 0; i <= 2000; ++i)
    grid.push_back(-1.0 + i / 1000.0);
  for (int i = 0; i < 2000; ++i)
    cloud.push_back(-1.0 + 2.0 * u(rng));
  for (int i = 0; i < 2000; ++i)
    circle.push_back(two_pi * u(rng));
  calibrate("abs_sqrt", sample_real_field(grid, [](double x) { return std::sqrt(std::abs(x)); }),
            0.45, 0.55);
  calibrate("linear", sample_real_field(cloud, [](double x) { return 2.0 * x + 1.0; }), 0.95, 1.05);
  calibrate("weierstrass_0.3",
            sample_real_field(circle, [](double x) { return weierstrass(x, 0.3, 12); }), 0.25, 0.38);
  out.body["calibration"] = calib;

  // symmetrized transform on pi-images of U^n samples in clusters of ten: a
  // base tuple (a tenth of them with a pair of coordinates within 1e-3) and
  // nine satellites with every root moved by at most margin * 10^-u, u in [0, 3]
  const auto domain = build_domain(cfg.domain);
  const auto phi = make_samples(domain, cfg.nodes_or(256), parse_phi(cfg.phi_or("monomial 2")));
  const int n = cfg.n;
  SampledField field;
  field.metadata = {{"transform", "symmetrized"}, {"phi", cfg.phi_or("monomial 2")},
                    {"domain", cfg.domain}, {"n", std::to_string(n)}};
  const std::size_t count = cfg.samples_or(1000);
  const double margin = 0.1 * domain.diameter();
  std::vector<cplx> base;
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<cplx> w;
    if (s % 10 == 0) {
      base = sample_interior(domain, n, rng, margin);
      if (n >= 2 && u(rng) < 0.1)
        base[1] = base[0] + std::polar(1e-3 * u(rng), two_pi * u(rng));
      w = base;
    } else {
      const double scale = margin * std::pow(10.0, -3.0 * u(rng));
      w = base;
      for (auto &x : w)
        x += std::polar(scale * u(rng), two_pi * u(rng));
    }
    SymPoint z = symmetrize(ProductPoint(w));
    field.points.push_back(z.vec());
    field.values.push_back(symmetrized_transform(phi, z));
  }
  const auto fit = estimate_exponent(field);
  out.body["field"] = {{"metadata", field.metadata}, {"fit", detail::fit_json(fit)}};
  out.csv["holder_bins.csv"] = bins_csv(fit);
}

inline void cmd_propermap(const RunConfig &cfg, Outputs &out) {
  ProperMapSpec spec{parse_disc_map(cfg.propermap), cfg.n};
  validate(spec);
  ProperMapEvaluator map(spec, cfg.nodes_or(256));
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    std::vector<cplx> w(spec.n);
    for (auto &x : w)
      x = std::polar(0.8 * std::sqrt(u(rng)), two_pi * u(rng));
    SymPoint z = symmetrize(ProductPoint(w));
    SymPoint a = map.evaluate(z, Route::integral), b = map.evaluate(z, Route::roots);
    for (int c = 0; c < spec.n; ++c)
      worst = std::max(worst, std::abs(a[c] - b[c]));
  }
  out.checks.at_most("route_agreement", worst, 1e-8 * cfg.tol_scale);

  const auto experiment = boundary_regularity_experiment(spec, cfg.samples_or(2000), cfg.seed,
                                                  cfg.nodes_or(256));
  json fits = json::array();
  Csv csv({"component", "alpha_hat", "lo", "hi", "pairs_used"});
  for (std::size_t c = 0; c < experiment.fits.size(); ++c) {
    fits.push_back(detail::fit_json(experiment.fits[c]));
    csv.row(c + 1, experiment.fits[c].alpha_hat, experiment.fits[c].lo, experiment.fits[c].hi, experiment.fits[c].pairs_used);
  }
  out.csv["propermap_fits.csv"] = csv.str();
  out.body["map"] = spec.describe();
  out.body["fits"] = fits;
  out.body["integral_evaluations"] = experiment.integral_evaluations;
  out.body["root_evaluations"] = experiment.root_evaluations;
  out.body["threshold"] = experiment.threshold;
  out.checks.add("boundary_alpha_min", experiment.min_alpha, experiment.threshold, experiment.passed, ">=");
}

inline void write_outputs(const RunConfig &cfg, const Outputs &out, const json &report) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);
  std::ofstream(fs::path(cfg.out) / "report.json") << report.dump(2) << '\n';
  for (const auto &[name, text] : out.csv)
    std::ofstream(fs::path(cfg.out) / name) << text;
}

/// Exit codes: 0 success, 1 failed tolerance or module error, 2 bad usage or
/// configuration.
inline int run(int argc, const char *const *argv, std::ostream &os = std::cout,
               std::ostream &es = std::cerr) {
  CLI::App app{"Symmetric-product Cauchy transforms: identities and regularity experiments",
               "symprod"};
  app.require_subcommand(1);
  struct Flags {
    std::string domain, phi, out, config, propermap;
    int n = 0, nodes = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double tol_scale = 0.0;
  } flags;
  std::map<std::string, CLI::Option *> opts;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"transform", "evaluate the Cauchy, Norlund and symmetrized transforms on a grid"},
      {"identities", "run the cross-module identity suite"},
      {"components", "count the components of the complement of the kernel zero set"},
      {"loja", "Lojasiewicz ratio sampling"},
      {"pv", "blow-up rate of truncated boundary integrals"},
      {"holder", "Hoelder exponent estimation"},
      {"propermap", "proper map route agreement and boundary regularity"}};
  std::string chosen;
  for (const auto &[name, help] : commands) {
    auto *sub = app.add_subcommand(name, help);
    auto key = [&](const std::string &k) { return name + "/" + k; };
    opts[key("domain")] = sub->add_option("--domain", flags.domain, "domain descriptor");
    opts[key("phi")] = sub->add_option("--phi", flags.phi, "boundary function descriptor");
    opts[key("n")] = sub->add_option("--n", flags.n, "arity");
    opts[key("nodes")] = sub->add_option("--nodes", flags.nodes, "quadrature nodes per contour");
    opts[key("samples")] = sub->add_option("--samples", flags.samples, "sample count");
    opts[key("seed")] = sub->add_option("--seed", flags.seed, "random seed (default 42)");
    opts[key("out")] = sub->add_option("--out", flags.out, "output directory");
    opts[key("tol_scale")] = sub->add_option("--tol-scale", flags.tol_scale, "tolerance multiplier");
    opts[key("config")] = sub->add_option("--config", flags.config, "key = value config file");
    opts[key("propermap")] = sub->add_option("--propermap", flags.propermap, "proper map descriptor");
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, os, es);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  cfg.command = chosen;
  try {
    auto given = [&](const std::string &k) { return opts[chosen + "/" + k]->count() > 0; };
    if (given("config"))
      apply_config_file(cfg, flags.config);
    if (given("domain"))
      cfg.domain = flags.domain;
    if (given("phi"))
      cfg.phi = flags.phi;
    if (given("n"))
      cfg.n = flags.n;
    if (given("nodes"))
      cfg.nodes = flags.nodes;
    if (given("samples"))
      cfg.samples = flags.samples;
    if (given("seed"))
      cfg.seed = flags.seed;
    if (given("out"))
      cfg.out = flags.out;
    if (given("tol_scale"))
      cfg.tol_scale = flags.tol_scale;
    if (given("propermap"))
      cfg.propermap = flags.propermap;
    // descriptors must parse before any work starts
    build_domain(cfg.domain);
    if (cfg.phi)
      parse_phi(*cfg.phi);
    parse_disc_map(cfg.propermap);
    require(cfg.n >= 1, ErrorKind::ConfigParse, "n must be >= 1");
    require(cfg.tol_scale > 0.0, ErrorKind::ConfigParse, "tol-scale must be positive");
    if (cfg.nodes)
      require(*cfg.nodes >= 4 && *cfg.nodes % 2 == 0, ErrorKind::ConfigParse,
              "nodes must be even and >= 4");
  } catch (const Error &e) {
    es << "symprod: " << e.what() << '\n';
    return 2;
  }

  json report;
  report["meta"] = {{"version", version}, {"config", echo(cfg)}, {"seed", cfg.seed}};
  Outputs out;
  int code = 0;
  try {
    if (chosen == "transform")
      cmd_transform(cfg, out);
    else if (chosen == "identities")
      cmd_identities(cfg, out);
    else if (chosen == "components")
      cmd_components(cfg, out);
    else if (chosen == "loja")
      cmd_loja(cfg, out);
    else if (chosen == "pv")
      cmd_pv(cfg, out);
    else if (chosen == "holder")
      cmd_holder(cfg, out);
    else
      cmd_propermap(cfg, out);
    code = out.checks.ok() ? 0 : 1;
    report["results"] = out.body;
    report["checks"] = out.checks.all();
    report["failures"] = out.checks.failures();
  } catch (const Error &e) {
    code = e.kind() == ErrorKind::ConfigParse ? 2 : 1;
    report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    es << "symprod: " << e.what() << '\n';
  }
  report["status"] = code == 0 ? "ok" : "failed";
  try {
    write_outputs(cfg, out, report);
  } catch (const std::exception &e) {
    es << "symprod: cannot write outputs: " << e.what() << '\n';
    return 1;
  }
  os << report["status"].get<std::string>() << ": " << cfg.command << " -> "
     << (std::filesystem::path(cfg.out) / "report.json").string() << '\n';
  for (const auto &f : out.checks.failures())
    os << "  failed " << f["name"].get<std::string>() << " = " << f["value"].get<double>() << '\n';
  return code;
}

} // namespace symprod::cli

#endif // SYMPROD_CLI_HPP
