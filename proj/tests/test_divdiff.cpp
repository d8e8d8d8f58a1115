#include <gtest/gtest.h>

#include <random>

#include "symprod/cauchy.hpp"
#include "symprod/divdiff.hpp"
#include "symprod/symmetric.hpp"

using namespace symprod;

TEST(Recursive, Examples) {
  auto sq = [](cplx z) { return z * z; };
  const cplx a[] = {0.0, 2.0};
  EXPECT_EQ(divdiff_recursive(sq, a), cplx(2.0));
  const cplx b[] = {0.0, 1.0, 2.0};
  EXPECT_NEAR(std::abs(divdiff_recursive([](cplx z) { return z * z * z; }, b) - 3.0), 0.0, 1e-14);
  const cplx c[] = {0.0, 0.5};
  EXPECT_NEAR(std::abs(divdiff_recursive(pole_function(3.0), c) + 0.13333333333333333), 0.0, 1e-15);
}

TEST(Recursive, SingleNodeIsValue) {
  const cplx a[] = {0.7};
  EXPECT_EQ(divdiff_recursive(exp_function(), a), std::exp(cplx(0.7)));
}

TEST(Recursive, CoincidentNodesRefused) {
  const cplx a[] = {0.1, 0.5, 0.1};
  try {
    divdiff_recursive(exp_function(), a);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::CoincidentNodes);
  }
}

TEST(Recursive, MonomialClosedForm) {
  // z^r on m nodes gives h_{r-m+1}
  std::vector<cplx> nodes{0.1, cplx(-0.3, 0.2), 0.6, cplx(0, -0.5)};
  for (int r = 0; r <= 6; ++r)
    for (std::size_t m = 1; m <= nodes.size(); ++m) {
      std::span<const cplx> sub(nodes.data(), m);
      EXPECT_LT(std::abs(divdiff_recursive(monomial_function(r), sub) -
                         complete_symmetric(r - int(m) + 1, sub)),
                1e-12);
    }
}

TEST(GenocchiHermite, Examples) {
  const cplx a[] = {0.0, 2.0};
  EXPECT_NEAR(std::abs(divdiff_gh(monomial_function(2), a) - 2.0), 0.0, 1e-14);
  const cplx conf[] = {0.0, 0.0, 0.0};
  EXPECT_NEAR(std::abs(divdiff_gh(exp_function(), conf) - 0.5), 0.0, 1e-14);
  const cplx b[] = {0.0, 0.5, 1.0};
  EXPECT_NEAR(std::abs(divdiff_gh(exp_function(), b) - 0.84167857411757788), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(divdiff_gh(exp_function(), b) - divdiff_recursive(exp_function(), b)), 0.0, 1e-10);
}

TEST(GenocchiHermite, ConfluentLimit) {
  const cplx p(0.2, -0.1);
  for (int n = 1; n <= 4; ++n) {
    std::vector<cplx> nodes;
    for (int j = 0; j <= n; ++j)
      nodes.push_back(p + std::polar(5e-5, two_pi * j / (n + 1)));
    cplx expected = std::exp(p) / std::tgamma(n + 1.0);
    EXPECT_LT(std::abs(divdiff_gh(exp_function(), nodes) - expected), 1e-8) << n;
  }
}

TEST(GenocchiHermite, CauchyDerivativeFallback) {
  // no analytic derivative: the Cauchy circle route must agree
  HolomorphicFunction f([](cplx z) { return std::exp(z); }, nullptr, "exp-numeric", 0.2);
  const cplx b[] = {0.0, 0.5, cplx(0.2, 0.3)};
  EXPECT_LT(std::abs(divdiff_gh(f, b) - divdiff_recursive(exp_function(), b)), 1e-10);
  EXPECT_FALSE(f.has_analytic_derivative());
}

TEST(GenocchiHermite, RuleDimensionChecked) {
  const cplx b[] = {0.0, 0.5, 1.0};
  EXPECT_THROW(divdiff_gh(exp_function(), b, SimplexRule(3, 4)), Error);
}

TEST(CrossRepresentation, RandomTuples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<HolomorphicFunction> fs{exp_function(), pole_function(3.0)};
  for (int m = 0; m <= 6; ++m)
    fs.push_back(monomial_function(m));
  int tuples = 0;
  while (tuples < 40) {
    int n = 1 + tuples % 4;
    std::vector<cplx> nodes(n + 1);
    for (auto &x : nodes)
      x = std::polar(std::sqrt(u(rng)), two_pi * u(rng));
    bool ok = true;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        ok = ok && std::abs(nodes[i] - nodes[j]) >= 0.1;
    if (!ok)
      continue;
    ++tuples;
    for (const auto &f : fs)
      EXPECT_LT(std::abs(divdiff_gh(f, nodes) - divdiff_recursive(f, nodes)), 1e-9) << f.name();
  }
}

TEST(Symmetry, Examples) {
  const cplx a[] = {0.0, 1.0, 2.0};
  auto rep = check_symmetry([](cplx z) { return z * z * z; }, a, 100);
  EXPECT_EQ(rep.permutations_tested, 6u);
  EXPECT_LE(rep.max_deviation, 1e-12);
  const cplx b[] = {0.0, 0.4, cplx(0, 0.8)};
  EXPECT_LE(check_symmetry(pole_function(3.0), b, 100).max_deviation, 1e-12);
  const cplx two[] = {0.3, cplx(0.1, 0.9)};
  EXPECT_EQ(check_symmetry(exp_function(), two, 10).max_deviation, 0.0);
}

TEST(Symmetry, RandomShufflesForLongTuples) {
  std::vector<cplx> nodes;
  for (int j = 0; j < 7; ++j)
    nodes.push_back(std::polar(0.6, two_pi * j / 7));
  auto rep = check_symmetry(exp_function(), nodes, 50, 9);
  EXPECT_EQ(rep.permutations_tested, 50u);
  EXPECT_LE(rep.max_deviation, 1e-10);
}

TEST(Symmetry, CatalogProperty) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<HolomorphicFunction> fs{exp_function(), pole_function(3.0), monomial_function(5)};
  for (int t = 0; t < 100; ++t) {
    std::vector<cplx> nodes(2 + t % 4);
    for (auto &x : nodes)
      x = std::polar(std::sqrt(u(rng)), two_pi * u(rng));
    for (const auto &f : fs)
      EXPECT_LE(check_symmetry(f, nodes, 24, t).max_deviation,
                1e-10 * std::max(1.0, std::abs(divdiff_recursive(f, nodes))));
  }
}

TEST(NorlundIdentity, DividedDifferenceOfCauchyTransform) {
  auto d = build_domain("disc 0 0 1");
  std::mt19937_64 rng(2);
  for (const PhiSpec spec : {PhiSpec{phi::Monomial{4}}, PhiSpec{phi::Pole{3.0, 2}}, PhiSpec{phi::Conjugate{}}}) {
    auto phi = make_samples(d, 256, spec);
    auto cauchy = [&](cplx z) { return cauchy_transform(phi, z); };
    for (int n = 1; n <= 4; ++n) {
      auto w = sample_interior(d, n, rng, 0.1);
      EXPECT_LT(std::abs(divdiff_recursive(cauchy, w) - norlund_transform(phi, ProductPoint(w))), 1e-9);
    }
  }
}
