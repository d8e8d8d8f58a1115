#include <gtest/gtest.h>

#include <random>

#include "symprod/geometry.hpp"

using namespace symprod;

namespace {

template <typename F> void expect_error(ErrorKind kind, F &&f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

const char *builtin_domains[] = {"disc 0 0 1", "ellipse 0 0 1 0.7", "annulus 0 0 0.3 1",
                                 "star 0 0 1 0.03 5", "disc 0.5 -0.2 2 + disc 1 0 0.3 + disc -0.5 0 0.4"};

} // namespace

TEST(BuildDomain, DiscHasOneContour) {
  auto d = build_domain("disc 0 0 1");
  EXPECT_EQ(d.contours().size(), 1u);
  EXPECT_EQ(d.kappa(), 2u);
  EXPECT_NEAR(d.diameter(), 2.0, 1e-3);
}

TEST(BuildDomain, AnnulusHasHole) {
  auto d = build_domain("annulus 0 0 0.3 1");
  EXPECT_EQ(d.contours().size(), 2u);
  EXPECT_EQ(d.kappa(), 3u);
  EXPECT_EQ(d.contours()[1].orientation(), Orientation::negative);
}

TEST(BuildDomain, RoughStarRejected) {
  expect_error(ErrorKind::InvalidGeometry, [] { build_domain("star 0 0 1 0.8 2"); });
}

TEST(BuildDomain, MildStarAccepted) { EXPECT_NO_THROW(build_domain("star 0 0 1 0.03 5")); }

TEST(BuildDomain, HoleOutsideOuterRejected) {
  expect_error(ErrorKind::InvalidGeometry, [] { build_domain("disc 0 0 1 + disc 3 0 0.2"); });
}

TEST(BuildDomain, OverlappingHolesRejected) {
  expect_error(ErrorKind::InvalidGeometry,
               [] { build_domain("disc 0 0 2 + disc 0 0 0.5 + disc 0.3 0 0.5"); });
}

TEST(BuildDomain, SelfIntersectingContourRejected) {
  // a figure-eight traced twice around
  Contour eight([](double t) { return cplx(std::sin(t), std::sin(2 * t)); },
                [](double t) { return cplx(std::cos(t), 2 * std::cos(2 * t)); },
                [](double t) { return cplx(-std::sin(t), -4 * std::sin(2 * t)); },
                Orientation::positive, "eight");
  expect_error(ErrorKind::InvalidGeometry, [&] { DomainBoundary({eight}); });
}

TEST(BuildDomain, WrongOrientationRejected) {
  expect_error(ErrorKind::InvalidGeometry,
               [] { DomainBoundary({Contour::circle(0.0, 1.0, Orientation::negative)}); });
}

TEST(BuildDomain, ParseErrors) {
  expect_error(ErrorKind::ConfigParse, [] { build_domain("triangle 0 0 1"); });
  expect_error(ErrorKind::ConfigParse, [] { build_domain("disc 0 0"); });
  expect_error(ErrorKind::ConfigParse, [] { build_domain(""); });
  expect_error(ErrorKind::ConfigParse, [] { build_domain("disc 0 0 1 + annulus 0 0 0.1 0.2"); });
}

TEST(Winding, CircleCentreAndExterior) {
  Contour c = Contour::circle(0.0, 1.0);
  std::vector<Contour> cs{c};
  EXPECT_EQ(winding_number(cs, 0.0, 1e-6), 1);
  EXPECT_EQ(winding_number(cs, 2.0, 1e-6), 0);
}

TEST(Winding, AnnulusHoleCancels) {
  auto d = build_domain("annulus 0 0 0.3 1");
  EXPECT_EQ(winding_number(d, 0.1), 0);
  EXPECT_EQ(winding_number(d, 0.5), 1);
}

TEST(Winding, ReversalNegates) {
  Contour c = Contour::ellipse(0.1, 1.0, 0.5);
  std::vector<Contour> fwd{c}, back{c.reversed()};
  for (cplx w : {cplx(0.0), cplx(0.3, 0.2), cplx(-0.7, 0.1)})
    EXPECT_EQ(winding_number(fwd, w, 1e-6), -winding_number(back, w, 1e-6));
}

TEST(Winding, NearBoundaryRefused) {
  std::vector<Contour> cs{Contour::circle(0.0, 1.0)};
  expect_error(ErrorKind::BoundaryProximity, [&] { winding_number(cs, cplx(1.0 + 1e-9, 0.0), 1e-6); });
}

TEST(Classify, Labels) {
  auto disc = build_domain("disc 0 0 1");
  EXPECT_EQ(classify_point(disc, 0.5).index, 0);
  EXPECT_EQ(classify_point(disc, 3.0).index, 1);
  auto ann = build_domain("annulus 0 0 0.3 1");
  EXPECT_EQ(classify_point(ann, 0.1).index, 2);
  EXPECT_EQ(classify_point(ann, cplx(0, 0.6)).index, 0);
  auto two = build_domain("disc 0 0 2 + disc 1 0 0.3 + disc -1 0 0.3");
  EXPECT_EQ(classify_point(two, 1.0).index, 2);
  EXPECT_EQ(classify_point(two, -1.0).index, 3);
  EXPECT_EQ(classify_point(two, cplx(0, 1)).index, 0);
}

TEST(Classify, BoundaryProximity) {
  auto disc = build_domain("disc 0 0 1");
  expect_error(ErrorKind::BoundaryProximity, [&] { classify_point(disc, cplx(0, 1.0 - 1e-8)); });
}

TEST(Classify, ConstantAlongPaths) {
  auto ann = build_domain("annulus 0 0 0.3 1");
  // ring at radius 0.65 stays in U; ring at radius 0.15 stays in the hole
  for (int k = 0; k < 64; ++k) {
    double th = two_pi * k / 64;
    EXPECT_EQ(classify_point(ann, std::polar(0.65, th)).index, 0);
    EXPECT_EQ(classify_point(ann, std::polar(0.15, th)).index, 2);
    EXPECT_EQ(classify_point(ann, std::polar(1.4, th)).index, 1);
  }
}

TEST(SampleBoundary, FourNodesOnCircle) {
  auto grid = sample_boundary(build_domain("disc 0 0 1"), 4);
  const cplx expected[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  ASSERT_EQ(grid.size(), 4u);
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(std::abs(grid.nodes()[j].t - expected[j]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(grid.nodes()[j].weight - cplx(0, std::numbers::pi / 2) * expected[j]), 0.0,
                1e-15);
  }
}

TEST(SampleBoundary, WeightSums) {
  auto grid = sample_boundary(build_domain("disc 0 0 1"), 64);
  cplx sum = 0.0, inv = 0.0;
  for (const auto &n : grid.nodes()) {
    sum += n.weight;
    inv += n.weight / n.t;
  }
  EXPECT_LT(std::abs(sum), 1e-14);
  EXPECT_LT(std::abs(inv - two_pi_i), 1e-12);
}

TEST(SampleBoundary, RejectsOddOrTiny) {
  auto d = build_domain("disc 0 0 1");
  expect_error(ErrorKind::InvalidArgument, [&] { sample_boundary(d, 7); });
  expect_error(ErrorKind::InvalidArgument, [&] { sample_boundary(d, 2); });
}

TEST(SampleBoundary, EntireIntegrandsVanish) {
  for (const char *desc : builtin_domains) {
    auto d = build_domain(desc);
    for (int N = 64; N <= 512; N *= 2) {
      auto grid = sample_boundary(d, N);
      for (int m = 0; m <= 8; ++m) {
        cplx acc = 0.0;
        for (const auto &n : grid.nodes())
          acc += std::pow(n.t, m) * n.weight;
        EXPECT_LT(std::abs(acc), 1e-10) << desc << " N=" << N << " m=" << m;
      }
    }
  }
}

TEST(SampleInterior, PointsLieInDomain) {
  auto d = build_domain("annulus 0 0 0.3 1");
  std::mt19937_64 rng(7);
  for (cplx w : sample_interior(d, 200, rng, 0.05)) {
    EXPECT_EQ(classify_point(d, w).index, 0);
    EXPECT_GE(distance_to_boundary(d, w), 0.05);
  }
}

TEST(Distance, CircleDistanceExact) {
  auto d = build_domain("disc 0 0 1");
  EXPECT_NEAR(distance_to_boundary(d, 0.25), 0.75, 1e-10);
  EXPECT_NEAR(distance_to_boundary(d, cplx(0, 2)), 1.0, 1e-10);
}
