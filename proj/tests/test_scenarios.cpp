#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "trackeval/scenarios.hpp"

using namespace trackeval;
using namespace trackeval::scenarios;

namespace {

void expect_closed_form(const ScenarioResult& r, double tol = 1e-7) {
  EXPECT_NEAR(r.computed.e_a1, r.closed_form.e_a1, tol) << r.description;
  EXPECT_NEAR(r.computed.e_a2, r.closed_form.e_a2, tol) << r.description;
  EXPECT_NEAR(r.computed.e_c1, r.closed_form.e_c1, tol) << r.description;
  EXPECT_NEAR(r.computed.e_c2, r.closed_form.e_c2, tol) << r.description;
}

}  // namespace

TEST(ScaledExample1, DefaultInstance) {
  const auto r = scaled_example_1(10, 10, 2, 2, 1);
  EXPECT_NEAR(r.closed_form.e_a1, 100.0 / 144.0, 1e-15);
  EXPECT_NEAR(r.closed_form.e_a2, 100.0 / 120.0, 1e-15);
  EXPECT_EQ(r.closed_form.e_c1, 0.0);
  EXPECT_EQ(r.closed_form.e_c2, 1.0);
  expect_closed_form(r);
  EXPECT_LT(r.computed.e_c1, r.computed.e_c2);
  EXPECT_LT(r.computed.e_a1, r.computed.e_a2);
}

TEST(ScaledExample1, TinyGrowthApproachesPerfectOverlap) {
  const auto r = scaled_example_1(10, 10, 1e-9, 1e-9, 1e-10);
  EXPECT_NEAR(r.computed.e_a1, 1.0, 1e-9);
}

TEST(ScaledExample1, Preconditions) {
  EXPECT_THROW(scaled_example_1(10, 10, 2, 2, 1.5), Error);
  EXPECT_THROW(scaled_example_1(10, 10, 0, 2, 0.5), Error);
  EXPECT_THROW(scaled_example_1(-1, 10, 2, 2, 0.5), Error);
  EXPECT_NO_THROW(scaled_example_1(10, 10, 2, 2, 1.0));
}

TEST(ScaledExample1, AmbiguityProperty) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> g(1, 100), d(0.01, 50), f(0.01, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double w = d(rng);
    const auto r = scaled_example_1(g(rng), g(rng), w, d(rng), 0.5 * w * f(rng));
    expect_closed_form(r);
    EXPECT_LT(r.computed.e_c1, r.computed.e_c2);
    EXPECT_LT(r.computed.e_a1, r.computed.e_a2);
  }
}

TEST(ScaledExample2, Examples) {
  const auto tie = scaled_example_2(10, 10, 2, 2);
  expect_closed_form(tie);
  EXPECT_NEAR(tie.computed.e_a1, 0.8, 1e-12);
  EXPECT_NEAR(tie.computed.e_a2, 0.8, 1e-12);
  EXPECT_NEAR(tie.e_ms1, tie.e_ms2, 1e-15);

  const auto r = scaled_example_2(10, 20, 1, 4);
  expect_closed_form(r);
  EXPECT_NEAR(r.computed.e_a1, 0.8, 1e-12);
  EXPECT_NEAR(r.computed.e_a2, 0.9, 1e-12);

  const auto tiny = scaled_example_2(10, 20, 1e-9, 1e-9);
  EXPECT_NEAR(tiny.computed.e_a1, 1.0, 1e-9);
  EXPECT_NEAR(tiny.computed.e_a2, 1.0, 1e-9);
}

TEST(ScaledExample2, TiesWhenProportional) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> g(1, 100), f(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double w_g = g(rng), h_g = g(rng), k = f(rng);
    const auto r = scaled_example_2(w_g, h_g, k * w_g, k * h_g);
    EXPECT_NEAR(r.computed.e_a1, r.computed.e_a2, 1e-12);
    EXPECT_EQ(r.computed.e_c1, r.computed.e_c2);
  }
}

TEST(ScaledExample2, Preconditions) {
  EXPECT_THROW(scaled_example_2(10, 10, 10, 2), Error);
  EXPECT_THROW(scaled_example_2(10, 10, 2, 0), Error);
}

TEST(OrientedExample2, DefaultInstance) {
  const auto r = oriented_example_2(4, 2);
  EXPECT_EQ(r.computed.e_c1, 0.0);
  EXPECT_EQ(r.computed.e_c2, 0.0);
  EXPECT_NEAR(r.computed.e_a1, r.computed.e_a2, 1e-9);
  EXPECT_NEAR(r.e_ms2 - r.e_ms1, (1.0 / 46 - 1.0 / 136) / 5, 1e-12);
  expect_closed_form(r);
}

TEST(OrientedExample2, SquareGivesOctagonOverlap) {
  const auto r = oriented_example_2(2, 2);
  const double s = 2 * (std::numbers::sqrt2 - 1);
  EXPECT_NEAR(r.computed.e_a1, s / (2 - s), 1e-9);
  EXPECT_NEAR(r.computed.e_a2, s / (2 - s), 1e-9);
}

TEST(OrientedExample2, WrapModeTies) {
  const auto r = oriented_example_2(4, 2, AngleMode::wrap);
  EXPECT_NEAR(r.e_ms1, r.e_ms2, 1e-12);
}

TEST(OrientedExample2, DiscriminationProperty) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> g(0.5, 100);
  for (int i = 0; i < 500; ++i) {
    const auto r = oriented_example_2(g(rng), g(rng));
    expect_closed_form(r);
    EXPECT_EQ(r.computed.e_c1, r.computed.e_c2);
    EXPECT_NEAR(r.computed.e_a1, r.computed.e_a2, 1e-9);
    EXPECT_LT(r.e_ms1, r.e_ms2);
  }
}

TEST(ScaledOrientedExample1, DefaultInstance) {
  const auto r = scaled_oriented_example_1(10, 20, 2, 4);
  expect_closed_form(r);
  EXPECT_NEAR(r.computed.e_a1, 0.8, 1e-12);
  EXPECT_NEAR(r.computed.e_a2, 0.8, 1e-12);
  EXPECT_EQ(r.computed.e_c1, 0.0);
  EXPECT_NEAR(r.computed.e_c2, 1.0, 1e-12);
  EXPECT_NE(r.e_ms1, r.e_ms2);
}

TEST(ScaledOrientedExample1, TieOnlyForProportionalOffsets) {
  const auto r = scaled_oriented_example_1(10, 20, 4, 2);
  EXPECT_NEAR(r.computed.e_a1, 0.9, 1e-12);
  EXPECT_NEAR(r.computed.e_a2, 0.6, 1e-12);
  const auto t = scaled_oriented_example_1(10, 20, 1, 2);
  EXPECT_NEAR(t.computed.e_a1, t.computed.e_a2, 1e-12);
}

TEST(ScaledOrientedExample1, SmallOffsetLimit) {
  const auto r = scaled_oriented_example_1(10, 20, 1e-9, 4);
  EXPECT_NEAR(r.computed.e_a2, 1.0, 1e-9);
  EXPECT_NEAR(r.computed.e_c2, 0.0, 1e-9);
}

TEST(ScaledOrientedExample1, PredictionStaysInsideGroundTruth) {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> g(1, 100), f(0.01, 0.99);
  for (int i = 0; i < 500; ++i) {
    const double w = g(rng), h = g(rng);
    const auto r = scaled_oriented_example_1(w, h, f(rng) * w, f(rng) * h);
    expect_closed_form(r);
    EXPECT_NEAR(iou(r.gt, r.pred_alg2), r.pred_alg2.area() / r.gt.area(), 1e-9);
  }
}

TEST(ScaledOrientedExample1, Preconditions) {
  EXPECT_THROW(scaled_oriented_example_1(10, 20, 10, 4), Error);
  EXPECT_THROW(scaled_oriented_example_1(10, 20, 2, 20), Error);
}

TEST(RasterIou, Examples) {
  const RotatedBox a(3, 4, 5, 6, 20);
  EXPECT_EQ(raster_iou(a, a, 300), 1.0);
  EXPECT_EQ(raster_iou(RotatedBox(0, 0, 1, 1), RotatedBox(5, 5, 1, 1), 300), 0.0);
  const double s = 2 * (std::numbers::sqrt2 - 1);
  EXPECT_NEAR(raster_iou(RotatedBox(0, 0, 1, 1, 0), RotatedBox(0, 0, 1, 1, 45)), s / (2 - s), 2e-3);
  EXPECT_THROW(raster_iou(a, a, 50), Error);
}

TEST(RasterIou, AgreesWithClippingOnSample) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> pos(0, 30), dim(1, 30), ang(0, 180);
  for (int i = 0; i < 40; ++i) {
    const RotatedBox a(pos(rng), pos(rng), dim(rng), dim(rng), ang(rng));
    const RotatedBox b(pos(rng), pos(rng), dim(rng), dim(rng), ang(rng));
    EXPECT_NEAR(iou(a, b), raster_iou(a, b, 1000), 4e-3);
  }
}

TEST(BoundaryIou, AgreesWithClipping) {
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> pos(0, 30), dim(1, 30), ang(0, 180);
  for (int i = 0; i < 500; ++i) {
    const RotatedBox a(pos(rng), pos(rng), dim(rng), dim(rng), ang(rng));
    const RotatedBox b(pos(rng), pos(rng), dim(rng), dim(rng), ang(rng));
    EXPECT_NEAR(iou(a, b), boundary_iou(a, b), 1e-9);
  }
}
