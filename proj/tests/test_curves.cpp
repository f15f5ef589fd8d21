#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "solgeom/curves.hpp"
#include "solgeom/verify.hpp"

using namespace solgeom;

namespace {

constexpr double kPi = std::numbers::pi;
const double kRootHalf = std::sqrt(0.5);

double angle_gap(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace

TEST(CurvePoint, ZeroLengthIsOrigin) {
  for (double phi : {-2.0, 0.0, 1.0, kPi}) {
    for (double theta : {-kPi / 2, -0.3, 0.0, 0.9, kPi / 2}) {
      EXPECT_EQ(curve_point({{phi, theta}, 0.0}), SolPoint::origin());
    }
  }
}

TEST(CurvePoint, BasePlaneLine) {
  const SolPoint p = curve_point({{kPi / 4, 0.0}, std::sqrt(2.0)});
  EXPECT_NEAR(p.x, 1.0, 1e-15);
  EXPECT_NEAR(p.y, 1.0, 1e-15);
  EXPECT_EQ(p.z, 0.0);
}

TEST(CurvePoint, HandEvaluatedClosedForm) {
  // phi=0, theta=pi/4, t=1: (1 - e^{-sqrt(2)/2}, 0, sqrt(2)/2)
  const SolPoint p = curve_point({{0.0, kPi / 4}, 1.0});
  EXPECT_NEAR(p.x, 1.0 - std::exp(-kRootHalf), 1e-15);
  EXPECT_EQ(p.y, 0.0);
  EXPECT_NEAR(p.z, kRootHalf, 1e-15);
  EXPECT_NEAR(p.x, 0.506931, 1e-6);
}

TEST(CurvePoint, VerticalCurve) {
  EXPECT_EQ(curve_point({{1.2, kPi / 2}, 2.5}), (SolPoint{0.0, 0.0, 2.5}));
  EXPECT_EQ(curve_point({{-0.4, -kPi / 2}, 3.0}), (SolPoint{0.0, 0.0, -3.0}));
}

TEST(CurvePoint, ZHeightIsTSinTheta) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const CurveParams p = verify::random_params(rng, EndpointCase::generic, 10.0);
    EXPECT_EQ(curve_point(p).z, p.t * std::sin(p.dir.theta));
  }
}

TEST(CurveTangent, Examples) {
  const Direction d{0.8, 0.3};
  const Vec3 t0 = curve_tangent({d, 0.0});
  EXPECT_TRUE(t0.isApprox(d.unit_tangent(), 1e-15));

  EXPECT_EQ(curve_tangent({{0.5, kPi / 2}, 4.0}), Vec3(0.0, 0.0, 1.0));

  // phi=0, theta=pi/4, t=1: (sqrt(2)/2 e^{-sqrt(2)/2}, 0, sqrt(2)/2)
  const Vec3 t1 = curve_tangent({{0.0, kPi / 4}, 1.0});
  EXPECT_NEAR(t1.x(), kRootHalf * std::exp(-kRootHalf), 1e-15);
  EXPECT_EQ(t1.y(), 0.0);
  EXPECT_NEAR(t1.z(), kRootHalf, 1e-15);
}

TEST(CurveTangent, MatchesFiniteDifferenceOfCurve) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const CurveParams p = verify::random_params(rng, EndpointCase::generic, 3.0);
    constexpr double h = 1e-5;
    const SolPoint a = curve_point({p.dir, p.t + h});
    const SolPoint b = curve_point({p.dir, p.t - h});
    const Vec3 fd((a.x - b.x) / (2 * h), (a.y - b.y) / (2 * h), (a.z - b.z) / (2 * h));
    EXPECT_LT((fd - curve_tangent(p)).norm(), 1e-6 * std::max(1.0, fd.norm()));
  }
}

TEST(CurveTangent, UnitSpeedInSolMetric) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const CurveParams p = verify::random_params(rng, static_cast<EndpointCase>(i % 4), 10.0);
    EXPECT_NEAR(MetricTensor::at(curve_point(p)).norm(curve_tangent(p)), 1.0, 1e-12);
  }
}

TEST(Endpoint, BasePlane) {
  const EndpointSolution s = solve_endpoint({1.0, 1.0, 0.0});
  EXPECT_EQ(s.branch, EndpointCase::z_zero);
  EXPECT_NEAR(s.params.dir.phi, kPi / 4, 1e-15);
  EXPECT_EQ(s.params.dir.theta, 0.0);
  EXPECT_NEAR(s.params.t, std::sqrt(2.0), 1e-15);

  EXPECT_NEAR(params_from_endpoint({-2.0, 0.0, 0.0}).dir.phi, kPi, 0.0);
  EXPECT_NEAR(params_from_endpoint({0.0, -3.0, 0.0}).dir.phi, -kPi / 2, 1e-15);
}

TEST(Endpoint, VerticalAxis) {
  const EndpointSolution s = solve_endpoint({0.0, 0.0, -3.0});
  EXPECT_EQ(s.branch, EndpointCase::axis);
  EXPECT_EQ(s.params.dir.theta, -kPi / 2);
  EXPECT_EQ(s.params.dir.phi, 0.0);
  EXPECT_EQ(s.params.t, 3.0);
}

TEST(Endpoint, GenericAgreesWithBruteForce) {
  const SolPoint p{-1.0, 1.0, 1.0};
  const EndpointSolution s = solve_endpoint(p);
  EXPECT_EQ(s.branch, EndpointCase::generic);
  EXPECT_LT(s.residual, 1e-10);

  const verify::BruteForceResult oracle = verify::brute_force_params(p);
  ASSERT_TRUE(oracle.converged);
  EXPECT_LT(verify::params_distance(s.params, oracle.params), 1e-8);
  EXPECT_GT(s.params.t, 0.0);
}

TEST(Endpoint, YZeroBranchPicksPhiZeroOrPi) {
  for (const SolPoint p : {SolPoint{2.0, 0.0, 1.0}, SolPoint{-2.0, 0.0, 1.0}, SolPoint{2.0, 0.0, -1.0},
                           SolPoint{-0.5, 0.0, -4.0}}) {
    const EndpointSolution s = solve_endpoint(p);
    EXPECT_EQ(s.branch, EndpointCase::y_zero);
    EXPECT_TRUE(s.params.dir.phi == 0.0 || s.params.dir.phi == kPi) << to_string(p);
    EXPECT_GT(s.params.t, 0.0);
    EXPECT_LT(s.residual, 1e-12) << to_string(p);
  }
}

TEST(Endpoint, XZeroSubcaseResolvesToHalfAxis) {
  const EndpointSolution up = solve_endpoint({0.0, 2.0, 1.0});
  EXPECT_NEAR(up.params.dir.phi, kPi / 2, 1e-15);
  const EndpointSolution down = solve_endpoint({0.0, -2.0, 1.0});
  EXPECT_NEAR(down.params.dir.phi, -kPi / 2, 1e-15);
  EXPECT_LT(up.residual, 1e-12);
  EXPECT_LT(down.residual, 1e-12);
}

TEST(Endpoint, RejectsOriginAndNonFinite) {
  EXPECT_THROW(solve_endpoint(SolPoint::origin()), InvalidInput);
  EXPECT_THROW(solve_endpoint({std::nan(""), 1.0, 1.0}), InvalidInput);
  EXPECT_THROW(solve_endpoint({INFINITY, 1.0, 1.0}), InvalidInput);
}

TEST(Endpoint, RoundTripAllBranches) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 4000; ++i) {
    const auto branch = static_cast<EndpointCase>(i % 4);
    const CurveParams p = verify::random_params(rng, branch, 10.0);
    const EndpointSolution s = solve_endpoint(curve_point(p));
    ASSERT_EQ(s.branch, branch) << i;
    EXPECT_LT(verify::params_distance(p, s.params), 1e-9) << i;
    EXPECT_LT(s.residual, 1e-10 * std::max(1.0, s.params.t));
  }
}

TEST(Endpoint, TinyHeightStaysAccurate) {
  for (double z : {1e-9, -1e-12, 1e-200}) {
    const SolPoint p{0.7, -1.1, z};
    const EndpointSolution s = solve_endpoint(p);
    EXPECT_LT(s.residual, 1e-14) << z;
    EXPECT_NEAR(s.params.t, std::hypot(0.7, 1.1), 1e-8);
  }
}

TEST(Endpoint, ResultIsAlwaysInRange) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 3000; ++i) {
    const SolPoint p{u(rng), u(rng), u(rng)};
    const CurveParams c = params_from_endpoint(p);
    EXPECT_GT(c.dir.phi, -kPi);
    EXPECT_LE(c.dir.phi, kPi);
    EXPECT_GE(c.dir.theta, -kPi / 2);
    EXPECT_LE(c.dir.theta, kPi / 2);
    EXPECT_GT(c.t, 0.0);
  }
}

TEST(Distance, Examples) {
  const SolPoint p{0.3, -2.0, 1.0};
  EXPECT_EQ(translation_distance(p, p), 0.0);
  EXPECT_NEAR(translation_distance(SolPoint::origin(), {0.0, 0.0, -2.5}), 2.5, 1e-12);
  EXPECT_NEAR(translation_distance(SolPoint::origin(), {3.0, 4.0, 0.0}), 5.0, 1e-12);
}

TEST(Distance, SymmetricAndPositive) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const SolPoint p{u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng)};
    const double d = translation_distance(p, q);
    EXPECT_GT(d, 0.0);
    EXPECT_NEAR(d, translation_distance(q, p), 1e-9);
  }
}

TEST(Distance, ReverseCurveIsAntipodal) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const SolPoint p{u(rng), u(rng), u(rng)};
    const CurveParams fwd = params_from_endpoint(p);
    const CurveParams back = params_from_endpoint(group_inverse(p));
    EXPECT_NEAR(back.dir.theta, -fwd.dir.theta, 1e-12);
    EXPECT_NEAR(angle_gap(back.dir.phi, fwd.dir.phi), kPi, 1e-9);
    EXPECT_NEAR(back.t, fwd.t, 1e-9 * fwd.t);
  }
}

TEST(Distance, TranslationInvariant) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 300; ++i) {
    const SolPoint p{u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng)}, g{u(rng), u(rng), u(rng)};
    const SolIsometry tg = translation_to(g);
    const double d = translation_distance(p, q);
    EXPECT_NEAR(translation_distance(tg.apply(p), tg.apply(q)), d, 1e-9 * std::max(1.0, d));
  }
}

TEST(SampleCurve, Endpoints) {
  const CurveParams p{{0.4, -0.7}, 2.0};
  const auto pts = sample_curve(p, 2);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts.front(), SolPoint::origin());
  EXPECT_EQ(pts.back(), curve_point(p));
  EXPECT_THROW(sample_curve(p, 1), InvalidInput);
}

TEST(SampleCurve, BasePlaneCurveStaysFlat) {
  for (const SolPoint& s : sample_curve({{1.1, 0.0}, 4.0}, 37)) {
    EXPECT_EQ(s.z, 0.0);
  }
}

TEST(SampleCurve, SideInYZPlaneHasZeroX) {
  const CurveParams side = params_from_endpoint({0.0, 1.0, 1.0});
  for (const SolPoint& s : sample_curve(side, 50)) {
    EXPECT_EQ(s.x, 0.0);
  }
  for (const SolPoint& s : sample_segment({0.0, 1.0, 1.0}, {0.0, 2.0, 0.5}, 50)) {
    EXPECT_EQ(s.x, 0.0);
  }
}

TEST(SampleCurve, SegmentEndsAtBothVertices) {
  const SolPoint a{-1.0, 1.0, 1.0}, b{0.5, 5.0, 0.5};
  const auto pts = sample_segment(a, b, 20);
  EXPECT_LT(coord_distance(pts.front(), a), 1e-14);
  EXPECT_LT(coord_distance(pts.back(), b), 1e-12);
}

TEST(DirectionCheck, RejectsOutOfRange) {
  EXPECT_THROW(Direction::checked(4.0, 0.0), InvalidInput);
  EXPECT_THROW(Direction::checked(0.0, 1.6), InvalidInput);
  EXPECT_THROW(CurveParams::checked(0.0, 0.0, -1.0), InvalidInput);
  EXPECT_EQ(Direction::checked(-kPi, 0.2).phi, kPi);
  EXPECT_NEAR((Direction{0.3, -1.2}.unit_tangent().norm()), 1.0, 1e-15);
}
