/*
 * Copyright 2026 The pfslam Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pfslam/geometry.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "oracles.h"

namespace pfslam {
namespace {

RigidTransform2D RandomTransform(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-10., 10.);
  std::uniform_real_distribution<double> offset(-50., 50.);
  return RigidTransform2D(angle(rng), {offset(rng), offset(rng)});
}

Point2D RandomPoint(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-100., 100.);
  return {coord(rng), coord(rng)};
}

TEST(GeometryTest, ComposeWithIdentity) {
  const RigidTransform2D t(0.7, {1.5, -2.});
  const auto left = Compose(RigidTransform2D::Identity(), t);
  const auto right = Compose(t, RigidTransform2D::Identity());
  for (const auto& r : {left, right}) {
    EXPECT_DOUBLE_EQ(r.rotation(), t.rotation());
    EXPECT_DOUBLE_EQ(r.translation().x, t.translation().x);
    EXPECT_DOUBLE_EQ(r.translation().y, t.translation().y);
  }
}

TEST(GeometryTest, QuarterTurnAfterTranslation) {
  const auto t = Compose(RigidTransform2D(kPi / 2., {0., 0.}),
                         RigidTransform2D(0., {1., 0.}));
  const Point2D p = Apply(t, {0., 0.});
  EXPECT_NEAR(p.x, 0., 1e-15);
  EXPECT_NEAR(p.y, 1., 1e-15);
}

TEST(GeometryTest, ComposeIsAssociativeAgainstMatrixOracle) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto a = RandomTransform(rng);
    const auto b = RandomTransform(rng);
    const auto c = RandomTransform(rng);
    const auto left = Compose(Compose(a, b), c);
    const auto right = Compose(a, Compose(b, c));
    const auto m = oracle::Multiply(
        oracle::Multiply(oracle::Homogeneous(a.rotation(), a.translation().x,
                                             a.translation().y),
                         oracle::Homogeneous(b.rotation(), b.translation().x,
                                             b.translation().y)),
        oracle::Homogeneous(c.rotation(), c.translation().x,
                            c.translation().y));
    EXPECT_NEAR(left.translation().x, right.translation().x, 1e-12);
    EXPECT_NEAR(left.translation().y, right.translation().y, 1e-12);
    EXPECT_NEAR(NormalizeAngle(left.rotation() - right.rotation()), 0., 1e-12);
    EXPECT_NEAR(left.translation().x, m[0][2], 1e-12);
    EXPECT_NEAR(left.translation().y, m[1][2], 1e-12);
    EXPECT_NEAR(std::cos(left.rotation()), m[0][0], 1e-12);
    EXPECT_NEAR(std::sin(left.rotation()), m[1][0], 1e-12);
  }
}

TEST(GeometryTest, ApplyExamples) {
  Point2D p = Apply(RigidTransform2D::Identity(), {1., 0.});
  EXPECT_EQ(p.x, 1.);
  EXPECT_EQ(p.y, 0.);

  p = Apply(RigidTransform2D(kPi, {0., 0.}), {1., 0.});
  EXPECT_NEAR(p.x, -1., 1e-15);
  EXPECT_NEAR(p.y, 0., 1e-15);

  p = Apply(RigidTransform2D(kPi / 2., {2., 3.}), {1., 0.});
  const auto [ox, oy] =
      oracle::Transform(oracle::Homogeneous(kPi / 2., 2., 3.), 1., 0.);
  EXPECT_NEAR(p.x, 2., 1e-15);
  EXPECT_NEAR(p.y, 4., 1e-15);
  EXPECT_NEAR(p.x, ox, 1e-15);
  EXPECT_NEAR(p.y, oy, 1e-15);
}

TEST(GeometryTest, PolarToCartesian) {
  Point2D p = PolarToCartesian(1., 0.);
  EXPECT_EQ(p.x, 1.);
  EXPECT_EQ(p.y, 0.);
  p = PolarToCartesian(2., kPi / 2.);
  EXPECT_NEAR(p.x, 0., 1e-12);
  EXPECT_NEAR(p.y, 2., 1e-12);
  p = PolarToCartesian(5., kPi / 4.);
  EXPECT_NEAR(p.x, 5. / std::sqrt(2.), 1e-14);
  EXPECT_NEAR(p.y, 3.5355339059327378, 1e-14);
  EXPECT_THROW(PolarToCartesian(-0.1, 0.), std::invalid_argument);
}

TEST(GeometryTest, NormalizeAngleExamples) {
  EXPECT_EQ(NormalizeAngle(0.), 0.);
  EXPECT_DOUBLE_EQ(NormalizeAngle(3. * kPi), kPi);
  EXPECT_DOUBLE_EQ(NormalizeAngle(-kPi), kPi);
  EXPECT_DOUBLE_EQ(NormalizeAngle(kPi), kPi);
  // Repeated addition of 2pi until inside the range: one turn suffices, so
  // the result is -7.5 + 2pi, not -7.5 + 4pi (which would exceed pi).
  double expected = -7.5;
  while (expected <= -kPi) expected += 2. * kPi;
  EXPECT_NEAR(NormalizeAngle(-7.5), expected, 1e-15);
  EXPECT_NEAR(NormalizeAngle(-7.5), -1.2168146928204138, 1e-15);
}

TEST(GeometryTest, NormalizeAngleRangeProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-1000., 1000.);
  for (int i = 0; i < 1000; ++i) {
    const double theta = angle(rng);
    const double wrapped = NormalizeAngle(theta);
    EXPECT_GT(wrapped, -kPi);
    EXPECT_LE(wrapped, kPi);
    const double turns = (theta - wrapped) / (2. * kPi);
    EXPECT_NEAR(turns, std::round(turns), 1e-9);
  }
}

TEST(GeometryTest, GroupProperties) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto a = RandomTransform(rng);
    const auto b = RandomTransform(rng);
    const auto p = RandomPoint(rng);
    const auto q = RandomPoint(rng);

    const Point2D composed = Apply(Compose(a, b), p);
    const Point2D chained = Apply(a, Apply(b, p));
    EXPECT_NEAR(composed.x, chained.x, 1e-10);
    EXPECT_NEAR(composed.y, chained.y, 1e-10);

    const Point2D ap = Apply(a, p);
    const Point2D aq = Apply(a, q);
    EXPECT_NEAR(std::hypot(ap.x - aq.x, ap.y - aq.y),
                std::hypot(p.x - q.x, p.y - q.y), 1e-10);

    const auto identity = Compose(a, a.Inverse());
    EXPECT_NEAR(identity.rotation(), 0., 1e-10);
    EXPECT_NEAR(identity.translation().x, 0., 1e-10);
    EXPECT_NEAR(identity.translation().y, 0., 1e-10);
  }
}

TEST(GeometryTest, PolarRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> range(1e-3, 80.);
  std::uniform_real_distribution<double> angle(-kPi + 1e-9, kPi);
  for (int i = 0; i < 1000; ++i) {
    const double r = range(rng);
    const double a = angle(rng);
    const Point2D p = PolarToCartesian(r, a);
    EXPECT_NEAR(std::hypot(p.x, p.y), r, 1e-10);
    EXPECT_NEAR(std::atan2(p.y, p.x), a, 1e-10);
  }
}

TEST(GeometryTest, LidarPoseInWorldMatchesTransformChain) {
  // Vehicle at (1, 2) facing +y; lidar mounted 0.5 m forward, yawed -90 deg.
  const Pose2D vehicle{1., 2., kPi / 2.};
  const RigidTransform2D mount(-kPi / 2., {0.5, 0.});
  const Pose2D lidar = LidarPoseInWorld(vehicle, mount);
  EXPECT_NEAR(lidar.x, 1., 1e-15);
  EXPECT_NEAR(lidar.y, 2.5, 1e-15);
  EXPECT_NEAR(lidar.theta, 0., 1e-15);
}

}  // namespace
}  // namespace pfslam
