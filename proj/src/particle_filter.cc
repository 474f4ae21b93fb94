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

#include "pfslam/particle_filter.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.h"
#include "pfslam/error.h"

namespace pfslam {
namespace {

std::mt19937_64 MakeStream(std::uint64_t master_seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

ParticleSet::ParticleSet(std::size_t count, const Pose2D& start_pose,
                         std::uint64_t master_seed)
    : master_seed_(master_seed) {
  if (count == 0) {
    throw std::invalid_argument("ParticleSet needs at least one particle");
  }
  const Pose2D start{start_pose.x, start_pose.y,
                     NormalizeAngle(start_pose.theta)};
  particles_.assign(count, Particle{start, 1. / static_cast<double>(count)});
  streams_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    streams_.push_back(MakeStream(master_seed, i));
  }
  // The resampling stream sits past the last slot index.
  resample_stream_ = MakeStream(master_seed, count);
}

void ParticleSet::Predict(const VelocityEstimate& u,
                          const MotionNoiseParams& noise, int threads) {
  internal::ParallelFor(particles_.size(), threads, [&](std::size_t i) {
    particles_[i].pose = PropagateNoisy(particles_[i].pose, u, noise,
                                        streams_[i]);
  });
}

void ParticleSet::Update(const OccupancyGrid& grid, const LidarScan& scan,
                         std::span<const double> angles,
                         const CalibrationConfig& calib,
                         const UpdateOptions& options) {
  const std::vector<Point2D> lidar_points =
      ScanToLidarPoints(scan, angles, calib);
  std::vector<double> scores(particles_.size(), 0.);
  internal::ParallelFor(
      particles_.size(), options.threads, [&](std::size_t i) {
        const auto lidar_to_world = Compose(
            RigidTransform2D::FromPose(particles_[i].pose),
            calib.vehicle_to_lidar);
        std::vector<Point2D> world_points(lidar_points.size());
        std::transform(lidar_points.begin(), lidar_points.end(),
                       world_points.begin(), [&](const Point2D& p) {
                         return Apply(lidar_to_world, p);
                       });
        scores[i] = Correlation(grid, world_points, options.mode);
      });
  Reweight(scores, options.temperature);
}

void ParticleSet::Reweight(std::span<const double> scores,
                           double temperature) {
  if (scores.size() != particles_.size()) {
    throw std::invalid_argument("Reweight: one score per particle required");
  }
  if (!(temperature > 0.)) {
    throw std::invalid_argument("Reweight: temperature must be positive");
  }
  const double max_score = *std::max_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    particles_[i].weight *= std::exp((scores[i] - max_score) / temperature);
  }
  Normalize();
}

void ParticleSet::Normalize() {
  double total = 0.;
  for (const auto& p : particles_) total += p.weight;
  if (!(total > 0.) || !std::isfinite(total)) {
    throw DegenerateBeliefError("all particle weights vanished");
  }
  for (auto& p : particles_) p.weight /= total;
}

const Particle& ParticleSet::Best() const {
  // max_element returns the first of equal maxima.
  return *std::max_element(
      particles_.begin(), particles_.end(),
      [](const Particle& a, const Particle& b) { return a.weight < b.weight; });
}

double ParticleSet::EffectiveCount() const {
  const double n = static_cast<double>(particles_.size());
  // Rounding in 1 / (N * (1/N)^2) misses N by a few ulps; uniform weights
  // are exactly N by definition.
  const double first = particles_.front().weight;
  if (std::all_of(particles_.begin(), particles_.end(),
                  [first](const Particle& p) { return p.weight == first; })) {
    return n;
  }
  double sum_squares = 0.;
  for (const auto& p : particles_) sum_squares += p.weight * p.weight;
  return std::clamp(1. / sum_squares, 1., n);
}

void ParticleSet::Resample() {
  const std::size_t n = particles_.size();
  const double step = 1. / static_cast<double>(n);
  const double offset =
      std::uniform_real_distribution<double>(0., step)(resample_stream_);

  std::vector<Particle> resampled;
  resampled.reserve(n);
  std::size_t j = 0;
  // Zero-weight slots own an empty interval. Rounding can leave the final
  // cumulative sum a hair under 1, so selection only ever lands on a slot
  // with positive weight.
  std::size_t selected = 0;
  while (particles_[selected].weight == 0. && selected + 1 < n) ++selected;
  double cumulative = particles_[0].weight;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = offset + static_cast<double>(k) * step;
    while (target > cumulative && j + 1 < n) {
      ++j;
      cumulative += particles_[j].weight;
      if (particles_[j].weight > 0.) selected = j;
    }
    resampled.push_back({particles_[selected].pose, step});
  }
  particles_ = std::move(resampled);
}

Pose2D ParticleSet::MeanPose() const {
  double x = 0.;
  double y = 0.;
  double s = 0.;
  double c = 0.;
  for (const auto& p : particles_) {
    x += p.weight * p.pose.x;
    y += p.weight * p.pose.y;
    s += p.weight * std::sin(p.pose.theta);
    c += p.weight * std::cos(p.pose.theta);
  }
  return {x, y, NormalizeAngle(std::atan2(s, c))};
}

void ParticleSet::SetParticles(std::vector<Particle> particles) {
  if (particles.size() != particles_.size()) {
    throw std::invalid_argument("SetParticles: particle count is fixed");
  }
  for (const auto& p : particles) {
    if (!(p.weight >= 0.) || !std::isfinite(p.weight)) {
      throw std::invalid_argument("SetParticles: bad weight");
    }
  }
  particles_ = std::move(particles);
  for (auto& p : particles_) p.pose.theta = NormalizeAngle(p.pose.theta);
  Normalize();
}

}  // namespace pfslam
