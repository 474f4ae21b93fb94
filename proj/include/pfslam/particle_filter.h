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

#ifndef PFSLAM_PARTICLE_FILTER_H_
#define PFSLAM_PARTICLE_FILTER_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pfslam/geometry.h"
#include "pfslam/grid_map.h"
#include "pfslam/motion.h"
#include "pfslam/sensor_io.h"

namespace pfslam {

struct Particle {
  Pose2D pose;
  double weight = 0.;
};

// Options for the measurement update.
struct UpdateOptions {
  CorrelationMode mode = CorrelationMode::kCount;
  // Scores are divided by this before exponentiation.
  double temperature = 1.;
  // Worker threads for per-particle scoring. Results do not depend on it.
  int threads = 1;
};

// Weighted pose hypotheses sharing one map.
//
// Every particle slot owns a private random stream seeded from
// (master_seed, slot index), so predictions are reproducible regardless of
// how the work is scheduled. Resampling copies poses between slots but never
// streams, so duplicated particles diverge on the next prediction.
class ParticleSet {
 public:
  // Throws std::invalid_argument for count == 0.
  ParticleSet(std::size_t count, const Pose2D& start_pose,
              std::uint64_t master_seed);

  std::size_t size() const { return particles_.size(); }
  std::span<const Particle> particles() const { return particles_; }
  std::uint64_t master_seed() const { return master_seed_; }

  // Moves every particle through the noisy motion model. Weights are kept.
  void Predict(const VelocityEstimate& u, const MotionNoiseParams& noise,
               int threads = 1);

  // Scores the scan against the grid from each particle's lidar pose and
  // reweights by exp(score / temperature).
  void Update(const OccupancyGrid& grid, const LidarScan& scan,
              std::span<const double> angles, const CalibrationConfig& calib,
              const UpdateOptions& options = {});

  // w_i <- w_i * exp((s_i - max_j s_j) / temperature), then normalized.
  // Throws DegenerateBeliefError if nothing survives.
  void Reweight(std::span<const double> scores, double temperature = 1.);

  // Highest weight; ties go to the lowest index.
  const Particle& Best() const;

  // 1 / sum(w^2), clamped to [1, N].
  double EffectiveCount() const;

  // Systematic resampling; afterwards every weight is exactly 1 / N.
  void Resample();

  // Weighted mean position and circular mean heading.
  Pose2D MeanPose() const;

  // Replaces the particles wholesale. Weights must be finite, non-negative
  // and not all zero; they are normalized here. For tests and tooling.
  void SetParticles(std::vector<Particle> particles);

 private:
  void Normalize();

  std::vector<Particle> particles_;
  std::vector<std::mt19937_64> streams_;
  std::mt19937_64 resample_stream_;
  std::uint64_t master_seed_;
};

}  // namespace pfslam

#endif  // PFSLAM_PARTICLE_FILTER_H_
