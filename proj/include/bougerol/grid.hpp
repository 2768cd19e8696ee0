// Copyright 2026 The bougerol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOUGEROL_GRID_HPP_
#define BOUGEROL_GRID_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bougerol {

// Uniform grid on [0, horizon] with a power-of-two step count, so that any
// dyadic fraction of the horizon lands exactly on a grid point and the grid
// can be refined by doubling.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
      throw std::invalid_argument("TimeGrid: horizon must be positive and finite");
    if (steps == 0 || (steps & (steps - 1)) != 0)
      throw std::invalid_argument("TimeGrid: steps must be a power of two");
  }

  double horizon() const { return horizon_; }
  std::size_t steps() const { return steps_; }
  std::size_t points() const { return steps_ + 1; }
  double spacing() const { return horizon_ / static_cast<double>(steps_); }
  double time_at(std::size_t k) const { return spacing() * static_cast<double>(k); }

  // Grid index of the dyadic time horizon*num/den.
  std::size_t index_of_fraction(std::size_t num, std::size_t den) const {
    if (den == 0 || num > den || (steps_ % den) != 0)
      throw std::invalid_argument("TimeGrid: fraction does not land on a grid point");
    return steps_ / den * num;
  }

  TimeGrid refined() const { return TimeGrid(horizon_, steps_ * 2); }

  bool operator==(const TimeGrid& other) const {
    return horizon_ == other.horizon_ && steps_ == other.steps_;
  }

 private:
  double horizon_;
  std::size_t steps_;
};

// A continuous function on [0, horizon] sampled at the grid points.
class Path {
 public:
  Path(TimeGrid grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.points())
      throw std::invalid_argument("Path: need exactly steps+1 values");
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!std::isfinite(values_[k]))
        throw std::invalid_argument("Path: non-finite value at index " + std::to_string(k));
    }
  }

  const TimeGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }
  std::size_t size() const { return values_.size(); }

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

// Running integral A_s of exp(2*phi) on the same grid. A(0) = 0 and the
// profile never decreases; increments can fall below double resolution on
// long horizons where exp(2*phi) has decayed, so strict increase is only
// guaranteed while increments are representable.
class CumulativeProfile {
 public:
  CumulativeProfile(TimeGrid grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.points())
      throw std::invalid_argument("CumulativeProfile: need exactly steps+1 values");
    if (values_.front() != 0.0)
      throw std::invalid_argument("CumulativeProfile: must start at zero");
    for (std::size_t k = 1; k < values_.size(); ++k) {
      if (!(values_[k] > 0.0) || !std::isfinite(values_[k]) || values_[k] < values_[k - 1])
        throw std::invalid_argument("CumulativeProfile: values must be positive and non-decreasing");
    }
  }

  const TimeGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double total() const { return values_.back(); }
  std::size_t size() const { return values_.size(); }

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

}  // namespace bougerol

#endif  // BOUGEROL_GRID_HPP_
