/* Copyright (C) 2026 The psdo authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "psdo/symbols.hpp"
#include "psdo/types.hpp"

namespace psdo {

struct SweepPoint {
  std::size_t index = 0;
  double ray = 0.0;
  double radius = 0.0;
  ScaleParams t;

  cplx lambda() const { return std::polar(radius, ray); }
};

/// Rays x radii discretization of a sector S_phi2, crossed with a list of
/// scale parameters. Points are ordered ray-major, then radius, then t.
class SectorSweep {
 public:
  SectorSweep() = default;
  SectorSweep(double phi2, std::vector<double> rays, std::vector<double> radii, std::vector<ScaleParams> t_grid);

  /// `ray_count` rays spread evenly over [-phi2, phi2], log-spaced radii and
  /// log-spaced isotropic t values.
  static SectorSweep standard(double phi2, std::size_t ray_count, double radius_min, double radius_max,
                              std::size_t radius_count, std::size_t n, double t_min, double t_max,
                              std::size_t t_count, double t_cap = 1.0);

  double phi2() const noexcept { return phi2_; }
  const std::vector<double>& rays() const noexcept { return rays_; }
  const std::vector<double>& radii() const noexcept { return radii_; }
  const std::vector<ScaleParams>& t_grid() const noexcept { return t_grid_; }

  std::size_t size() const noexcept { return rays_.size() * radii_.size() * t_grid_.size(); }
  bool empty() const noexcept { return size() == 0; }
  SweepPoint point(std::size_t index) const;

 private:
  double phi2_ = 0.0;
  std::vector<double> rays_;
  std::vector<double> radii_;
  std::vector<ScaleParams> t_grid_;
};

std::vector<double> log_space(double lo, double hi, std::size_t count);

}  // namespace psdo
