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
#include "psdo/sweep.hpp"

#include <cmath>

#include "psdo/errors.hpp"

namespace psdo {

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  if (!(lo > 0.0) || !(hi > lo)) raise(ErrorKind::InvalidArgument, "log_space needs 0 < lo < hi");
  std::vector<double> out(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

SectorSweep::SectorSweep(double phi2, std::vector<double> rays, std::vector<double> radii,
                         std::vector<ScaleParams> t_grid)
    : phi2_(phi2), rays_(std::move(rays)), radii_(std::move(radii)), t_grid_(std::move(t_grid)) {
  if (!(phi2_ >= 0.0 && phi2_ < kPi)) raise(ErrorKind::InvalidArgument, "sweep angle phi2 must lie in [0, pi)");
  for (double r : rays_) {
    if (std::abs(r) > phi2_ + 1e-12) raise(ErrorKind::InvalidArgument, "sweep ray outside [-phi2, phi2]");
  }
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] >= 0.0) || !std::isfinite(radii_[i])) raise(ErrorKind::InvalidArgument, "sweep radii must be finite and >= 0");
    if (i > 0 && !(radii_[i] > radii_[i - 1])) raise(ErrorKind::InvalidArgument, "sweep radii must increase strictly");
  }
}

SectorSweep SectorSweep::standard(double phi2, std::size_t ray_count, double radius_min, double radius_max,
                                  std::size_t radius_count, std::size_t n, double t_min, double t_max,
                                  std::size_t t_count, double t_cap) {
  std::vector<double> rays;
  if (ray_count == 1) {
    rays.push_back(0.0);
  } else {
    for (std::size_t i = 0; i < ray_count; ++i) {
      rays.push_back(-phi2 + 2.0 * phi2 * static_cast<double>(i) / static_cast<double>(ray_count - 1));
    }
  }
  std::vector<ScaleParams> ts;
  for (double v : log_space(t_min, t_max, t_count)) ts.push_back(ScaleParams::isotropic(n, v, t_cap));
  return SectorSweep(phi2, std::move(rays), log_space(radius_min, radius_max, radius_count), std::move(ts));
}

SweepPoint SectorSweep::point(std::size_t index) const {
  if (index >= size()) raise(ErrorKind::InvalidArgument, "sweep point index out of range");
  const std::size_t nt = t_grid_.size();
  const std::size_t nr = radii_.size();
  SweepPoint p;
  p.index = index;
  p.t = t_grid_[index % nt];
  p.radius = radii_[(index / nt) % nr];
  p.ray = rays_[index / (nt * nr)];
  return p;
}

}  // namespace psdo
