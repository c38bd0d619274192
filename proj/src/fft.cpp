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
#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace psdo::detail {

namespace {

// The FFTW planner is not reentrant; execution of an existing plan on new
// arrays is. Plans are created once per shape under a lock and never freed.
class PlanCache {
 public:
  fftw_plan get(int n, int M, int howmany, int sign) {
    const auto key = std::make_tuple(n, M, howmany, sign);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::vector<int> dims(static_cast<std::size_t>(n), M);
    std::size_t total = static_cast<std::size_t>(howmany);
    for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(M);
    auto* buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    fftw_plan plan = fftw_plan_many_dft(n, dims.data(), howmany, buffer, nullptr, howmany, 1, buffer, nullptr,
                                        howmany, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_in_place(std::complex<double>* data, int n, int M, int howmany, int sign) {
  fftw_plan plan = cache().get(n, M, howmany, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

}  // namespace psdo::detail
