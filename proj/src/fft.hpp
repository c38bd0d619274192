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

#include <complex>

namespace psdo::detail {

/// In-place unnormalized n-dimensional DFT over `howmany` interleaved
/// components (stride howmany, distance 1). sign = -1 forward, +1 inverse.
/// Safe to call concurrently.
void fft_in_place(std::complex<double>* data, int n, int M, int howmany, int sign);

}  // namespace psdo::detail
