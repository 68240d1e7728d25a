/*
   Copyright 2026 The sublevel-kit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>

namespace slk {

/// Resolution and sample caps shared by every estimator, plus the RNG seed.
struct Budget {
    int resolution_2d = 512;
    int resolution_3d = 256;
    /// Grid resolution used for volumes when n >= 4.
    int resolution_nd = 40;
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 42;

    int resolution(int dim) const;
    /// Throws ErrorCode::budget when any cap is non-positive.
    void validate() const;
};

/// Fiber-integral backends.
enum class FiberMethod { mesh, shell_mc };

/// Volume backends.
enum class VolumeMethod { grid, mc };

const char* to_string(FiberMethod m);
const char* to_string(VolumeMethod m);

} // namespace slk
