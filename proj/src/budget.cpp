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

#include "slk/budget.hpp"

#include <string>

#include "slk/error.hpp"

namespace slk {

int Budget::resolution(int dim) const {
    if (dim <= 2) return resolution_2d;
    if (dim == 3) return resolution_3d;
    return resolution_nd;
}

void Budget::validate() const {
    if (resolution_2d <= 0 || resolution_3d <= 0 || resolution_nd <= 0 || samples <= 0)
        fail(ErrorCode::budget, "budget must be positive (samples " + std::to_string(samples) +
                                    ", resolutions " + std::to_string(resolution_2d) + "/" +
                                    std::to_string(resolution_3d) + "/" +
                                    std::to_string(resolution_nd) + ")");
}

const char* to_string(FiberMethod m) { return m == FiberMethod::mesh ? "mesh" : "shell_mc"; }

const char* to_string(VolumeMethod m) { return m == VolumeMethod::grid ? "grid" : "mc"; }

} // namespace slk
