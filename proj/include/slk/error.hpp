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

#include <stdexcept>
#include <string>

namespace slk {

// Numeric values are mirrored by slk_status in slk.h.
enum class ErrorCode : int {
    domain = 1,            // point outside the field's domain box
    non_differentiable,    // gradient requested on a smoothness interface
    level,                 // level outside the field's t-range
    parameter,             // malformed argument
    unknown_field,         // corpus id not recognised
    budget,                // zero or too small sample/resolution budget
    critical_proximity,    // fiber too close to a critical point
    thin_shell,            // shell estimator accepted too few samples
    integrand,             // integrand not finite on the fiber
    decomposition,         // component count differs from declared m
    sandwich,              // no bracketing pair for the mean-value search
    precondition,          // density support violates the check's hypotheses
    io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace slk
