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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

namespace slk {

/// Worker count used by every parallel section; 0 selects hardware concurrency.
void set_thread_count(int threads);
int thread_count();

/// Runs body(b) for every block index in [0, blocks). Blocks may execute in
/// any order on any worker; callers keep per-block results and reduce them in
/// index order so outputs do not depend on the worker count. The exception
/// thrown by the lowest failing block is rethrown.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

/// Samples per Monte Carlo block. Fixed so that block boundaries, and hence
/// results, are independent of the worker count.
inline constexpr std::int64_t kBlockSamples = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the independent stream `stream` derived from `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Stable 64-bit seed for a named sub-computation.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) : engine_(stream_seed(seed, stream)) {}

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

} // namespace slk
