// Copyright 2026 The DSBP Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace dsbp
{
    /// SplitMix64 finalizer; used to derive independent per-vehicle streams from one seed.
    constexpr std::uint64_t mix_seed (std::uint64_t seed, std::uint64_t stream)
    {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /**
     * @brief Seeded generator with a portable uniform draw.
     *
     * std::uniform_real_distribution is implementation-defined, so draws are
     * built from the top 53 bits of mt19937_64 to keep output byte-identical
     * across standard libraries.
     */
    class Rng
    {
      public:
        explicit Rng (std::uint64_t seed) : engine_ (seed) {}

        /// Uniform in [0, 1).
        double uniform () { return static_cast<double> (engine_ () >> 11) * 0x1.0p-53; }

        /// Uniform in [lo, hi).
        double uniform (double lo, double hi) { return lo + (hi - lo) * uniform (); }

      private:
        std::mt19937_64 engine_;
    };

} // namespace dsbp
