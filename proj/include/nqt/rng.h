// Copyright 2026 The nqt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NQT_RNG_H
#define NQT_RNG_H

#include <cstdint>

namespace nqt {

/// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Stream of uniform variates in [0, 1) keyed by (seed, stream index).
///
/// Each (seed, stream) pair gives an independent SplitMix64 sequence, so a
/// Monte Carlo loop can key one stream per event and get identical numbers
/// no matter how events are partitioned across threads. The conversion to
/// double is done by hand so results do not depend on the standard library.
class UniformStream {
   public:
    explicit constexpr UniformStream(uint64_t seed, uint64_t stream = 0)
        : state_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {
    }

    constexpr uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    constexpr double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

   private:
    uint64_t state_;
};

}  // namespace nqt

#endif
