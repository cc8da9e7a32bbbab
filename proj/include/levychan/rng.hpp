// levychan - Levy-driven wireless channel simulation and fractional HJB control
// Copyright (C) 2026 the levychan developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LEVYCHAN_RNG_HPP
#define LEVYCHAN_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace levychan {

// 64-bit finalizer (splitmix64 step); full avalanche, used for stream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// xoshiro256++ generator with splittable keyed streams.
///
/// Every simulation draws from a stream derived from (seed, id0, id1, ...),
/// so results are reproducible under any execution order of independent
/// work items (paths, grid nodes, actions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) { reseed(seed); }

    /// Derive an independent stream keyed by (seed, ids...).
    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
        std::uint64_t h = mix64(seed);
        for (std::uint64_t id : ids)
            h = mix64(h ^ mix64(id));
        Rng r(0);
        r.reseed(h);
        return r;
    }

    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : state_) {
            sm += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            w = z ^ (z >> 31);
        }
        // an all-zero state would be a fixed point
        if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0)
            state_[0] = 0x9e3779b97f4a7c15ull;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1); safe for log/pow transforms.
    double uniform_open01() {
        return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
    }

    /// Standard exponential variate, strictly positive.
    double exponential() { return -std::log(uniform_open01()); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_{};
};

} // namespace levychan

#endif // LEVYCHAN_RNG_HPP
