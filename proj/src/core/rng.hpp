// Copyright 2026 The revnwise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVNWISE_CORE_RNG_HPP
#define REVNWISE_CORE_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace rnw {

/// splitmix64 finalizer; used to derive independent named sub-streams from a
/// single run seed so each pipeline stage is reproducible in isolation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_str(std::string_view s) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Derive the seed of a named sub-stream ("oca", "row-7", "sut", ...).
inline std::uint64_t substream_seed(std::uint64_t run_seed, std::string_view name) {
    return mix64(run_seed ^ mix64(hash_str(name)));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(mix64(seed));
}

}  // namespace rnw

#endif  // REVNWISE_CORE_RNG_HPP
