// Copyright 2026 The pulsefid Authors
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

#ifndef PULSEFID_NOISE_H
#define PULSEFID_NOISE_H

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace pulsefid {

enum class NoiseKind : uint8_t { Amplitude, Phase };

std::string_view noise_kind_name(NoiseKind kind);
/// Parses "amplitude" or "phase". Throws std::invalid_argument otherwise.
NoiseKind parse_noise_kind(std::string_view text);

/// Gaussian per-pulse error model: each pulse's area (Amplitude) or axis
/// phase (Phase) is perturbed by an independent Normal(0, delta^2) draw.
struct NoiseModel {
    NoiseKind kind = NoiseKind::Amplitude;
    double delta = 0.0;

    /// Throws std::domain_error unless delta is finite and >= 0.
    void validate() const;
    bool operator==(const NoiseModel &other) const = default;
};

/// Identifies one reproducible random stream.
struct SeededStream {
    uint64_t master_seed = 0;
    uint64_t stream_index = 0;
};

/// SplitMix64 finalizer (Steele, Lea & Flood); a bijection on 64-bit words.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** seeded from a SeededStream.
///
/// The 256-bit state is filled from a SplitMix64 sequence whose start is
///     mix64(master_seed) ^ mix64(stream_index + 0x9E3779B97F4A7C15)
/// so every (master_seed, stream_index) pair gets its own generator and no
/// generator is ever shared between samples. Output is fully specified by
/// integer arithmetic and therefore identical on every platform.
class StreamRng {
   public:
    using result_type = uint64_t;

    explicit StreamRng(SeededStream stream);
    /// Starts from a raw xoshiro256** state (must not be all zero).
    static StreamRng from_state(const std::array<uint64_t, 4> &state);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via the Box-Muller transform of two uniforms:
    ///     r = sqrt(-2 ln(1 - u1)), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2).
    /// z1 is cached and returned by the following call.
    double standard_normal();

   private:
    StreamRng() = default;

    std::array<uint64_t, 4> state_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// `count` independent Normal(0, model.delta^2) draws from `stream`.
std::vector<double> sample_pulse_errors(const NoiseModel &model, size_t count, SeededStream stream);

/// Standard deviation of the accumulated error angle after 2N pulses:
/// sqrt(2N) delta for Amplitude and 2 sqrt(2N) delta for Phase.
double accumulated_error_std(const NoiseModel &model, uint64_t n_cycles);

}  // namespace pulsefid

#endif
