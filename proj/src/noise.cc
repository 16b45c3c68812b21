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

#include "pulsefid/noise.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pulsefid {

std::string_view noise_kind_name(NoiseKind kind) {
    return kind == NoiseKind::Amplitude ? "amplitude" : "phase";
}

NoiseKind parse_noise_kind(std::string_view text) {
    if (text == "amplitude") {
        return NoiseKind::Amplitude;
    }
    if (text == "phase") {
        return NoiseKind::Phase;
    }
    throw std::invalid_argument("unknown noise model '" + std::string(text) + "' (expected amplitude or phase)");
}

void NoiseModel::validate() const {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw std::domain_error("noise delta must be finite and non-negative");
    }
}

StreamRng::StreamRng(SeededStream stream) {
    uint64_t s = mix64(stream.master_seed) ^ mix64(stream.stream_index + 0x9E3779B97F4A7C15ULL);
    for (auto &word : state_) {
        s += 0x9E3779B97F4A7C15ULL;
        word = mix64(s);
    }
}

StreamRng StreamRng::from_state(const std::array<uint64_t, 4> &state) {
    StreamRng rng;
    rng.state_ = state;
    return rng;
}

StreamRng::result_type StreamRng::operator()() {
    uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double StreamRng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double StreamRng::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

std::vector<double> sample_pulse_errors(const NoiseModel &model, size_t count, SeededStream stream) {
    model.validate();
    if (count == 0) {
        throw std::invalid_argument("count must be at least 1");
    }
    std::vector<double> out(count);
    StreamRng rng(stream);
    for (auto &e : out) {
        e = model.delta * rng.standard_normal();
    }
    return out;
}

double accumulated_error_std(const NoiseModel &model, uint64_t n_cycles) {
    model.validate();
    if (n_cycles == 0) {
        throw std::invalid_argument("n_cycles must be at least 1");
    }
    double base = std::sqrt(2.0 * static_cast<double>(n_cycles)) * model.delta;
    return model.kind == NoiseKind::Amplitude ? base : 2.0 * base;
}

}  // namespace pulsefid
