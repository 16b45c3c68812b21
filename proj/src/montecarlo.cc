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

#include "pulsefid/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pulsefid/parallel.h"

namespace pulsefid {

namespace {

// Domain tags keep the pulse-error and initial-state streams of one sample
// independent of each other.
constexpr uint64_t kPulseDomain = 0x70756C7365730001ULL;
constexpr uint64_t kStateDomain = 0x7374617465730002ULL;

SeededStream pulse_stream(const SequenceConfig &config, uint64_t sample_index) {
    return {mix64(config.master_seed ^ kPulseDomain), sample_index};
}

SeededStream state_stream(const SequenceConfig &config, uint64_t sample_index) {
    return {mix64(config.master_seed ^ kStateDomain), sample_index};
}

/// Runs the pulse sequence and calls on_cycle(cycle, fidelity) after every second pulse.
template <typename OnCycle>
BlochAngles run_sequence(const SequenceConfig &config, uint64_t sample_index, OnCycle &&on_cycle) {
    config.validate();
    BlochAngles angles = trajectory_initial_angles(config, sample_index);
    State2 initial = bloch_state(angles.theta, angles.phi);
    State2 psi = initial;
    StreamRng rng(pulse_stream(config, sample_index));
    for (uint64_t cycle = 0; cycle < config.n_cycles; cycle++) {
        for (int pulse = 0; pulse < 2; pulse++) {
            double error = config.model.delta * rng.standard_normal();
            psi = apply(noisy_pi_pulse(config.model.kind, error), psi);
        }
        on_cycle(cycle, fidelity(initial, psi));
    }
    return angles;
}

}  // namespace

void SequenceConfig::validate() const {
    if (n_cycles == 0) {
        throw std::invalid_argument("n_cycles must be at least 1");
    }
    model.validate();
    if (initial_state.kind == InitialState::Kind::FixedBloch) {
        // bloch_state range-checks the angles.
        (void)bloch_state(initial_state.angles.theta, initial_state.angles.phi);
    }
}

BlochAngles worst_case_angles(NoiseKind kind) {
    if (kind == NoiseKind::Amplitude) {
        return {0.0, 0.0};
    }
    return {std::numbers::pi / 2, 0.0};
}

Unitary2 noisy_pi_pulse(NoiseKind kind, double error) {
    return kind == NoiseKind::Amplitude ? amplitude_error_pulse(error) : phase_error_pulse(error);
}

BlochAngles trajectory_initial_angles(const SequenceConfig &config, uint64_t sample_index) {
    switch (config.initial_state.kind) {
        case InitialState::Kind::FixedBloch:
            return config.initial_state.angles;
        case InitialState::Kind::WorstCase:
            return worst_case_angles(config.model.kind);
        case InitialState::Kind::UniformRandom:
            break;
    }
    StreamRng rng(state_stream(config, sample_index));
    double cos_theta = 2.0 * rng.uniform() - 1.0;
    double phi = 2.0 * std::numbers::pi * rng.uniform();
    return {std::acos(std::clamp(cos_theta, -1.0, 1.0)), phi};
}

std::vector<double> trajectory_pulse_errors(const SequenceConfig &config, uint64_t sample_index) {
    config.validate();
    return sample_pulse_errors(config.model, 2 * config.n_cycles, pulse_stream(config, sample_index));
}

FidelityTrace simulate_trajectory(const SequenceConfig &config, uint64_t sample_index) {
    FidelityTrace trace;
    trace.per_cycle_fidelity.reserve(config.n_cycles);
    BlochAngles angles =
        run_sequence(config, sample_index, [&](uint64_t, double f) { trace.per_cycle_fidelity.push_back(f); });
    trace.initial_theta = angles.theta;
    trace.initial_phi = angles.phi;
    return trace;
}

double simulate_final_fidelity(const SequenceConfig &config, uint64_t sample_index) {
    double last = 1.0;
    run_sequence(config, sample_index, [&](uint64_t, double f) { last = f; });
    return last;
}

EnsembleStats summarize(std::span<const double> samples) {
    EnsembleStats stats;
    stats.n_samples = samples.size();
    if (samples.empty()) {
        return stats;
    }
    double sum = 0.0;
    for (double x : samples) {
        sum += x;
    }
    double mean = sum / static_cast<double>(samples.size());
    double sq = 0.0;
    for (double x : samples) {
        sq += (x - mean) * (x - mean);
    }
    stats.mean = mean;
    if (samples.size() > 1) {
        double variance = sq / static_cast<double>(samples.size() - 1);
        stats.std_error = std::sqrt(variance / static_cast<double>(samples.size()));
    }
    return stats;
}

std::vector<double> ensemble_final_fidelities(const SequenceConfig &config, uint64_t n_samples, unsigned workers) {
    config.validate();
    return map_samples(n_samples, workers, [&](uint64_t i) { return simulate_final_fidelity(config, i); });
}

EnsembleStats ensemble_mean(const SequenceConfig &config, uint64_t n_samples, unsigned workers) {
    if (n_samples < 2) {
        throw std::invalid_argument("ensemble_mean needs at least 2 samples");
    }
    auto finals = ensemble_final_fidelities(config, n_samples, workers);
    return summarize(finals);
}

FidelityHistogram make_histogram(std::span<const double> samples, size_t n_bins) {
    if (n_bins == 0) {
        throw std::invalid_argument("n_bins must be positive");
    }
    FidelityHistogram hist;
    hist.bin_edges.resize(n_bins + 1);
    for (size_t i = 0; i <= n_bins; i++) {
        hist.bin_edges[i] = static_cast<double>(i) / static_cast<double>(n_bins);
    }
    hist.counts.assign(n_bins, 0);
    for (double f : samples) {
        auto bin = static_cast<size_t>(std::clamp(f, 0.0, 1.0) * static_cast<double>(n_bins));
        hist.counts[std::min(bin, n_bins - 1)]++;
    }
    hist.n_samples = samples.size();
    hist.summary = summarize(samples);
    return hist;
}

FidelityHistogram ensemble_histogram(const SequenceConfig &config, uint64_t n_samples, size_t n_bins,
                                     unsigned workers) {
    if (n_bins == 0 || n_samples < n_bins) {
        throw std::invalid_argument("ensemble_histogram needs n_samples >= n_bins >= 1");
    }
    auto finals = ensemble_final_fidelities(config, n_samples, workers);
    return make_histogram(finals, n_bins);
}

EnsembleStats worst_case_ensemble_mean(uint64_t n_cycles, const NoiseModel &model, uint64_t n_samples,
                                       uint64_t master_seed, unsigned workers) {
    SequenceConfig config{n_cycles, model, InitialState::worst_case(), master_seed};
    return ensemble_mean(config, n_samples, workers);
}

}  // namespace pulsefid
