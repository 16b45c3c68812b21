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

#ifndef PULSEFID_MONTECARLO_H
#define PULSEFID_MONTECARLO_H

#include <cstdint>
#include <span>
#include <vector>

#include "pulsefid/noise.h"
#include "pulsefid/su2.h"

namespace pulsefid {

/// Seed used when the caller does not supply one ("pulsefid" in ASCII).
constexpr uint64_t kDefaultMasterSeed = 0x70756C7365666964ULL;

struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;
};

/// How a trajectory's initial state is chosen.
struct InitialState {
    enum class Kind : uint8_t { FixedBloch, UniformRandom, WorstCase };

    Kind kind = Kind::UniformRandom;
    /// Only read for FixedBloch.
    BlochAngles angles;

    static InitialState fixed(double theta, double phi) {
        return {Kind::FixedBloch, {theta, phi}};
    }
    static InitialState uniform() {
        return {Kind::UniformRandom, {}};
    }
    static InitialState worst_case() {
        return {Kind::WorstCase, {}};
    }
};

/// A sequence of N cycles, each two noisy pi pulses.
struct SequenceConfig {
    uint64_t n_cycles = 1;
    NoiseModel model;
    InitialState initial_state;
    uint64_t master_seed = kDefaultMasterSeed;

    void validate() const;
};

struct FidelityTrace {
    /// Entry k is the fidelity against the initial state after cycle k + 1.
    std::vector<double> per_cycle_fidelity;
    double initial_theta = 0.0;
    double initial_phi = 0.0;
};

struct EnsembleStats {
    double mean = 0.0;
    double std_error = 0.0;
    uint64_t n_samples = 0;
};

struct FidelityHistogram {
    /// n_bins + 1 equally spaced edges from 0 to 1.
    std::vector<double> bin_edges;
    std::vector<uint64_t> counts;
    uint64_t n_samples = 0;
    /// Mean and standard error of the raw samples behind the histogram.
    EnsembleStats summary;
};

/// A representative of the states minimizing the fidelity at every error
/// value: the pole theta = 0 under amplitude noise (x-rotations), the
/// equatorial point theta = pi/2, phi = 0 under phase noise (z-rotations).
BlochAngles worst_case_angles(NoiseKind kind);

/// Amplitude: amplitude_error_pulse(error). Phase: phase_error_pulse(error).
Unitary2 noisy_pi_pulse(NoiseKind kind, double error);

/// Initial angles of trajectory `sample_index`. UniformRandom draws
/// cos(theta) uniform on [-1, 1] and phi uniform on [0, 2 pi).
BlochAngles trajectory_initial_angles(const SequenceConfig &config, uint64_t sample_index);

/// The 2N per-pulse errors of trajectory `sample_index`, in pulse order.
std::vector<double> trajectory_pulse_errors(const SequenceConfig &config, uint64_t sample_index);

/// Applies the 2N pulses as explicit matrices and records the fidelity after
/// every second pulse. Fully determined by (master_seed, sample_index).
FidelityTrace simulate_trajectory(const SequenceConfig &config, uint64_t sample_index);

/// Last entry of simulate_trajectory without storing the trace.
double simulate_final_fidelity(const SequenceConfig &config, uint64_t sample_index);

/// Mean and standard error of `samples`, summed in index order.
EnsembleStats summarize(std::span<const double> samples);

/// Final fidelities of trajectories 0 .. n_samples-1. `workers` == 0 means
/// one per hardware thread; the result never depends on it.
std::vector<double> ensemble_final_fidelities(const SequenceConfig &config, uint64_t n_samples, unsigned workers = 0);

EnsembleStats ensemble_mean(const SequenceConfig &config, uint64_t n_samples, unsigned workers = 0);

FidelityHistogram make_histogram(std::span<const double> samples, size_t n_bins);

FidelityHistogram ensemble_histogram(const SequenceConfig &config, uint64_t n_samples, size_t n_bins = 100,
                                     unsigned workers = 0);

/// ensemble_mean with the initial state fixed to worst_case_angles(model.kind).
EnsembleStats worst_case_ensemble_mean(uint64_t n_cycles, const NoiseModel &model, uint64_t n_samples,
                                       uint64_t master_seed = kDefaultMasterSeed, unsigned workers = 0);

}  // namespace pulsefid

#endif
