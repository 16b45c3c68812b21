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

#ifndef PULSEFID_BANGBANG_H
#define PULSEFID_BANGBANG_H

#include <cstdint>
#include <numbers>
#include <vector>

#include "pulsefid/montecarlo.h"
#include "pulsefid/noise.h"
#include "pulsefid/su2.h"

namespace pulsefid {

/// Noisy pi pulses interleaved with free evolution under H0 = Omega sigma_z
/// (hbar = 1). Pulses are instantaneous; H0 is off while a pulse acts.
///
/// One cycle is  free(dt) -> pulse -> free(dt) -> pulse,  so a cycle lasts
/// 2 dt. With perfect pulses the cycle operator is exactly -I because
/// sigma_x exp(-i a sigma_z) sigma_x = exp(+i a sigma_z).
struct BangBangConfig {
    double omega = 1.0;
    double dt = 0.005 * std::numbers::pi;
    uint64_t n_cycles = 400;
    NoiseModel model;
    /// The sigma_y eigenstate (|+> + i|->)/sqrt(2) by default.
    BlochAngles initial_state{std::numbers::pi / 2, std::numbers::pi / 2};
    uint64_t master_seed = kDefaultMasterSeed;

    void validate() const;
};

/// Fidelity of exp(-i H0 t)|psi0> against |psi0> at t = k dt, k = 1 .. n_steps.
FidelityTrace free_fidelity_trace(double omega, double dt, uint64_t n_steps, BlochAngles initial);

/// Operator of one cycle given the errors of its two pulses.
Unitary2 bangbang_cycle(double omega, double dt, NoiseKind kind, double first_error, double second_error);

/// The 2 n_cycles pulse errors used by bangbang_fidelity_trace(config, sample_index).
std::vector<double> bangbang_pulse_errors(const BangBangConfig &config, uint64_t sample_index);

/// Per-cycle fidelity against the initial state under bang-bang control.
FidelityTrace bangbang_fidelity_trace(const BangBangConfig &config, uint64_t sample_index);

double bangbang_final_fidelity(const BangBangConfig &config, uint64_t sample_index);

/// Final-cycle fidelity averaged over seeds 0 .. n_samples-1.
EnsembleStats bangbang_ensemble_mean(const BangBangConfig &config, uint64_t n_samples, unsigned workers = 0);

/// Lowest fidelity reached inside one noiseless cycle, measured in the
/// toggling frame: after an odd number of pulses the reference is the
/// ideally flipped initial state. Equals 1 - sin^2(omega dt) for the
/// sigma_y eigenstate.
double noiseless_cycle_min_fidelity(double omega, double dt, BlochAngles initial);

}  // namespace pulsefid

#endif
