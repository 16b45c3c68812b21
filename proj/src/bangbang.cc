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

#include "pulsefid/bangbang.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pulsefid/parallel.h"

namespace pulsefid {

namespace {

constexpr uint64_t kBangBangDomain = 0x62616E6762616E67ULL;

SeededStream bangbang_stream(const BangBangConfig &config, uint64_t sample_index) {
    return {mix64(config.master_seed ^ kBangBangDomain), sample_index};
}

template <typename OnCycle>
void run_bangbang(const BangBangConfig &config, uint64_t sample_index, OnCycle &&on_cycle) {
    config.validate();
    State2 initial = bloch_state(config.initial_state.theta, config.initial_state.phi);
    Unitary2 free = free_evolution(config.omega, config.dt);
    State2 psi = initial;
    StreamRng rng(bangbang_stream(config, sample_index));
    for (uint64_t cycle = 0; cycle < config.n_cycles; cycle++) {
        for (int pulse = 0; pulse < 2; pulse++) {
            double error = config.model.delta * rng.standard_normal();
            psi = apply(noisy_pi_pulse(config.model.kind, error), apply(free, psi));
        }
        on_cycle(fidelity(initial, psi));
    }
}

}  // namespace

void BangBangConfig::validate() const {
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("omega must be finite");
    }
    if (!std::isfinite(dt) || dt <= 0.0) {
        throw std::invalid_argument("dt must be finite and positive");
    }
    if (n_cycles == 0) {
        throw std::invalid_argument("n_cycles must be at least 1");
    }
    model.validate();
    (void)bloch_state(initial_state.theta, initial_state.phi);
}

FidelityTrace free_fidelity_trace(double omega, double dt, uint64_t n_steps, BlochAngles initial) {
    if (n_steps == 0) {
        throw std::invalid_argument("n_steps must be at least 1");
    }
    State2 psi0 = bloch_state(initial.theta, initial.phi);
    FidelityTrace trace;
    trace.initial_theta = initial.theta;
    trace.initial_phi = initial.phi;
    trace.per_cycle_fidelity.reserve(n_steps);
    for (uint64_t k = 1; k <= n_steps; k++) {
        // Evolve from t = 0 each time so roundoff does not accumulate.
        double t = static_cast<double>(k) * dt;
        trace.per_cycle_fidelity.push_back(fidelity(psi0, apply(free_evolution(omega, t), psi0)));
    }
    return trace;
}

Unitary2 bangbang_cycle(double omega, double dt, NoiseKind kind, double first_error, double second_error) {
    Unitary2 free = free_evolution(omega, dt);
    Unitary2 u = compose(free, noisy_pi_pulse(kind, first_error));
    u = compose(u, free);
    return compose(u, noisy_pi_pulse(kind, second_error));
}

std::vector<double> bangbang_pulse_errors(const BangBangConfig &config, uint64_t sample_index) {
    config.validate();
    return sample_pulse_errors(config.model, 2 * config.n_cycles, bangbang_stream(config, sample_index));
}

FidelityTrace bangbang_fidelity_trace(const BangBangConfig &config, uint64_t sample_index) {
    FidelityTrace trace;
    trace.initial_theta = config.initial_state.theta;
    trace.initial_phi = config.initial_state.phi;
    trace.per_cycle_fidelity.reserve(config.n_cycles);
    run_bangbang(config, sample_index, [&](double f) { trace.per_cycle_fidelity.push_back(f); });
    return trace;
}

double bangbang_final_fidelity(const BangBangConfig &config, uint64_t sample_index) {
    double last = 1.0;
    run_bangbang(config, sample_index, [&](double f) { last = f; });
    return last;
}

EnsembleStats bangbang_ensemble_mean(const BangBangConfig &config, uint64_t n_samples, unsigned workers) {
    if (n_samples < 2) {
        throw std::invalid_argument("bangbang_ensemble_mean needs at least 2 samples");
    }
    config.validate();
    auto finals = map_samples(n_samples, workers, [&](uint64_t i) { return bangbang_final_fidelity(config, i); });
    return summarize(finals);
}

double noiseless_cycle_min_fidelity(double omega, double dt, BlochAngles initial) {
    State2 psi0 = bloch_state(initial.theta, initial.phi);
    Unitary2 free = free_evolution(omega, dt);
    Unitary2 pulse = noisy_pi_pulse(NoiseKind::Amplitude, 0.0);
    State2 psi = psi0;
    State2 reference = psi0;
    double worst = 1.0;
    for (int pulse_index = 0; pulse_index < 2; pulse_index++) {
        psi = apply(free, psi);
        worst = std::min(worst, fidelity(reference, psi));
        psi = apply(pulse, psi);
        reference = apply(pulse, reference);
        worst = std::min(worst, fidelity(reference, psi));
    }
    return worst;
}

}  // namespace pulsefid
