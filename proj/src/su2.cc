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

#include "pulsefid/su2.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pulsefid {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_finite(double v, const char *name) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(name) + " must be finite");
    }
}

}  // namespace

double State2::norm_sq() const {
    return std::norm(plus_amp) + std::norm(minus_amp);
}

Complex Unitary2::det() const {
    return m[0] * m[3] - m[1] * m[2];
}

Unitary2 Unitary2::adjoint() const {
    Unitary2 r;
    r.m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    return r;
}

double Unitary2::unitarity_error() const {
    return (adjoint() * *this).max_abs_diff(identity());
}

double Unitary2::max_abs_diff(const Unitary2 &other) const {
    double worst = 0.0;
    for (size_t k = 0; k < 4; k++) {
        worst = std::max(worst, std::abs(m[k] - other.m[k]));
    }
    return worst;
}

Unitary2 Unitary2::operator*(const Unitary2 &rhs) const {
    Unitary2 r;
    r.m[0] = m[0] * rhs.m[0] + m[1] * rhs.m[2];
    r.m[1] = m[0] * rhs.m[1] + m[1] * rhs.m[3];
    r.m[2] = m[2] * rhs.m[0] + m[3] * rhs.m[2];
    r.m[3] = m[2] * rhs.m[1] + m[3] * rhs.m[3];
    return r;
}

Unitary2 Unitary2::operator*(Complex scale) const {
    Unitary2 r = *this;
    for (auto &e : r.m) {
        e *= scale;
    }
    return r;
}

Unitary2 Unitary2::operator+(const Unitary2 &rhs) const {
    Unitary2 r = *this;
    for (size_t k = 0; k < 4; k++) {
        r.m[k] += rhs.m[k];
    }
    return r;
}

Unitary2 Unitary2::identity() {
    return Unitary2{};
}

Unitary2 Unitary2::pauli_x() {
    return Unitary2{{Complex{}, Complex{1.0}, Complex{1.0}, Complex{}}};
}

Unitary2 Unitary2::pauli_y() {
    return Unitary2{{Complex{}, -kI, kI, Complex{}}};
}

Unitary2 Unitary2::pauli_z() {
    return Unitary2{{Complex{1.0}, Complex{}, Complex{}, Complex{-1.0}}};
}

State2 bloch_state(double theta, double phi) {
    require_finite(theta, "theta");
    require_finite(phi, "phi");
    if (theta < 0.0 || theta > std::numbers::pi) {
        throw std::domain_error("theta must lie in [0, pi]");
    }
    return State2{Complex{std::cos(theta / 2)}, std::polar(std::sin(theta / 2), phi)};
}

Unitary2 pulse_unitary(double pulse_area, double pulse_phase) {
    require_finite(pulse_area, "pulse_area");
    require_finite(pulse_phase, "pulse_phase");
    double c = std::cos(pulse_area / 2);
    double s = std::sin(pulse_area / 2);
    // -i s e^{+i phase} above the diagonal, -i s e^{-i phase} below.
    Complex upper = -kI * std::polar(s, pulse_phase);
    Complex lower = -kI * std::polar(s, -pulse_phase);
    return Unitary2{{Complex{c}, upper, lower, Complex{c}}};
}

Unitary2 amplitude_error_pulse(double epsilon) {
    require_finite(epsilon, "epsilon");
    // pulse_unitary(pi + epsilon, 0) with the phase factors (exactly 1) folded in.
    double half = (std::numbers::pi + epsilon) / 2;
    Complex c{std::cos(half)};
    Complex off{0.0, -std::sin(half)};
    return Unitary2{{c, off, off, c}};
}

Unitary2 phase_error_pulse(double phase_error) {
    require_finite(phase_error, "phase_error");
    // Exactly -i (cos p sigma_x - sin p sigma_y); avoids cos(pi/2) roundoff on the diagonal.
    Complex axis = std::polar(1.0, phase_error);
    return Unitary2{{Complex{}, -kI * axis, -kI * std::conj(axis), Complex{}}};
}

Unitary2 free_evolution(double omega, double t) {
    require_finite(omega, "omega");
    require_finite(t, "t");
    if (t < 0.0) {
        throw std::domain_error("free evolution time must be non-negative");
    }
    double angle = omega * t;
    return Unitary2{{std::polar(1.0, -angle), Complex{}, Complex{}, std::polar(1.0, angle)}};
}

Unitary2 compose(const Unitary2 &first, const Unitary2 &second) {
    return second * first;
}

State2 apply(const Unitary2 &u, const State2 &psi) {
    return State2{
        u.m[0] * psi.plus_amp + u.m[1] * psi.minus_amp,
        u.m[2] * psi.plus_amp + u.m[3] * psi.minus_amp,
    };
}

double fidelity(const State2 &reference, const State2 &actual) {
    Complex overlap = std::conj(reference.plus_amp) * actual.plus_amp + std::conj(reference.minus_amp) * actual.minus_amp;
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

}  // namespace pulsefid
