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

#ifndef PULSEFID_SU2_H
#define PULSEFID_SU2_H

#include <array>
#include <complex>

namespace pulsefid {

using Complex = std::complex<double>;

/// Pure state of a two-level system in the {|+>, |->} basis (sigma_z eigenstates).
struct State2 {
    Complex plus_amp{1.0, 0.0};
    Complex minus_amp{0.0, 0.0};

    double norm_sq() const;
    bool operator==(const State2 &other) const = default;
};

/// 2x2 complex matrix, row-major over {|+>, |->}.
///
/// Constructed through the named constructors below, which only ever produce
/// unitaries. The raw constructor is available for tests and oracles.
struct Unitary2 {
    std::array<Complex, 4> m{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}};

    const Complex &operator()(size_t row, size_t col) const {
        return m[2 * row + col];
    }
    Complex &operator()(size_t row, size_t col) {
        return m[2 * row + col];
    }

    Complex det() const;
    Unitary2 adjoint() const;
    /// Largest entrywise deviation of U^dagger U from the identity.
    double unitarity_error() const;
    /// Largest entrywise |a_ij - b_ij|.
    double max_abs_diff(const Unitary2 &other) const;

    Unitary2 operator*(const Unitary2 &rhs) const;
    Unitary2 operator*(Complex scale) const;
    Unitary2 operator+(const Unitary2 &rhs) const;

    static Unitary2 identity();
    static Unitary2 pauli_x();
    static Unitary2 pauli_y();
    static Unitary2 pauli_z();

    bool operator==(const Unitary2 &other) const = default;
};

/// cos(theta/2)|+> + e^{i phi} sin(theta/2)|->, the spin pointing at
/// colatitude theta and azimuth phi. Throws std::domain_error when theta is
/// outside [0, pi] or either angle is not finite.
State2 bloch_state(double theta, double phi);

/// Rotation by `pulse_area` about the axis (cos phase, -sin phase, 0):
///     cos(area/2) I - i sin(area/2) (cos(phase) sigma_x - sin(phase) sigma_y)
Unitary2 pulse_unitary(double pulse_area, double pulse_phase);

/// A pi pulse about x whose area is off by `epsilon`, i.e. pulse_unitary(pi + epsilon, 0).
Unitary2 amplitude_error_pulse(double epsilon);

/// An exact pi pulse whose rotation axis is tilted by `phase_error` in the x-y plane.
Unitary2 phase_error_pulse(double phase_error);

/// exp(-i omega t sigma_z) = diag(e^{-i omega t}, e^{i omega t}), with hbar = 1.
Unitary2 free_evolution(double omega, double t);

/// `second * first`: the operator for applying `first` and then `second`.
Unitary2 compose(const Unitary2 &first, const Unitary2 &second);

/// Matrix-vector product. No renormalization.
State2 apply(const Unitary2 &u, const State2 &psi);

/// |<reference|actual>|^2, clamped to [0, 1].
double fidelity(const State2 &reference, const State2 &actual);

}  // namespace pulsefid

#endif
