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

// Independent reference computations used only by tests. Nothing here calls
// into the closed forms under test.

#ifndef PULSEFID_TESTS_ORACLES_H
#define PULSEFID_TESTS_ORACLES_H

#include <cmath>
#include <functional>

#include "pulsefid/su2.h"

namespace pulsefid::oracle {

/// exp(-i A) for a 2x2 matrix A by scaling and squaring with a 20-term Taylor series.
inline Unitary2 expm_minus_i(const Unitary2 &a) {
    double norm = 0.0;
    for (const auto &e : a.m) {
        norm += std::abs(e);
    }
    int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm + 1.0))) + 4);
    Unitary2 scaled = a * Complex{0.0, -std::ldexp(1.0, -squarings)};
    Unitary2 term = Unitary2::identity();
    Unitary2 sum = Unitary2::identity();
    for (int k = 1; k <= 20; k++) {
        term = (term * scaled) * Complex{1.0 / k};
        sum = sum + term;
    }
    for (int s = 0; s < squarings; s++) {
        sum = sum * sum;
    }
    return sum;
}

/// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)> &f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double total = f(a) + f(b);
    for (int i = 1; i < panels; i++) {
        total += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return total * h / 3.0;
}

/// Expectation of g(e) for e ~ Normal(0, sigma^2), trapezoid rule on
/// [-12 sigma, 12 sigma] (spectrally accurate for smooth g).
inline double gaussian_expectation(const std::function<double(double)> &g, double sigma, int points = 4001) {
    double lo = -12.0 * sigma;
    double h = 24.0 * sigma / (points - 1);
    double total = 0.0;
    for (int i = 0; i < points; i++) {
        double e = lo + i * h;
        double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        total += w * g(e) * std::exp(-e * e / (2 * sigma * sigma));
    }
    return total * h / (std::sqrt(2.0 * M_PI) * sigma);
}

}  // namespace pulsefid::oracle

#endif
