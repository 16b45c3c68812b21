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

#ifndef PULSEFID_ANALYTICS_H
#define PULSEFID_ANALYTICS_H

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pulsefid/noise.h"

namespace pulsefid {

/// Raised when the image sum of the fidelity density has not decayed below
/// the requested tolerance by the term cap.
class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached and thread safe. Throws std::invalid_argument for n == 0.
const GaussLegendreRule &gauss_legendre(size_t n);

struct QuadratureSpec {
    /// Gauss-Legendre nodes per image term.
    size_t n_points = 128;
    /// Largest |n| allowed in the image sum.
    int n_term_cap = 50;
    /// Image terms whose largest Gaussian factor is below this are dropped.
    double term_tol = 1e-15;

    void validate() const;
};

/// cos^2(e/2) + sin^2(e/2) sin^2(theta) cos^2(phi): fidelity of the state
/// (theta, phi) after a net x-rotation error e.
double fidelity_amplitude(double epsilon, double theta, double phi);

/// cos^2(e/2) + sin^2(e/2) cos^2(theta): fidelity after a net azimuthal
/// (z-rotation) error e.
double fidelity_phase(double epsilon, double theta);

/// N Delta^2 for Amplitude noise, 4 N Delta^2 for Phase noise. Every
/// closed-form statistic below depends on the model only through this.
double effective_n_delta_sq(uint64_t n_cycles, const NoiseModel &model);

/// 2/3 + exp(-x)/3 at x = effective_n_delta_sq: the fidelity averaged over
/// uniformly distributed initial states and over the Gaussian pulse errors.
double mean_fidelity(uint64_t n_cycles, const NoiseModel &model);
double mean_fidelity_at(double n_delta_sq);

/// 1/2 + exp(-x)/2: the same average restricted to the initial states that
/// minimize the fidelity for every error value.
double worst_case_mean_fidelity(uint64_t n_cycles, const NoiseModel &model);
double worst_case_mean_fidelity_at(double n_delta_sq);

/// Probability density of the final fidelity F for uniformly random initial
/// states and accumulated error variance 2 N Delta^2.
///
/// The image sum over n is evaluated term by term. Each term's x-integral
/// over [-sqrt F, sqrt F] is mapped through x = sqrt(F) sin(u), which absorbs
/// the 1/sqrt(F - x^2) endpoint singularity, and then done by Gauss-Legendre
/// on u in [-pi/2, pi/2]. The 1/sqrt(1 - F) prefactor stays analytic.
///
/// Throws std::domain_error unless 0 < F < 1 and n_delta_sq > 0, and
/// ConvergenceError when the image sum does not converge within the cap.
double fidelity_pdf(double fidelity, double n_delta_sq, const QuadratureSpec &spec = {});

/// Density sampled on (endpoint_delta, 1 - endpoint_delta).
struct PdfGrid {
    std::vector<double> fidelity_points;
    std::vector<double> densities;

    /// Integral of F^moment P(F) over [0, 1].
    ///
    /// Interior: trapezoid rule in s = sqrt(1 - F), where P(F) dF = 2 s P ds
    /// stays bounded at F -> 1. Tails: the region above the last point uses
    /// P ~ C / sqrt(1 - F), which integrates to 2 P(F_last) (1 - F_last); the
    /// region below the first point uses the constant P(F_first).
    double integrate(int moment = 0) const;
};

/// `grid_size` points uniformly spaced in s = sqrt(1 - F), so they cluster
/// where the density diverges.
PdfGrid fidelity_pdf_grid(double n_delta_sq, size_t grid_size, const QuadratureSpec &spec = {},
                          double endpoint_delta = 1e-6);

struct PdfIntegral {
    double interior = 0.0;
    double lower_tail = 0.0;
    double upper_tail = 0.0;

    double total() const {
        return lower_tail + interior + upper_tail;
    }
};

/// Integral of F^moment P(F) by composite Gauss-Legendre in s = sqrt(1 - F)
/// over (endpoint_delta, 1 - endpoint_delta), plus the analytic endpoint
/// tails described on PdfGrid::integrate.
PdfIntegral integrate_pdf(double n_delta_sq, int moment, const QuadratureSpec &spec = {},
                          double endpoint_delta = 1e-6);

/// Probability that F lands in [f_lo, f_hi], 0 <= f_lo < f_hi <= 1.
double pdf_bin_probability(double f_lo, double f_hi, double n_delta_sq, const QuadratureSpec &spec = {});

/// 1 / Delta^2: the number of cycles before the accumulated error variance
/// reaches order one. Throws std::domain_error unless delta > 0.
double max_cycles(double delta);

/// tau_c / Delta^2: protection time when one cycle is spent per environment
/// correlation time.
double max_protection_time(double tau_c, double delta);

}  // namespace pulsefid

#endif
