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

#include "pulsefid/analytics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace pulsefid {

namespace {

constexpr double kPi = std::numbers::pi;

/// Legendre P_n(x) and P_{n-1}(x) by the three-term recurrence.
std::pair<double, double> legendre_pair(size_t n, double x) {
    double prev = 1.0;
    double cur = x;
    for (size_t k = 2; k <= n; k++) {
        double next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / static_cast<double>(k);
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

GaussLegendreRule build_gauss_legendre(size_t n) {
    GaussLegendreRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    double dn = static_cast<double>(n);
    for (size_t i = 0; i < (n + 1) / 2; i++) {
        // Newton from the Tricomi initial guess for the i-th largest root.
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double derivative = 1.0;
        for (int iter = 0; iter < 100; iter++) {
            auto [p, p_prev] = legendre_pair(n, x);
            derivative = dn * (x * p - p_prev) / (x * x - 1.0);
            double step = p / derivative;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        auto [p, p_prev] = legendre_pair(n, x);
        derivative = dn * (x * p - p_prev) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

void require_positive_n_delta_sq(double n_delta_sq) {
    if (!std::isfinite(n_delta_sq) || n_delta_sq <= 0.0) {
        throw std::domain_error("n_delta_sq must be finite and positive");
    }
}

void require_positive_delta(double delta) {
    if (!std::isfinite(delta) || delta <= 0.0) {
        throw std::domain_error("delta must be finite and positive (the bound is unbounded at delta = 0)");
    }
}

/// Applies `f` to each node of `panels` equal Gauss-Legendre panels on [a, b].
template <typename F>
double composite_gauss_legendre(double a, double b, size_t panels, size_t points, F &&f) {
    const auto &rule = gauss_legendre(points);
    double width = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (size_t p = 0; p < panels; p++) {
        double mid = a + (static_cast<double>(p) + 0.5) * width;
        double half = width / 2;
        double panel = 0.0;
        for (size_t k = 0; k < points; k++) {
            panel += rule.weights[k] * f(mid + half * rule.nodes[k]);
        }
        total += panel * half;
    }
    return total;
}

}  // namespace

const GaussLegendreRule &gauss_legendre(size_t n) {
    if (n == 0) {
        throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    }
    static std::mutex mu;
    static std::map<size_t, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[n];
    if (!slot) {
        slot = std::make_unique<GaussLegendreRule>(build_gauss_legendre(n));
    }
    return *slot;
}

void QuadratureSpec::validate() const {
    if (n_points < 16) {
        throw std::invalid_argument("QuadratureSpec.n_points must be at least 16");
    }
    if (n_term_cap < 1) {
        throw std::invalid_argument("QuadratureSpec.n_term_cap must be positive");
    }
    if (!(term_tol > 0.0) || !(term_tol < 1.0)) {
        throw std::invalid_argument("QuadratureSpec.term_tol must lie in (0, 1)");
    }
}

double fidelity_amplitude(double epsilon, double theta, double phi) {
    double c = std::cos(epsilon / 2);
    double s = std::sin(epsilon / 2);
    double x = std::sin(theta) * std::cos(phi);
    return std::clamp(c * c + s * s * x * x, 0.0, 1.0);
}

double fidelity_phase(double epsilon, double theta) {
    double c = std::cos(epsilon / 2);
    double s = std::sin(epsilon / 2);
    double z = std::cos(theta);
    return std::clamp(c * c + s * s * z * z, 0.0, 1.0);
}

double effective_n_delta_sq(uint64_t n_cycles, const NoiseModel &model) {
    model.validate();
    if (n_cycles == 0) {
        throw std::invalid_argument("n_cycles must be at least 1");
    }
    double x = static_cast<double>(n_cycles) * model.delta * model.delta;
    return model.kind == NoiseKind::Amplitude ? x : 4.0 * x;
}

double mean_fidelity_at(double n_delta_sq) {
    return 2.0 / 3.0 + std::exp(-n_delta_sq) / 3.0;
}

double worst_case_mean_fidelity_at(double n_delta_sq) {
    return 0.5 + 0.5 * std::exp(-n_delta_sq);
}

double mean_fidelity(uint64_t n_cycles, const NoiseModel &model) {
    return mean_fidelity_at(effective_n_delta_sq(n_cycles, model));
}

double worst_case_mean_fidelity(uint64_t n_cycles, const NoiseModel &model) {
    return worst_case_mean_fidelity_at(effective_n_delta_sq(n_cycles, model));
}

double fidelity_pdf(double fidelity, double n_delta_sq, const QuadratureSpec &spec) {
    spec.validate();
    require_positive_n_delta_sq(n_delta_sq);
    if (!(fidelity > 0.0 && fidelity < 1.0)) {
        throw std::domain_error("fidelity_pdf is defined on the open interval (0, 1)");
    }
    const auto &rule = gauss_legendre(spec.n_points);
    double root_f = std::sqrt(fidelity);
    double root_1mf = std::sqrt(1.0 - fidelity);

    // After x = sqrt(F) sin(u) the image-term argument is
    //     asin(sqrt((1 - F) / (1 - x^2))) = atan2(sqrt(1 - F), sqrt(F) cos u),
    // which stays well conditioned near u = +-pi/2.
    std::vector<double> angles(rule.nodes.size());
    for (size_t k = 0; k < angles.size(); k++) {
        double u = (kPi / 2) * rule.nodes[k];
        angles[k] = std::atan2(root_1mf, root_f * std::cos(u));
    }
    double angle_min = std::atan2(root_1mf, root_f);
    double log_tol = std::log(spec.term_tol);

    // Largest exponent of term n over the angle range [angle_min, pi/2].
    auto peak_exponent = [&](int n) {
        double dist = n >= 1 ? n * kPi - kPi / 2 : angle_min - n * kPi;
        return -dist * dist / n_delta_sq;
    };
    auto term = [&](int n) {
        double sum = 0.0;
        for (size_t k = 0; k < angles.size(); k++) {
            double d = angles[k] - n * kPi;
            sum += rule.weights[k] * std::exp(-d * d / n_delta_sq);
        }
        return sum * (kPi / 2);
    };

    double total = term(0);
    for (int sign : {1, -1}) {
        for (int m = 1;; m++) {
            int n = sign * m;
            if (peak_exponent(n) < log_tol) {
                break;
            }
            if (m > spec.n_term_cap) {
                throw ConvergenceError("fidelity_pdf image sum did not converge within n_term_cap = " +
                                       std::to_string(spec.n_term_cap) + " at n_delta_sq = " +
                                       std::to_string(n_delta_sq));
            }
            total += term(n);
        }
    }
    return total / (std::sqrt(4.0 * kPi * n_delta_sq) * root_1mf);
}

double PdfGrid::integrate(int moment) const {
    size_t n = fidelity_points.size();
    if (n < 2 || densities.size() != n) {
        throw std::invalid_argument("PdfGrid needs at least two points and matching densities");
    }
    // In s = sqrt(1 - F): F^k P(F) dF = F^k P 2 s ds.
    double interior = 0.0;
    for (size_t i = 0; i + 1 < n; i++) {
        double f0 = fidelity_points[i];
        double f1 = fidelity_points[i + 1];
        double s0 = std::sqrt(1.0 - f0);
        double s1 = std::sqrt(1.0 - f1);
        double g0 = std::pow(f0, moment) * densities[i] * 2.0 * s0;
        double g1 = std::pow(f1, moment) * densities[i + 1] * 2.0 * s1;
        interior += 0.5 * (g0 + g1) * (s0 - s1);
    }
    double f_first = fidelity_points.front();
    double f_last = fidelity_points.back();
    double lower = densities.front() * std::pow(f_first, moment + 1) / (moment + 1);
    double upper = 2.0 * densities.back() * (1.0 - f_last);
    return lower + interior + upper;
}

PdfGrid fidelity_pdf_grid(double n_delta_sq, size_t grid_size, const QuadratureSpec &spec, double endpoint_delta) {
    if (grid_size < 2) {
        throw std::invalid_argument("grid_size must be at least 2");
    }
    if (!(endpoint_delta > 0.0 && endpoint_delta < 0.5)) {
        throw std::invalid_argument("endpoint_delta must lie in (0, 0.5)");
    }
    double s_hi = std::sqrt(1.0 - endpoint_delta);
    double s_lo = std::sqrt(endpoint_delta);
    PdfGrid grid;
    grid.fidelity_points.resize(grid_size);
    grid.densities.resize(grid_size);
    for (size_t i = 0; i < grid_size; i++) {
        double t = static_cast<double>(i) / static_cast<double>(grid_size - 1);
        double s = s_hi + (s_lo - s_hi) * t;
        double f = i == 0 ? endpoint_delta : i + 1 == grid_size ? 1.0 - endpoint_delta : 1.0 - s * s;
        grid.fidelity_points[i] = f;
        grid.densities[i] = fidelity_pdf(f, n_delta_sq, spec);
    }
    return grid;
}

PdfIntegral integrate_pdf(double n_delta_sq, int moment, const QuadratureSpec &spec, double endpoint_delta) {
    if (!(endpoint_delta > 0.0 && endpoint_delta < 0.5)) {
        throw std::invalid_argument("endpoint_delta must lie in (0, 0.5)");
    }
    if (moment < 0) {
        throw std::invalid_argument("moment must be non-negative");
    }
    double s_lo = std::sqrt(endpoint_delta);
    double s_hi = std::sqrt(1.0 - endpoint_delta);
    PdfIntegral result;
    result.interior = composite_gauss_legendre(s_lo, s_hi, 64, 20, [&](double s) {
        double f = 1.0 - s * s;
        return std::pow(f, moment) * fidelity_pdf(f, n_delta_sq, spec) * 2.0 * s;
    });
    double p_low = fidelity_pdf(endpoint_delta, n_delta_sq, spec);
    double p_high = fidelity_pdf(1.0 - endpoint_delta, n_delta_sq, spec);
    result.lower_tail = p_low * std::pow(endpoint_delta, moment + 1) / (moment + 1);
    result.upper_tail = 2.0 * p_high * endpoint_delta;
    return result;
}

double pdf_bin_probability(double f_lo, double f_hi, double n_delta_sq, const QuadratureSpec &spec) {
    if (!(f_lo >= 0.0 && f_lo < f_hi && f_hi <= 1.0)) {
        throw std::domain_error("bin must satisfy 0 <= f_lo < f_hi <= 1");
    }
    // Gauss-Legendre nodes are interior, so s never reaches 0 (F = 1) or 1 (F = 0).
    double s_lo = std::sqrt(1.0 - f_hi);
    double s_hi = std::sqrt(1.0 - f_lo);
    return composite_gauss_legendre(s_lo, s_hi, 4, 24, [&](double s) {
        return fidelity_pdf(1.0 - s * s, n_delta_sq, spec) * 2.0 * s;
    });
}

double max_cycles(double delta) {
    require_positive_delta(delta);
    return 1.0 / (delta * delta);
}

double max_protection_time(double tau_c, double delta) {
    if (!std::isfinite(tau_c) || tau_c <= 0.0) {
        throw std::domain_error("tau_c must be finite and positive");
    }
    return tau_c * max_cycles(delta);
}

}  // namespace pulsefid
