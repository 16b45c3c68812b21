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

#include <cmath>
#include <numbers>
#include <thread>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace pulsefid;

namespace {

constexpr double kPi = std::numbers::pi;

/// Average of g over the uniform Bloch sphere by 2-D Simpson in (theta, phi).
double sphere_average(const std::function<double(double, double)> &g) {
    return oracle::simpson(
               [&](double theta) {
                   return std::sin(theta) *
                          oracle::simpson([&](double phi) { return g(theta, phi); }, 0.0, 2 * kPi, 200);
               },
               0.0, kPi, 400) /
           (4 * kPi);
}

/// P(final fidelity <= f) for uniform initial states and e ~ Normal(0, 2 x).
/// For fixed e the fidelity is 1 - (1 - c^2) sin^2(e/2) with c uniform on
/// [-1, 1], so P(F <= f | e) = sqrt(max(0, 1 - (1 - f) / sin^2(e/2))).
double cdf_oracle(double f, double n_delta_sq) {
    double sigma = std::sqrt(2.0 * n_delta_sq);
    return oracle::gaussian_expectation(
        [&](double e) {
            double s2 = std::pow(std::sin(e / 2), 2);
            if (s2 == 0.0) {
                return f >= 1.0 ? 1.0 : 0.0;  // F = 1 exactly
            }
            double arg = 1.0 - (1.0 - f) / s2;
            return arg > 0.0 ? std::sqrt(arg) : 0.0;
        },
        sigma, 400001);
}

}  // namespace

TEST(analytics, gauss_legendre_is_exact_for_polynomials) {
    for (size_t n : {1, 2, 5, 16, 128}) {
        const auto &rule = gauss_legendre(n);
        double weight_sum = 0.0;
        for (double w : rule.weights) {
            weight_sum += w;
        }
        EXPECT_NEAR(weight_sum, 2.0, 1e-13);
        for (size_t k = 0; k < 2 * n; k += 2) {
            double total = 0.0;
            for (size_t i = 0; i < n; i++) {
                total += rule.weights[i] * std::pow(rule.nodes[i], static_cast<double>(k));
            }
            EXPECT_NEAR(total, 2.0 / (k + 1.0), 1e-13) << n << " " << k;
        }
    }
    EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(analytics, fidelity_amplitude_examples) {
    EXPECT_EQ(fidelity_amplitude(0.0, 1.1, 2.2), 1.0);
    for (double eps : {0.1, 1.0, 3.0, -7.0}) {
        EXPECT_NEAR(fidelity_amplitude(eps, kPi / 2, 0.0), 1.0, 1e-15);
    }
    EXPECT_NEAR(fidelity_amplitude(kPi, 0.0, 0.0), 0.0, 1e-15);
}

TEST(analytics, fidelity_phase_examples) {
    for (double eps : {0.1, 1.0, 3.0}) {
        EXPECT_NEAR(fidelity_phase(eps, 0.0), 1.0, 1e-15);
    }
    EXPECT_NEAR(fidelity_phase(kPi, kPi / 2), 0.0, 1e-15);
    for (double theta : {0.0, 0.3, 1.2, 2.8}) {
        // theta' = pi/2 - theta, phi' = 0 gives sin(theta') cos(phi') = cos(theta).
        EXPECT_NEAR(fidelity_phase(0.9, theta), fidelity_amplitude(0.9, kPi / 2 - theta, 0.0), 1e-15);
    }
}

TEST(analytics, fidelity_range) {
    for (double eps = -20.0; eps <= 20.0; eps += 0.37) {
        for (double theta = 0.0; theta <= kPi; theta += 0.21) {
            for (double phi = 0.0; phi <= 2 * kPi; phi += 0.43) {
                double a = fidelity_amplitude(eps, theta, phi);
                double p = fidelity_phase(eps, theta);
                ASSERT_GE(a, 0.0);
                ASSERT_LE(a, 1.0);
                ASSERT_GE(p, 0.0);
                ASSERT_LE(p, 1.0);
            }
        }
    }
}

TEST(analytics, mean_fidelity_examples) {
    EXPECT_NEAR(mean_fidelity_at(0.1), 0.968, 5e-4);
    EXPECT_NEAR(mean_fidelity_at(1.0), 0.789, 5e-4);
    EXPECT_NEAR(mean_fidelity_at(10.0), 0.667, 5e-4);
    EXPECT_EQ(mean_fidelity(10, {NoiseKind::Amplitude, 0.0}), 1.0);
    EXPECT_NEAR(mean_fidelity_at(1e6), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(mean_fidelity(400, {NoiseKind::Amplitude, 0.05}), 0.7893, 5e-5);
    EXPECT_THROW(mean_fidelity(0, {NoiseKind::Amplitude, 0.1}), std::invalid_argument);
}

TEST(analytics, worst_case_mean_fidelity_examples) {
    EXPECT_NEAR(worst_case_mean_fidelity_at(1e6), 0.5, 1e-15);
    EXPECT_EQ(worst_case_mean_fidelity(3, {NoiseKind::Phase, 0.0}), 1.0);
    EXPECT_NEAR(worst_case_mean_fidelity_at(0.1), 0.9524, 5e-5);
    // Average of cos^2(e/2), e ~ Normal(0, 2 x), done independently.
    for (double x : {0.1, 1.0, 10.0}) {
        double oracle_value =
            oracle::gaussian_expectation([](double e) { return std::pow(std::cos(e / 2), 2); }, std::sqrt(2 * x));
        EXPECT_NEAR(worst_case_mean_fidelity_at(x), oracle_value, 1e-10);
    }
}

TEST(analytics, phase_model_is_amplitude_model_with_four_n) {
    for (uint64_t n : {1, 7, 100}) {
        for (double delta : {0.0, 0.01, 0.2}) {
            EXPECT_EQ(mean_fidelity(n, {NoiseKind::Phase, delta}), mean_fidelity(4 * n, {NoiseKind::Amplitude, delta}));
            EXPECT_EQ(worst_case_mean_fidelity(n, {NoiseKind::Phase, delta}),
                      worst_case_mean_fidelity(4 * n, {NoiseKind::Amplitude, delta}));
        }
    }
}

TEST(analytics, mean_fidelity_is_strictly_decreasing) {
    double previous = mean_fidelity_at(0.0);
    EXPECT_EQ(previous, 1.0);
    for (double x = 0.05; x < 30.0; x *= 1.3) {
        double current = mean_fidelity_at(x);
        EXPECT_LT(current, previous);
        EXPECT_GT(current, 2.0 / 3.0);
        previous = current;
    }
}

TEST(analytics, reparametrization_identity) {
    for (double eps : {0.3, 1.7, 3.0}) {
        double over_sphere = sphere_average([&](double theta, double phi) { return fidelity_amplitude(eps, theta, phi); });
        double over_cos = oracle::simpson(
                              [&](double c) {
                                  return std::pow(std::cos(eps / 2), 2) + std::pow(std::sin(eps / 2) * c, 2);
                              },
                              -1.0, 1.0, 200) /
                          2.0;
        EXPECT_NEAR(over_sphere, over_cos, 1e-10);
    }
}

TEST(analytics, gaussian_average_reproduces_mean_fidelity) {
    for (double x : {0.1, 1.0, 10.0}) {
        double value = oracle::gaussian_expectation(
            [&](double eps) {
                return oracle::simpson(
                           [&](double c) {
                               return std::pow(std::cos(eps / 2), 2) + std::pow(std::sin(eps / 2) * c, 2);
                           },
                           -1.0, 1.0, 20) /
                       2.0;
            },
            std::sqrt(2 * x));
        EXPECT_NEAR(value, mean_fidelity_at(x), 1e-8) << x;
    }
}

TEST(analytics, pdf_domain_and_convergence_errors) {
    EXPECT_THROW(fidelity_pdf(0.0, 1.0), std::domain_error);
    EXPECT_THROW(fidelity_pdf(1.0, 1.0), std::domain_error);
    EXPECT_THROW(fidelity_pdf(0.5, 0.0), std::domain_error);
    EXPECT_THROW(fidelity_pdf(0.5, -1.0), std::domain_error);
    EXPECT_THROW(fidelity_pdf(0.5, 1.0, QuadratureSpec{8, 50, 1e-15}), std::invalid_argument);
    EXPECT_THROW(fidelity_pdf(0.5, 1.0, QuadratureSpec{32, 50, 0.0}), std::invalid_argument);
    EXPECT_THROW(fidelity_pdf(0.5, 2000.0), ConvergenceError);
    EXPECT_THROW(fidelity_pdf(0.5, 10.0, QuadratureSpec{128, 2, 1e-15}), ConvergenceError);
    EXPECT_NO_THROW(fidelity_pdf(0.5, 10.0, QuadratureSpec{128, 2, 1e-2}));
}

TEST(analytics, pdf_is_positive_and_diverges_only_at_one) {
    for (double x : {0.1, 1.0, 10.0}) {
        for (double f = 1e-6; f < 1.0; f += 0.0123) {
            EXPECT_GE(fidelity_pdf(f, x), 0.0);
        }
        double p_small = fidelity_pdf(1e-6, x);
        EXPECT_TRUE(std::isfinite(p_small));
        EXPECT_GT(fidelity_pdf(1 - 1e-6, x), fidelity_pdf(1 - 1e-3, x));
        EXPECT_GT(fidelity_pdf(1 - 1e-3, x), fidelity_pdf(0.5, x));
        // Finite limit at F -> 0.
        EXPECT_NEAR(fidelity_pdf(1e-9, x), p_small, 1e-3 * p_small + 1e-12);
        // Integrable 1/sqrt(1 - F) divergence.
        double c1 = fidelity_pdf(1 - 1e-8, x) * std::sqrt(1e-8);
        double c2 = fidelity_pdf(1 - 1e-10, x) * std::sqrt(1e-10);
        EXPECT_NEAR(c1, c2, 1e-3 * c2);
    }
}

TEST(analytics, pdf_bins_match_cdf_oracle) {
    for (double x : {0.1, 1.0, 10.0}) {
        for (auto [lo, hi] : {std::pair{0.0, 0.1}, {0.3, 0.35}, {0.6, 0.8}, {0.9, 0.99}, {0.99, 1.0}}) {
            double expected = cdf_oracle(hi, x) - cdf_oracle(lo, x);
            EXPECT_NEAR(pdf_bin_probability(lo, hi, x), expected, 1e-6) << x << " [" << lo << ", " << hi << "]";
        }
    }
    EXPECT_THROW(pdf_bin_probability(0.5, 0.4, 1.0), std::domain_error);
}

TEST(analytics, pdf_integrates_to_one_with_the_right_mean) {
    for (double x : {0.1, 1.0, 10.0}) {
        PdfIntegral mass = integrate_pdf(x, 0);
        PdfIntegral first = integrate_pdf(x, 1);
        EXPECT_NEAR(mass.total(), 1.0, 2e-3) << x;
        EXPECT_NEAR(first.total(), mean_fidelity_at(x), 2e-3) << x;
        EXPECT_GT(mass.upper_tail, 0.0);

        PdfGrid grid = fidelity_pdf_grid(x, 1001, {}, 1e-4);
        EXPECT_NEAR(grid.integrate(0), 1.0, 2e-3) << x;
        EXPECT_NEAR(grid.integrate(1), mean_fidelity_at(x), 2e-3) << x;
        for (size_t i = 1; i < grid.fidelity_points.size(); i++) {
            ASSERT_GT(grid.fidelity_points[i], grid.fidelity_points[i - 1]);
        }
        EXPECT_EQ(grid.fidelity_points.front(), 1e-4);
        EXPECT_EQ(grid.fidelity_points.back(), 1 - 1e-4);
    }
}

TEST(analytics, pdf_grid_is_independent_of_evaluation_order) {
    PdfGrid grid = fidelity_pdf_grid(1.0, 64);
    std::vector<double> parallel(grid.fidelity_points.size());
    {
        std::vector<std::jthread> threads;
        for (size_t w = 0; w < 4; w++) {
            threads.emplace_back([&, w] {
                for (size_t i = parallel.size(); i-- > 0;) {
                    if (i % 4 == w) {
                        parallel[i] = fidelity_pdf(grid.fidelity_points[i], 1.0);
                    }
                }
            });
        }
    }
    EXPECT_EQ(parallel, grid.densities);
}

TEST(analytics, max_cycles_and_protection_time) {
    EXPECT_EQ(max_cycles(1.0), 1.0);
    EXPECT_NEAR(max_cycles(0.05), 400.0, 1e-9);
    EXPECT_NEAR(max_cycles(kPi * 1e-5), 1.0132e9, 1e5);
    EXPECT_THROW(max_cycles(0.0), std::domain_error);
    EXPECT_THROW(max_protection_time(1.0, 0.0), std::domain_error);
    EXPECT_THROW(max_protection_time(0.0, 1.0), std::domain_error);
    EXPECT_EQ(max_protection_time(2.5, 1.0), 2.5);
    for (double tau : {1e-15, 1.0, 3e4}) {
        for (double delta : {1e-5, 0.01, 0.7}) {
            EXPECT_DOUBLE_EQ(max_protection_time(tau, delta), tau * max_cycles(delta));
        }
    }
    double ratio = max_protection_time(1.0, kPi * 1e-5);
    EXPECT_GT(ratio, 0.9e9);
    EXPECT_LT(ratio, 1.1e9);
}
