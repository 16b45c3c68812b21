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

#include "pulsefid/noise.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace pulsefid;

TEST(noise, zero_delta_gives_zeros) {
    auto errors = sample_pulse_errors({NoiseKind::Amplitude, 0.0}, 17, {1, 2});
    ASSERT_EQ(errors.size(), 17u);
    for (double e : errors) {
        EXPECT_EQ(e, 0.0);
    }
}

TEST(noise, deterministic_per_stream) {
    NoiseModel model{NoiseKind::Phase, 0.3};
    EXPECT_EQ(sample_pulse_errors(model, 100, {42, 9}), sample_pulse_errors(model, 100, {42, 9}));
    EXPECT_NE(sample_pulse_errors(model, 100, {42, 9}), sample_pulse_errors(model, 100, {42, 10}));
    EXPECT_NE(sample_pulse_errors(model, 100, {42, 9}), sample_pulse_errors(model, 100, {43, 9}));
}

TEST(noise, generator_matches_reference_outputs) {
    // SplitMix64 from state 0 and xoshiro256** from state {1, 2, 3, 4}, as
    // published with the reference implementations.
    EXPECT_EQ(mix64(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
    StreamRng rng = StreamRng::from_state({1, 2, 3, 4});
    EXPECT_EQ(rng(), 11520u);
    EXPECT_EQ(rng(), 0u);
    EXPECT_EQ(rng(), 1509978240u);
}

TEST(noise, box_muller_transform) {
    StreamRng a({3, 4});
    StreamRng b({3, 4});
    for (int i = 0; i < 100; i++) {
        double u1 = b.uniform();
        double u2 = b.uniform();
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        EXPECT_EQ(a.standard_normal(), r * std::cos(2.0 * M_PI * u2));
        EXPECT_EQ(a.standard_normal(), r * std::sin(2.0 * M_PI * u2));
    }
}

TEST(noise, rejects_bad_arguments) {
    EXPECT_THROW(sample_pulse_errors({NoiseKind::Amplitude, -1.0}, 3, {}), std::domain_error);
    EXPECT_THROW(sample_pulse_errors({NoiseKind::Amplitude, NAN}, 3, {}), std::domain_error);
    EXPECT_THROW(sample_pulse_errors({NoiseKind::Amplitude, 1.0}, 0, {}), std::invalid_argument);
    EXPECT_THROW(accumulated_error_std({NoiseKind::Amplitude, 1.0}, 0), std::invalid_argument);
    EXPECT_THROW(parse_noise_kind("both"), std::invalid_argument);
    EXPECT_EQ(parse_noise_kind("phase"), NoiseKind::Phase);
    EXPECT_EQ(noise_kind_name(NoiseKind::Amplitude), "amplitude");
}

TEST(noise, accumulated_error_std_examples) {
    EXPECT_NEAR(accumulated_error_std({NoiseKind::Amplitude, 0.1}, 50), 1.0, 1e-15);
    EXPECT_NEAR(accumulated_error_std({NoiseKind::Phase, 0.1}, 50), 2.0, 1e-15);
    EXPECT_EQ(accumulated_error_std({NoiseKind::Amplitude, 0.0}, 123), 0.0);
}

TEST(noise, uniform_is_in_unit_interval) {
    StreamRng rng({5, 5});
    for (int i = 0; i < 100000; i++) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(noise, moments_of_one_million_draws) {
    const size_t n = 1000000;
    {
        double delta = 0.05;
        auto e = sample_pulse_errors({NoiseKind::Amplitude, delta}, n, {2024, 0});
        double mean = 0.0;
        for (double x : e) {
            mean += x;
        }
        mean /= n;
        double var = 0.0;
        for (double x : e) {
            var += (x - mean) * (x - mean);
        }
        var /= (n - 1);
        EXPECT_LT(std::abs(mean), 4 * delta / std::sqrt(static_cast<double>(n)));
        EXPECT_NEAR(var, delta * delta, 0.01 * delta * delta);
    }
    {
        auto e = sample_pulse_errors({NoiseKind::Amplitude, 1.0}, n, {2024, 1});
        double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
        for (double x : e) {
            m1 += x;
        }
        m1 /= n;
        for (double x : e) {
            double d = x - m1;
            m2 += d * d;
            m3 += d * d * d;
            m4 += d * d * d * d;
        }
        m2 /= n;
        m3 /= n;
        m4 /= n;
        double skew = m3 / std::pow(m2, 1.5);
        double excess_kurtosis = m4 / (m2 * m2) - 3.0;
        EXPECT_LT(std::abs(skew), 0.01);
        EXPECT_LT(std::abs(excess_kurtosis), 0.02);
    }
}

TEST(noise, streams_are_uncorrelated) {
    const size_t n = 100000;
    NoiseModel model{NoiseKind::Amplitude, 1.0};
    for (uint64_t index : {1, 2, 1000}) {
        auto a = sample_pulse_errors(model, n, {77, 0});
        auto b = sample_pulse_errors(model, n, {77, index});
        double ma = 0, mb = 0;
        for (size_t i = 0; i < n; i++) {
            ma += a[i];
            mb += b[i];
        }
        ma /= n;
        mb /= n;
        double sab = 0, saa = 0, sbb = 0;
        for (size_t i = 0; i < n; i++) {
            sab += (a[i] - ma) * (b[i] - mb);
            saa += (a[i] - ma) * (a[i] - ma);
            sbb += (b[i] - mb) * (b[i] - mb);
        }
        EXPECT_LT(std::abs(sab / std::sqrt(saa * sbb)), 0.005) << index;
    }
}

TEST(noise, summed_errors_match_accumulated_std) {
    const uint64_t n_cycles = 20;
    const size_t sequences = 100000;
    for (NoiseKind kind : {NoiseKind::Amplitude, NoiseKind::Phase}) {
        NoiseModel model{kind, 0.07};
        double sum_sq = 0.0;
        for (size_t s = 0; s < sequences; s++) {
            auto e = sample_pulse_errors(model, 2 * n_cycles, {99, s});
            double total = 0.0;
            for (size_t i = 0; i < e.size(); i++) {
                // Phase errors enter the net rotation as 2 * alternating sum.
                total += kind == NoiseKind::Amplitude ? e[i] : 2.0 * (i % 2 == 0 ? e[i] : -e[i]);
            }
            sum_sq += total * total;
        }
        double sample_std = std::sqrt(sum_sq / sequences);
        double expected = accumulated_error_std(model, n_cycles);
        // Standard error of a sample std is about sigma / sqrt(2 n).
        EXPECT_NEAR(sample_std, expected, 3.0 * expected / std::sqrt(2.0 * sequences));
    }
}
