// Copyright 2026 The qgeo Authors
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

#include "qgeo/bloch_geometry.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qgeo/errors.h"

using namespace qgeo;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no qgeo::Error thrown";
    return ErrorCode::InvalidArgument;
}

// Composite Simpson rule in alpha = arcsin(r) and theta, written out
// independently of the library's Gauss-Legendre integrator.
double simpson_ball(const std::function<double(double, double)> &density) {
    const int n = 400;  // even
    auto simpson = [n](const std::function<double(double)> &g, double a, double b) {
        const double h = (b - a) / n;
        double s = g(a) + g(b);
        for (int i = 1; i < n; ++i) {
            s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
        }
        return s * h / 3.0;
    };
    return 2.0 * kPi * simpson(
                           [&](double alpha) {
                               // The r = 1 endpoint is evaluated as a limit.
                               alpha = std::min(alpha, 0.5 * kPi - 1e-6);
                               const double r = std::sin(alpha);
                               return std::cos(alpha) *
                                      simpson([&](double theta) { return density(r, theta); }, 0.0, kPi);
                           },
                           0.0, 0.5 * kPi);
}

}  // namespace

TEST(mc_functions, values) {
    EXPECT_DOUBLE_EQ(f_bures(1.0), 1.0);
    EXPECT_DOUBLE_EQ(f_sjoqvist(1.0), 0.0);
    EXPECT_NEAR(f_sjoqvist(0.5), 1.0 / 12.0, 1e-16);
    for (double nu : {0.25, 0.5, 1.0, 2.0, 3.5}) {
        EXPECT_EQ(f_zhsl(1.0, nu), 0.0);
    }
}

TEST(mc_functions, zhsl_half_is_sjoqvist) {
    for (double t : {0.1, 0.5, 2.0, 10.0}) {
        EXPECT_NEAR(f_zhsl(t, 0.5) - f_sjoqvist(t), 0.0, 1e-12);
    }
    for (double t : log_spaced(1e-3, 1e3, 1000)) {
        EXPECT_NEAR(f_zhsl(t, 0.5), f_sjoqvist(t), 1e-12 * std::max(1.0, f_sjoqvist(t)));
    }
}

TEST(mc_functions, zhsl_normalization_closed_form) {
    EXPECT_NEAR(zhsl_normalization(0.5), 1.0 / (2.0 * kPi * kPi), 1e-12 / (2.0 * kPi * kPi));
    for (double nu : {0.5, 1.0, 2.0, 3.0}) {
        const double closed = std::tgamma(0.5 + nu) / (2.0 * std::pow(kPi, 1.5) * std::tgamma(nu));
        EXPECT_NEAR(zhsl_normalization(nu), closed, 1e-12 * closed);
    }
}

TEST(mc_functions, domain_errors) {
    EXPECT_EQ(code_of([] { f_bures(0.0); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([] { f_sjoqvist(-1.0); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([] { f_zhsl(0.0, 1.0); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([] { MCFunction::bures()(std::nan("")); }), ErrorCode::DomainError);
}

TEST(mc_functions, positive_away_from_one) {
    for (double t : log_spaced(1e-4, 1e4, 301)) {
        if (t == 1.0) {
            continue;
        }
        EXPECT_GT(f_bures(t), 0.0);
        EXPECT_GT(f_sjoqvist(t), 0.0);
        EXPECT_GT(f_zhsl(t, 2.0), 0.0);
    }
}

TEST(self_inversive, verdicts) {
    const std::vector<double> ts = log_spaced(1e-3, 1e3, 1000);
    EXPECT_TRUE(check_self_inversive(MCFunction::bures(), ts).pass);
    EXPECT_TRUE(check_self_inversive(MCFunction::sjoqvist(), ts).pass);
    for (double nu : {0.5, 1.0, 2.0}) {
        EXPECT_TRUE(check_self_inversive(MCFunction::zhsl(nu), ts).pass) << nu;
    }
    const MCFunction square("square", [](double t) { return t * t; });
    const SelfInversiveReport r = check_self_inversive(square, ts);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.samples, ts.size());
}

TEST(normalization, verdicts) {
    EXPECT_TRUE(check_normalization(MCFunction::bures()).pass);
    const NormalizationReport sj = check_normalization(MCFunction::sjoqvist());
    EXPECT_FALSE(sj.pass);
    EXPECT_EQ(sj.value_at_one, 0.0);
    EXPECT_FALSE(check_normalization(MCFunction::zhsl(1.0)).pass);
    EXPECT_TRUE(MCFunction::sjoqvist().singular_at_one());
    EXPECT_FALSE(MCFunction::bures().singular_at_one());
}

TEST(operator_monotone, pinned_counterexample) {
    const MonotonicityCounterexample c = pinned_counterexample(MCFunction::sjoqvist());
    EXPECT_NEAR(c.min_eigenvalue, -1.0 / 12.0, 1e-12);
    EXPECT_GT(pinned_counterexample(MCFunction::bures()).min_eigenvalue, 0.0);
}

TEST(operator_monotone, bures_survives_random_search) {
    Rng rng(1);
    for (Eigen::Index dim = 2; dim <= 4; ++dim) {
        const OperatorMonotoneReport r = check_operator_monotone(MCFunction::bures(), dim, 3334, rng);
        EXPECT_FALSE(r.violation_found()) << "dim " << dim;
        EXPECT_EQ(r.verdict(), "no violation found in 3334 trials");
    }
}

TEST(operator_monotone, sjoqvist_violations_found) {
    Rng rng(2);
    const OperatorMonotoneReport r = check_operator_monotone(MCFunction::sjoqvist(), 2, 2000, rng);
    ASSERT_TRUE(r.violation_found());
    EXPECT_EQ(r.verdict(), "violation found");
    const MonotonicityCounterexample &c = *r.counterexample;
    // The reported pair really is ordered, and the violation reproduces.
    EXPECT_GE(eig_hermitian(c.b - c.a).eigenvalues(0), -1e-12);
    EXPECT_NEAR(evaluate_operator_pair(MCFunction::sjoqvist(), c.a, c.b).min_eigenvalue, c.min_eigenvalue, 1e-12);
}

TEST(operator_monotone, square_is_not_operator_monotone) {
    Rng rng(3);
    const MCFunction square("square", [](double t) { return t * t; });
    EXPECT_TRUE(check_operator_monotone(square, 2, 2000, rng).violation_found());
}

TEST(mc_line_element, bures_and_sjoqvist_forms) {
    Rng rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const BlochState b{0.01 + 0.98 * u(rng), kPi * u(rng), 2 * kPi * u(rng)};
        const BlochDisplacement d{n(rng), n(rng), n(rng)};
        const double s = std::sin(b.theta);
        const double solid = d.dtheta * d.dtheta + s * s * d.dphi * d.dphi;
        const double radial = d.dr * d.dr / (1.0 - b.r * b.r);
        const double bures = 0.25 * (radial + b.r * b.r * solid);
        const double sj = 0.25 * (radial + solid);
        EXPECT_NEAR(mc_line_element(MCFunction::bures(), b, d), bures, 1e-12 * bures);
        EXPECT_NEAR(mc_line_element(MCFunction::sjoqvist(), b, d), sj, 1e-12 * sj);
    }
}

TEST(mc_line_element, radial_displacement_independent_of_f) {
    const BlochState b{0.6, 1.0, 2.0};
    const BlochDisplacement d{0.3, 0.0, 0.0};
    const double expected = 0.25 * 0.09 / (1.0 - 0.36);
    EXPECT_NEAR(mc_line_element(MCFunction::bures(), b, d), expected, 1e-16);
    EXPECT_NEAR(mc_line_element(MCFunction::sjoqvist(), b, d), expected, 1e-16);
    EXPECT_NEAR(mc_line_element(MCFunction::zhsl(2.0), b, d), expected, 1e-16);
}

TEST(mc_line_element, domain) {
    const BlochDisplacement angular{0.0, 0.1, 0.0};
    EXPECT_EQ(code_of([&] { mc_line_element(MCFunction::sjoqvist(), {0.0, 1.0, 0.0}, angular); }),
              ErrorCode::RadiusOutOfDomain);
    EXPECT_EQ(code_of([&] { mc_line_element(MCFunction::bures(), {1.0, 1.0, 0.0}, angular); }),
              ErrorCode::RadiusOutOfDomain);
    EXPECT_NO_THROW(mc_line_element(MCFunction::bures(), {0.0, 1.0, 0.0}, angular));
    EXPECT_NO_THROW(mc_line_element(MCFunction::sjoqvist(), {0.0, 1.0, 0.0}, {0.2, 0.0, 0.0}));
}

TEST(mc_line_element, sjoqvist_angular_coefficient_grows_at_centre) {
    const MCFunction f = MCFunction::sjoqvist();
    const double w1 = mc_inverse_weight(f, 1e-1);
    const double w2 = mc_inverse_weight(f, 1e-2);
    const double w3 = mc_inverse_weight(f, 1e-3);
    EXPECT_LT(w1, w2);
    EXPECT_LT(w2, w3);
    // 1/f = (1 + r)/r^2 exactly.
    EXPECT_NEAR(w3, (1.0 + 1e-3) / 1e-6, 1e-6 * w3);
}

TEST(mc_line_element, agrees_with_spectral_line_elements) {
    Rng rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const BlochState b{0.1 + 0.8 * u(rng), 0.2 + 2.7 * u(rng), 2 * kPi * u(rng)};
        const BlochDisplacement d{u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5};
        const StateCurve curve = [&](double t) {
            return bloch_to_density({b.r + t * d.dr, b.theta + t * d.dtheta, b.phi + t * d.dphi});
        };
        const double sj = sjoqvist_line_element(curve, 0.0, 1.0).total;
        const double bu = bures_line_element(curve, 0.0, 1.0).total;
        EXPECT_NEAR(mc_line_element(MCFunction::sjoqvist(), b, d), sj, 1e-6 * sj);
        EXPECT_NEAR(mc_line_element(MCFunction::bures(), b, d), bu, 1e-6 * bu);
    }
}

TEST(volume, densities_integrate_to_one) {
    const std::vector<VolumeMeasure> measures = {
        {VolumeKind::Bures, 1.0}, {VolumeKind::Sjoqvist, 1.0}, {VolumeKind::Zhsl, 0.5},
        {VolumeKind::Zhsl, 1.0},  {VolumeKind::Zhsl, 2.0}};
    for (const VolumeMeasure &m : measures) {
        EXPECT_NEAR(integrate_volume_density(m), 1.0, 1e-6) << m.name();
        const double oracle =
            simpson_ball([&](double r, double theta) { return volume_density(m, BlochState{r, theta, 0.0}); });
        EXPECT_NEAR(oracle, 1.0, 1e-6) << m.name();
    }
}

TEST(volume, point_values) {
    EXPECT_NEAR(volume_density({VolumeKind::Sjoqvist, 1.0}, {0.0, kPi / 2, 0.3}), 1.0 / (2.0 * kPi * kPi), 1e-16);
    // nu = 1: Gamma(3/2) / (2 pi^{3/2}) sin(theta) = sin(theta) / (4 pi), flat in r.
    for (double r : {0.0, 0.3, 0.9}) {
        EXPECT_NEAR(volume_density({VolumeKind::Zhsl, 1.0}, {r, 0.7, 0.0}), std::sin(0.7) / (4.0 * kPi), 1e-16);
    }
    const double r = 0.5;
    EXPECT_NEAR(volume_density({VolumeKind::Bures, 1.0}, {r, kPi / 2, 0.0}), r * r / (kPi * kPi * std::sqrt(0.75)),
                1e-16);
    EXPECT_EQ(code_of([] { volume_density({VolumeKind::Bures, 1.0}, {1.0, 1.0, 0.0}); }),
              ErrorCode::RadiusOutOfDomain);
}

TEST(geodesic, sjoqvist_pure_endpoints) {
    for (double theta : {0.0, 0.1, 1.0, kPi / 3, kPi}) {
        EXPECT_EQ(geodesic_length(MetricKind::Sjoqvist, {1.0, 1.0, theta}), theta / 2);
    }
    EXPECT_NEAR(geodesic_length(MetricKind::Sjoqvist, {1.0, 1.0, kPi / 3}), kPi / 6, 1e-16);
}

TEST(geodesic, bures_antipodal) {
    EXPECT_NEAR(geodesic_length(MetricKind::Bures, {1.0, 1.0, kPi}), std::sqrt(2.0), 1e-12);
}

TEST(geodesic, small_angle_agreement) {
    for (double theta : {1e-2, 1e-3}) {
        const double half = theta / 2;
        EXPECT_LT(std::abs(geodesic_length(MetricKind::Bures, {1.0, 1.0, theta}) - half) / half, theta * theta);
        EXPECT_LT(std::abs(fubini_study_length(theta) - half) / half, theta * theta);
    }
}

TEST(geodesic, bures_below_sjoqvist_for_pure_endpoints) {
    for (int i = 0; i <= 1000; ++i) {
        const double theta = kPi * i / 1000.0;
        EXPECT_LE(geodesic_length(MetricKind::Bures, {1.0, 1.0, theta}),
                  geodesic_length(MetricKind::Sjoqvist, {1.0, 1.0, theta}) + 1e-12);
    }
}

TEST(geodesic, bures_matches_fidelity_oracle) {
    Rng rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const GeodesicEndpoints e{u(rng), u(rng), kPi * u(rng)};
        const Eigen::Vector3d a(0.0, 0.0, e.r_a);
        const Eigen::Vector3d b(e.r_b * std::sin(e.theta_b), 0.0, e.r_b * std::cos(e.theta_b));
        const double f = qgeo_test::qubit_fidelity(a, b);
        EXPECT_NEAR(geodesic_length(MetricKind::Bures, e), std::sqrt(std::max(0.0, 2.0 - 2.0 * f)), 1e-7);
    }
}

TEST(geodesic, zero_iff_coincident) {
    EXPECT_EQ(geodesic_length(MetricKind::Bures, {0.4, 0.4, 0.0}), 0.0);
    EXPECT_EQ(geodesic_length(MetricKind::Sjoqvist, {0.4, 0.4, 0.0}), 0.0);
    EXPECT_GT(geodesic_length(MetricKind::Bures, {0.4, 0.4, 1e-6}), 0.0);
    EXPECT_GT(geodesic_length(MetricKind::Bures, {0.4, 0.4 + 1e-9, 0.0}), 0.0);
}

TEST(geodesic, invalid_endpoints) {
    EXPECT_EQ(code_of([] { geodesic_length(MetricKind::Bures, {1.2, 1.0, 0.0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { geodesic_length(MetricKind::Sjoqvist, {1.0, 1.0, 4.0}); }), ErrorCode::InvalidArgument);
}

TEST(fubini_study_length, values) {
    EXPECT_EQ(fubini_study_length(0.0), 0.0);
    EXPECT_NEAR(fubini_study_length(kPi), 1.0, 1e-16);
    EXPECT_NEAR(fubini_study_length(0.01), 0.005, 0.01 * 0.01 * 0.01);
    // Half of 2 [1 - cos^2(theta/2)]^{1/2}.
    for (double theta : {0.3, 1.2, 2.9}) {
        const double c = std::cos(theta / 2);
        EXPECT_NEAR(fubini_study_length(theta), std::sqrt(1.0 - c * c), 1e-15);
    }
}

TEST(cylinder_chart, endpoints) {
    EXPECT_EQ(cylinder_chart({0.0, 0.5, 0.5}).alpha_r, 0.0);
    EXPECT_NEAR(cylinder_chart({1.0, 0.5, 0.5}).alpha_r, kPi / 2, 1e-16);
}

TEST(cylinder_chart, pullback_matches_ball_form) {
    Rng rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const BlochState b{0.01 + 0.98 * u(rng), kPi * u(rng), 2 * kPi * u(rng)};
        const BlochDisplacement d{n(rng), n(rng), n(rng)};
        const CylinderChart c = cylinder_chart(b);
        const double dalpha = d.dr / std::sqrt(1.0 - b.r * b.r);
        const double sj = mc_line_element(MCFunction::sjoqvist(), b, d);
        const double bu = mc_line_element(MCFunction::bures(), b, d);
        EXPECT_NEAR(chart_line_element(MetricKind::Sjoqvist, c, dalpha, d.dtheta, d.dphi), sj, 1e-12 * sj);
        EXPECT_NEAR(chart_line_element(MetricKind::Bures, c, dalpha, d.dtheta, d.dphi), bu, 1e-12 * bu);
    }
}
