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

#include "qgeo/monotonicity_lab.h"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qgeo/errors.h"
#include "qgeo/metrics.h"

using namespace qgeo;

namespace {

const ContractivityMetric kAllMetrics[] = {ContractivityMetric::BuresDistance, ContractivityMetric::BuresAngle,
                                           ContractivityMetric::SjoqvistDistance, ContractivityMetric::Fidelity};

}  // namespace

TEST(cptp, sampled_channels_are_trace_preserving) {
    Rng rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index dim = 2 + trial % 3;
        const Eigen::Index env = 1 + trial % (dim * dim);
        const CPTPChannel ch = sample_cptp(dim, env, rng);
        EXPECT_EQ(static_cast<Eigen::Index>(ch.kraus.size()), env);
        EXPECT_LT(ch.completeness_residual(), 1e-10);
    }
}

TEST(cptp, unit_environment_is_unitary) {
    Rng rng(2);
    const CPTPChannel ch = sample_cptp(3, 1, rng);
    ASSERT_EQ(ch.kraus.size(), 1u);
    EXPECT_LT(unitarity_residual(ch.kraus[0]), 1e-12);
}

TEST(cptp, deterministic_for_seed) {
    Rng a(3), b(3);
    EXPECT_EQ(sample_cptp(2, 3, a).kraus, sample_cptp(2, 3, b).kraus);
}

TEST(cptp, full_environment_gives_full_kraus_rank) {
    Rng rng(4);
    int full = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        full += sample_cptp(2, 4, rng).kraus_rank() == 4 ? 1 : 0;
    }
    // Rank deficiency is a measure-zero event for the Haar isometry.
    EXPECT_EQ(full, 1000);
}

TEST(cptp, apply_preserves_states) {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityOperator rho = sample_zhsl(3, rng);
        const DensityOperator out = sample_cptp(3, 4, rng).apply(rho);
        EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    }
}

TEST(cptp, depolarizing_channel) {
    Rng rng(6);
    const DensityOperator rho = sample_zhsl(2, rng);
    const CPTPChannel ch = CPTPChannel::depolarizing(2, 0.3);
    EXPECT_LT(ch.completeness_residual(), 1e-15);
    const ComplexMatrix expected = 0.7 * rho.matrix() + 0.15 * ComplexMatrix::Identity(2, 2);
    EXPECT_LT((ch.apply(rho.matrix()) - expected).norm(), 1e-15);
}

TEST(contractivity, identity_channel_margin_zero) {
    Rng rng(7);
    const CPTPChannel id = CPTPChannel::identity(2);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityOperator a = sample_zhsl(2, rng);
        const DensityOperator b = sample_zhsl(2, rng);
        for (ContractivityMetric m : kAllMetrics) {
            EXPECT_EQ(contractivity_margin(m, id, a, b).margin, 0.0) << contractivity_metric_name(m);
        }
    }
}

TEST(contractivity, depolarizing_contracts_bures) {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityOperator a = sample_zhsl(2, rng);
        const DensityOperator b = sample_zhsl(2, rng);
        const CPTPChannel ch = CPTPChannel::depolarizing(2, 0.05 + 0.9 * trial / 200.0);
        EXPECT_LE(contractivity_margin(ContractivityMetric::BuresDistance, ch, a, b).margin, 0.0);
        EXPECT_LE(contractivity_margin(ContractivityMetric::BuresAngle, ch, a, b).margin, 0.0);
    }
}

TEST(contractivity, complete_depolarization_maximizes_fidelity) {
    Rng rng(9);
    const CPTPChannel ch = CPTPChannel::depolarizing(2, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const MarginSample s =
            contractivity_margin(ContractivityMetric::Fidelity, ch, sample_zhsl(2, rng), sample_zhsl(2, rng));
        EXPECT_NEAR(s.after, 1.0, 1e-12);
        EXPECT_LE(s.margin, 1e-12);
    }
}

TEST(contractivity, amplitude_damping_is_contractive) {
    Rng rng(10);
    for (int trial = 0; trial < 200; ++trial) {
        const CPTPChannel ch{qgeo_test::amplitude_damping(trial / 200.0)};
        const DensityOperator a = sample_zhsl(2, rng);
        const DensityOperator b = sample_zhsl(2, rng);
        EXPECT_LE(contractivity_margin(ContractivityMetric::BuresDistance, ch, a, b).margin, 1e-12);
        EXPECT_LE(contractivity_margin(ContractivityMetric::Fidelity, ch, a, b).margin, 1e-12);
    }
}

TEST(contractivity, random_bures_trials_have_no_violations) {
    for (ContractivityMetric m :
         {ContractivityMetric::BuresDistance, ContractivityMetric::BuresAngle, ContractivityMetric::Fidelity}) {
        const ContractivityReport r = check_contractivity(m, {2, 2000, 42, 0, 1, 1000});
        EXPECT_TRUE(r.violations.empty()) << contractivity_metric_name(m);
        EXPECT_EQ(r.evaluated, 2000u);
        EXPECT_LE(r.max_violation_margin, kViolationThreshold);
    }
}

TEST(contractivity, higher_dimension_bures) {
    const ContractivityReport r = check_contractivity(ContractivityMetric::BuresDistance, {3, 500, 7, 0, 1, 1000});
    EXPECT_TRUE(r.violations.empty());
}

TEST(contractivity, sjoqvist_exploration_reports_statistics) {
    const ContractivityReport r = check_contractivity(ContractivityMetric::SjoqvistDistance, {2, 500, 5, 0, 1, 1000});
    EXPECT_EQ(r.evaluated + r.skipped, 500u);
    EXPECT_GE(r.max_violation_margin, r.min_margin);
    for (const ContractivityViolation &v : r.violations) {
        // Each record reproduces from its stored states and Kraus operators.
        const MarginSample s = contractivity_margin(ContractivityMetric::SjoqvistDistance, CPTPChannel{v.kraus},
                                                    DensityOperator::validate(v.rho1), DensityOperator::validate(v.rho2));
        EXPECT_DOUBLE_EQ(s.margin, v.margin);
    }
}

TEST(contractivity, report_independent_of_worker_count) {
    const ContractivityReport one = check_contractivity(ContractivityMetric::BuresAngle, {2, 300, 11, 0, 1, 1000});
    const ContractivityReport four = check_contractivity(ContractivityMetric::BuresAngle, {2, 300, 11, 0, 4, 1000});
    EXPECT_EQ(one.max_violation_margin, four.max_violation_margin);
    EXPECT_EQ(one.mean_margin, four.mean_margin);
    EXPECT_EQ(one.min_margin, four.min_margin);
}

TEST(contractivity, fidelity_wrapper) {
    const ContractivityReport r = fidelity_monotonicity_check({2, 200, 3, 0, 1, 1000});
    EXPECT_EQ(r.metric, ContractivityMetric::Fidelity);
    EXPECT_TRUE(r.violations.empty());
}

TEST(contractivity, metric_names_round_trip) {
    for (ContractivityMetric m : kAllMetrics) {
        EXPECT_EQ(parse_contractivity_metric(contractivity_metric_name(m)), m);
    }
    EXPECT_FALSE(parse_contractivity_metric("trace_distance").has_value());
}

TEST(contractivity, invalid_configuration) {
    EXPECT_THROW(check_contractivity(ContractivityMetric::BuresDistance, {1, 10, 0, 0, 1, 1000}), Error);
    EXPECT_THROW(check_contractivity(ContractivityMetric::BuresDistance, {2, 0, 0, 0, 1, 1000}), Error);
    Rng rng(1);
    EXPECT_THROW(sample_cptp(1, 1, rng), Error);
    EXPECT_THROW(sample_cptp(2, 0, rng), Error);
}
