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

#ifndef QGEO_MONOTONICITY_LAB_H
#define QGEO_MONOTONICITY_LAB_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgeo/matrix_core.h"
#include "qgeo/quantum_states.h"

namespace qgeo {

/// Completely positive trace-preserving map in Kraus form. Output and input
/// dimensions are equal.
struct CPTPChannel {
    std::vector<ComplexMatrix> kraus;

    Eigen::Index dim() const;
    ComplexMatrix apply(const ComplexMatrix &rho) const;
    DensityOperator apply(const DensityOperator &rho) const;
    /// ||sum_i K_i^dagger K_i - I||_F
    double completeness_residual() const;
    /// Rank of the Choi matrix (number of linearly independent Kraus operators).
    Eigen::Index kraus_rank(double tol = 1e-10) const;

    static CPTPChannel identity(Eigen::Index dim);
    /// rho -> (1 - p) rho + p I / dim
    static CPTPChannel depolarizing(Eigen::Index dim, double p);
};

/// Kraus operators from the row blocks of the first dim_in columns of a Haar
/// unitary on C^{dim_in * env_dim}. env_dim = 1 gives a unitary channel.
CPTPChannel sample_cptp(Eigen::Index dim_in, Eigen::Index env_dim, Rng &rng);

enum class ContractivityMetric { BuresDistance, BuresAngle, SjoqvistDistance, Fidelity };

const char *contractivity_metric_name(ContractivityMetric m);
std::optional<ContractivityMetric> parse_contractivity_metric(const std::string &name);

/// A violation needs margin above this, ten times the worst primitive error bound.
inline constexpr double kViolationThreshold = 1e-9;

struct MarginSample {
    double before = 0.0;
    double after = 0.0;
    /// d(Phi rho1, Phi rho2) - d(rho1, rho2) for distances;
    /// F(rho1, rho2) - F(Phi rho1, Phi rho2) for fidelity.
    double margin = 0.0;
};

/// Throws what the metric throws (DegenerateSpectrum etc. for Sjoqvist).
MarginSample contractivity_margin(ContractivityMetric metric, const CPTPChannel &channel, const DensityOperator &rho1,
                                  const DensityOperator &rho2);

struct ContractivityViolation {
    std::size_t trial = 0;
    std::uint64_t trial_seed = 0;
    ComplexMatrix rho1;
    ComplexMatrix rho2;
    std::vector<ComplexMatrix> kraus;
    double before = 0.0;
    double after = 0.0;
    double margin = 0.0;
};

struct ContractivityConfig {
    Eigen::Index dim = 2;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    /// 0 draws the environment dimension uniformly from [1, dim^2] per trial.
    Eigen::Index env_dim = 0;
    unsigned workers = 1;
    /// Per-trial cap on Sjoqvist resamples of degenerate or ambiguous pairs.
    std::size_t max_resamples = 1000;
};

struct ContractivityReport {
    ContractivityMetric metric = ContractivityMetric::BuresDistance;
    Eigen::Index dim = 2;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t evaluated = 0;
    std::size_t resamples = 0;  // Sjoqvist only
    std::size_t skipped = 0;    // trials that exhausted max_resamples
    std::vector<ContractivityViolation> violations;
    /// Largest margin over all evaluated trials (violation iff > 1e-9).
    double max_violation_margin = 0.0;
    double mean_margin = 0.0;
    double min_margin = 0.0;
    std::size_t strictly_contracting = 0;  // trials with margin < -1e-9
};

/// Random (state pair, channel) trials. Trial i draws from
/// derive_seed(seed, i), so the report does not depend on `workers`.
ContractivityReport check_contractivity(ContractivityMetric metric, const ContractivityConfig &config);

ContractivityReport fidelity_monotonicity_check(const ContractivityConfig &config);

}  // namespace qgeo

#endif
