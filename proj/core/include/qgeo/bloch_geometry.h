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

// Single-qubit geometry in Bloch-ball coordinates.
//
// Monotone metrics on the qubit take the form
//
//   ds^2 = (1/4) [ dr^2 / (1 - r^2) + r^2 / ((1 + r) f(t)) dOmega^2 ],
//   t = (1 - r) / (1 + r),
//
// for a scalar function f on (0, inf). A proper Morozova-Chentsov function
// is operator monotone, self inversive (f(1/t) = f(t)/t) and normalized
// (f(1) = 1). The Bures function passes all three; the Sjoqvist function and
// the ZHSL family fail normalization, and the Sjoqvist function also fails
// operator monotonicity.

#ifndef QGEO_BLOCH_GEOMETRY_H
#define QGEO_BLOCH_GEOMETRY_H

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgeo/matrix_core.h"
#include "qgeo/metrics.h"
#include "qgeo/quantum_states.h"

namespace qgeo {

double f_bures(double t);
double f_sjoqvist(double t);
double f_zhsl(double t, double nu);

/// N(nu) such that N (1 - r^2)^{nu - 1} sin(theta) integrates to one over
/// the ball, computed by quadrature.
double zhsl_normalization(double nu);

/// A scalar function on (0, inf) with its name and the value it takes at t = 1.
class MCFunction {
   public:
    MCFunction(std::string name, std::function<double(double)> fn, std::optional<double> nu = std::nullopt);

    /// Throws DomainError for t <= 0 or non-finite t.
    double operator()(double t) const;

    const std::string &name() const noexcept { return name_; }
    std::optional<double> nu() const noexcept { return nu_; }
    double value_at_one() const noexcept { return value_at_one_; }
    /// f(1) == 0: the angular metric coefficient diverges at the centre of
    /// the ball.
    bool singular_at_one() const noexcept { return value_at_one_ == 0.0; }

    static MCFunction bures();
    static MCFunction sjoqvist();
    static MCFunction zhsl(double nu);

   private:
    std::string name_;
    std::function<double(double)> fn_;
    std::optional<double> nu_;
    double value_at_one_;
};

struct BlochDisplacement {
    double dr = 0.0;
    double dtheta = 0.0;
    double dphi = 0.0;
};

/// Throws RadiusOutOfDomain for r outside [0, 1), and at r = 0 when f(1) = 0
/// and the angular displacement is nonzero.
double mc_line_element(const MCFunction &f, const BlochState &b, const BlochDisplacement &db);

/// 1 / f((1 - r)/(1 + r)), the factor that multiplies r^2/(1 + r) dOmega^2.
double mc_inverse_weight(const MCFunction &f, double r);

struct SelfInversiveReport {
    double max_residual = 0.0;  // max |f(1/t) - f(t)/t| / max(1, |f(1/t)|)
    double worst_t = 0.0;
    std::size_t samples = 0;
    bool pass = false;
};

SelfInversiveReport check_self_inversive(const MCFunction &f, std::span<const double> sample_ts,
                                         double tolerance = 1e-12);

/// Log-spaced points in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

struct NormalizationReport {
    double value_at_one = 0.0;
    double residual = 0.0;  // |f(1) - 1|
    bool pass = false;
};

NormalizationReport check_normalization(const MCFunction &f, double tolerance = 1e-12);

/// A pair A <= B (B - A PSD) for which f(B) - f(A) was tested.
struct MonotonicityCounterexample {
    ComplexMatrix a;
    ComplexMatrix b;
    double min_eigenvalue = 0.0;  // of f(B) - f(A)
};

/// Smallest eigenvalue of f(B) - f(A), with f applied spectrally.
MonotonicityCounterexample evaluate_operator_pair(const MCFunction &f, const ComplexMatrix &a,
                                                  const ComplexMatrix &b);

struct OperatorMonotoneReport {
    std::size_t trials = 0;
    Eigen::Index dim = 0;
    std::optional<MonotonicityCounterexample> counterexample;  // first violation found
    std::size_t violations = 0;

    bool violation_found() const noexcept { return counterexample.has_value(); }
    /// "violation found" or "no violation found in N trials"; never a proof.
    std::string verdict() const;
};

inline constexpr double kOperatorMonotoneTol = 1e-10;

/// Random search for A <= B with f(B) - f(A) having an eigenvalue below
/// -1e-10. A has a log-uniform spectrum in [e^-3, e^3] and a Haar
/// eigenbasis; B = A + P with P a random PSD matrix of random rank.
OperatorMonotoneReport check_operator_monotone(const MCFunction &f, Eigen::Index dim, std::size_t trials, Rng &rng);

/// The pinned pair B = I, A = I/2 in dimension 2.
MonotonicityCounterexample pinned_counterexample(const MCFunction &f);

enum class VolumeKind { Bures, Sjoqvist, Zhsl };

struct VolumeMeasure {
    VolumeKind kind = VolumeKind::Bures;
    double nu = 1.0;  // used for Zhsl only

    std::string name() const;
};

/// Probability density p(r, theta, phi) with respect to dr dtheta dphi.
/// Throws RadiusOutOfDomain for r outside [0, 1).
double volume_density(const VolumeMeasure &m, const BlochState &b);

/// Integral of `volume_density` over the ball: tensor-product Gauss-Legendre
/// with 128 nodes in alpha = arcsin(r) and 64 in theta.
double integrate_volume_density(const VolumeMeasure &m);

struct GeodesicEndpoints {
    double r_a = 1.0;
    double r_b = 1.0;
    double theta_b = 0.0;

    /// Throws InvalidArgument for radii outside [0, 1] or theta_b outside [0, pi].
    void validate() const;
};

/// Bures: sqrt(2 (1 - F)) with F the qubit fidelity of the two endpoints.
/// Sjoqvist: (1/2) sqrt(theta_b^2 + (arcsin r_b - arcsin r_a)^2).
double geodesic_length(MetricKind kind, const GeodesicEndpoints &e);

/// sin(theta_b / 2), half the Fubini-Study distance 2 [1 - cos^2(theta_b/2)]^{1/2}.
double fubini_study_length(double theta_b);

struct CylinderChart {
    double alpha_r = 0.0;  // arcsin(r)
    double theta = 0.0;
    double phi = 0.0;
};

CylinderChart cylinder_chart(const BlochState &b);

/// 4 ds^2 = dalpha^2 + dOmega^2 (Sjoqvist) or dalpha^2 + sin^2(alpha) dOmega^2 (Bures).
double chart_line_element(MetricKind kind, const CylinderChart &c, double dalpha, double dtheta, double dphi);

}  // namespace qgeo

#endif
