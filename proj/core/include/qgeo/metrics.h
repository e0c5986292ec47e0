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

// Finite distances and infinitesimal line elements between density
// operators: the interferometric (Sjoqvist) distance with per-branch phase
// minimization, its ensemble-minimized generalization, Bures/fidelity
// quantities, and Fubini-Study reductions for pure states.
//
// Conventions: every "distance" returned here is a squared distance (d^2),
// except `bures_angle`, `fidelity` and `fubini_study_distance`. Line
// elements are squared lengths for a parameter displacement `dt`.

#ifndef QGEO_METRICS_H
#define QGEO_METRICS_H

#include <functional>
#include <vector>

#include "qgeo/matrix_core.h"
#include "qgeo/quantum_states.h"

namespace qgeo {

enum class MetricKind { Sjoqvist, Bures };

const char *metric_kind_name(MetricKind kind);

/// Assignment of the eigenbranches of one spectrum to those of a
/// neighbouring spectrum.
struct BranchMatch {
    std::vector<Eigen::Index> target;  // branch k of `from` -> column target[k] of `to`
    std::vector<double> overlaps;      // |<n_k|m_target[k]>|
    double min_overlap = 1.0;
};

/// Greedy assignment on |<from_k|to_l>|, largest overlaps first. Throws
/// AmbiguousBranchMatching if any chosen overlap is below `min_overlap`.
BranchMatch match_branches(const ComplexMatrix &from, const ComplexMatrix &to, double min_overlap = 0.5);

/// d^2 = 2 - 2 sum_k sqrt(p_k q_k) |<n_k|m_k>| with branches matched by
/// eigenvector overlap. Evaluated in a cancellation-free form.
/// Identical inputs return 0 even when degenerate, since any common labelling
/// of their branches gives zero distance.
/// Throws DegenerateSpectrum, AmbiguousBranchMatching, DimensionMismatch.
double sjoqvist_distance(const DensityOperator &a, const DensityOperator &b);
/// As above with an explicit spectral degeneracy tolerance.
double sjoqvist_distance(const DensityOperator &a, const DensityOperator &b, double degeneracy_tol);

/// 2 - 2 tr|S| with S the spectral overlap matrix; the minimum of the
/// phase-dressed ensemble distance over all ensemble unitaries.
double generalized_sjoqvist_distance(const DensityOperator &a, const DensityOperator &b);

/// tr sqrt(sqrt(b) a sqrt(b)), symmetric in (a, b).
double fidelity(const DensityOperator &a, const DensityOperator &b);

/// D^2 = 2 - 2 F, computed as ||sqrt(a) - sqrt(b) V||_F^2 at the optimal V.
double bures_distance(const DensityOperator &a, const DensityOperator &b);

/// arccos F in [0, pi/2].
double bures_angle(const DensityOperator &a, const DensityOperator &b);

/// 2 sqrt(1 - |<psi|phi>|^2) for normalized pure states.
double fubini_study_distance(const ComplexVector &psi, const ComplexVector &phi);

/// Squared line element split into its commuting (Fisher-Rao) part and the
/// part coming from the rotation of the eigenbasis.
struct LineElement {
    double classical = 0.0;
    double nonclassical = 0.0;
    double total = 0.0;
};

using StateCurve = std::function<DensityOperator(double)>;
using PureCurve = std::function<ComplexVector(double)>;

struct FiniteDifferenceOptions {
    double step = 1e-5;
    /// Richardson truncation estimate above this fraction of the total
    /// raises StepTooLarge.
    double richardson_tolerance = 1e-6;
};

/// Sjoqvist line element at `t` for displacement `dt`:
/// classical = (1/4) sum dp_k^2 / p_k, nonclassical = sum p_k <dn_k|(1 - P_k)|dn_k>,
/// with eigenvector derivatives taken by central differences in the
/// parallel-transport gauge. Throws DegenerateSpectrum, StepTooLarge.
LineElement sjoqvist_line_element(const StateCurve &curve, double t, double dt,
                                  const FiniteDifferenceOptions &options = {});

/// Bures line element: same classical term; nonclassical
/// (1/2) sum_{n != k} (p_n - p_k)^2 / (p_n + p_k) |<n|dk>|^2.
LineElement bures_line_element(const StateCurve &curve, double t, double dt,
                               const FiniteDifferenceOptions &options = {});

/// <dpsi|(1 - |psi><psi|)|dpsi> for a pure-state curve.
double fubini_study_line_element(const PureCurve &curve, double t, double dt,
                                 const FiniteDifferenceOptions &options = {});

/// A thermal state exp(-beta H)/Z perturbed by dH at fixed beta.
struct HamiltonianPerturbation {
    ComplexMatrix h;
    ComplexMatrix dh;
    double beta = 1.0;

    /// Throws NotHermitian, DimensionMismatch, InvalidArgument.
    void validate() const;
};

/// Nonclassical part of the thermal line element from the spectrum of H:
///   sjoqvist: sum_{n != k} (w_n + w_k)/(2Z) |<n|dH|k> / (E_n - E_k)|^2
///   bures:    the same with an extra ((w_n - w_k)/(w_n + w_k))^2
/// where w_n = exp(-beta E_n). Throws DegenerateSpectrum.
double thermal_nonclassical(const HamiltonianPerturbation &p, MetricKind kind);

struct PerturbationReport {
    Eigen::MatrixXd finite_difference;  // |<k|dn>| from eigenvectors of H + s dH
    Eigen::MatrixXd first_order;        // |<k|dH|n> / (E_n - E_k)|
    double max_abs_deviation = 0.0;
    double max_relative_deviation = 0.0;
    double step = 0.0;
};

/// Compares central-difference eigenvector differentials of H + s dH at s = 0
/// against first-order perturbation theory (off-diagonal entries only).
PerturbationReport eigvec_perturbation_check(const HamiltonianPerturbation &p, double step = 1e-5);

struct TransportReport {
    /// |Im<n_k|dn_k/dt> + df_k/dt| where f_k is the phase accumulated by the
    /// discrete transport that keeps <psi_k(t)|psi_k(t +- dt)> real positive.
    std::vector<double> branch_residuals;
    /// |tr[rho dV/dt V^dagger]| for the transported frame V = [psi_1 ... psi_N].
    double mixed_residual = 0.0;

    double max_residual() const;
};

/// Throws DegenerateSpectrum.
TransportReport parallel_transport_residuals(const StateCurve &curve, double t, double dt);

}  // namespace qgeo

#endif
