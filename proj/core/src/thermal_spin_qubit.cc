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

#include "qgeo/thermal_spin_qubit.h"

#include <cmath>

#include "qgeo/errors.h"

namespace qgeo {

double FieldParams::omega() const { return std::sqrt(omega_x * omega_x + omega_y * omega_y + omega_z * omega_z); }

double FieldParams::half_gap_ratio() const { return 0.5 * beta * hbar * omega(); }

void FieldParams::validate() const {
    if (!std::isfinite(omega_x) || !std::isfinite(omega_y) || !std::isfinite(omega_z)) {
        throw Error(ErrorCode::InvalidArgument, "field components must be finite");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorCode::InvalidArgument, "beta must be finite and positive");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw Error(ErrorCode::InvalidArgument, "hbar must be finite and positive");
    }
}

ComplexMatrix spin_qubit_hamiltonian(const FieldParams &p) {
    p.validate();
    return 0.5 * p.hbar * (p.omega_x * pauli_x() + p.omega_y * pauli_y() + p.omega_z * pauli_z());
}

SpinQubitThermal spin_qubit_thermal(const FieldParams &p) {
    p.validate();
    const double w = p.omega();
    if (w == 0.0) {
        return {DensityOperator::maximally_mixed(2), true};
    }
    const double polarization = -std::tanh(p.half_gap_ratio()) / w;
    const Eigen::Vector3d v = polarization * Eigen::Vector3d(p.omega_x, p.omega_y, p.omega_z);
    return {DensityOperator::validate(bloch_vector_matrix(v)), false};
}

double sech2(double x) {
    const double e = std::exp(-2.0 * std::abs(x));
    const double denom = 1.0 + e;
    return 4.0 * e / (denom * denom);
}

MetricTensor2x2 analytic_metric(const FieldParams &p, MetricKind kind) {
    p.validate();
    MetricTensor2x2 out;
    const double w = p.omega();
    if (w == 0.0) {
        out.zero_field = true;
        return out;
    }
    const double x = p.half_gap_ratio();
    const double prefactor = p.hbar * p.hbar / 16.0 * sech2(x);
    const double transverse = p.omega_x * p.omega_x + p.omega_y * p.omega_y;
    const double cos_z = p.omega_z / w;

    out.g(0, 0) = prefactor * w * w;
    out.g(0, 1) = prefactor * p.beta * p.omega_z;
    out.g(1, 0) = out.g(0, 1);

    // prefactor * (4/hbar^2) * transverse/omega^4 / sech^2 collapses to
    // transverse / (4 omega^4); the Bures term carries an extra tanh^2.
    double nonclassical = transverse / (4.0 * w * w * w * w);
    if (kind == MetricKind::Bures) {
        const double t = std::tanh(x);
        nonclassical *= t * t;
    }
    out.nonclassical_g22 = nonclassical;
    out.g(1, 1) = prefactor * p.beta * p.beta * cos_z * cos_z + nonclassical;
    return out;
}

DegeneracyReport diagnose_degeneracy(const MetricTensor2x2 &m, double relative_tol) {
    DegeneracyReport out;
    const Eigen::Matrix2d sym = 0.5 * (m.g + m.g.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(sym);
    out.eigenvalues = solver.eigenvalues();
    out.determinant = sym(0, 0) * sym(1, 1) - sym(0, 1) * sym(1, 0);
    Eigen::Vector2d dir = solver.eigenvectors().col(1);
    if (dir(0) < 0.0 || (dir(0) == 0.0 && dir(1) < 0.0)) {
        dir = -dir;
    }
    out.principal_direction = dir;
    const double largest = out.eigenvalues(1);
    out.degenerate = !(largest > 0.0) || out.eigenvalues(0) < relative_tol * largest;
    return out;
}

}  // namespace qgeo
