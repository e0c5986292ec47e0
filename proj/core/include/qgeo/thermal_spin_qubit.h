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

// Spin-1/2 in a static field, H = (hbar/2) omega.sigma, held at inverse
// temperature beta. Closed-form metric tensors over the chart (beta, omega_z)
// with omega_x and omega_y held fixed.

#ifndef QGEO_THERMAL_SPIN_QUBIT_H
#define QGEO_THERMAL_SPIN_QUBIT_H

#include <array>
#include <string>

#include <Eigen/Dense>

#include "qgeo/matrix_core.h"
#include "qgeo/metrics.h"
#include "qgeo/quantum_states.h"

namespace qgeo {

struct FieldParams {
    double omega_x = 0.0;
    double omega_y = 0.0;
    double omega_z = 0.0;
    double beta = 1.0;
    double hbar = 1.0;

    double omega() const;
    /// beta hbar omega / 2
    double half_gap_ratio() const;
    /// Throws InvalidArgument on non-finite entries or beta, hbar <= 0.
    void validate() const;
};

ComplexMatrix spin_qubit_hamiltonian(const FieldParams &p);

struct SpinQubitThermal {
    DensityOperator state;
    bool zero_field = false;  // omega == 0: the state is I/2
};

/// (1/2)[I - tanh(beta hbar omega / 2) omega.sigma / omega].
SpinQubitThermal spin_qubit_thermal(const FieldParams &p);

/// 1 - tanh^2(x), evaluated as 4 e^{-2|x|} / (1 + e^{-2|x|})^2.
double sech2(double x);

struct MetricTensor2x2 {
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    std::array<std::string, 2> coords{"beta", "omega_z"};
    double nonclassical_g22 = 0.0;
    bool zero_field = false;
};

MetricTensor2x2 analytic_metric(const FieldParams &p, MetricKind kind);

struct DegeneracyReport {
    Eigen::Vector2d eigenvalues = Eigen::Vector2d::Zero();  // ascending
    double determinant = 0.0;
    Eigen::Vector2d principal_direction = Eigen::Vector2d::Zero();
    bool degenerate = false;
};

/// Flags the tensor degenerate when its smallest eigenvalue is below
/// `relative_tol` times its largest (or both vanish).
DegeneracyReport diagnose_degeneracy(const MetricTensor2x2 &m, double relative_tol = 1e-12);

}  // namespace qgeo

#endif
