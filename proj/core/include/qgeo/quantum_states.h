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

#ifndef QGEO_QUANTUM_STATES_H
#define QGEO_QUANTUM_STATES_H

#include <vector>

#include <Eigen/Dense>

#include "qgeo/matrix_core.h"

namespace qgeo {

/// Physical constants threaded through Hamiltonian builders. Both default to 1.
struct Units {
    double hbar = 1.0;
    double kb = 1.0;

    double inverse_temperature(double temperature) const;
};

/// A validated density operator: Hermitian, unit trace and PSD, each to 1e-12.
/// Only constructible through `validate`, so holding one is the certificate.
class DensityOperator {
   public:
    /// Throws NotHermitian, TraceNotOne, NotPSD or DimensionMismatch. The
    /// stored matrix is the Hermitian part of `m`.
    static DensityOperator validate(const ComplexMatrix &m);

    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    Eigen::Index dim() const noexcept { return matrix_.rows(); }

    static DensityOperator maximally_mixed(Eigen::Index dim);
    static DensityOperator pure(const ComplexVector &psi);

   private:
    explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
    ComplexMatrix matrix_;
};

/// rho = sum_k p_k |n_k><n_k| with p_k in descending order.
struct SpectralDecomposition {
    RealVector probabilities;
    ComplexMatrix eigenvectors;  // column k is |n_k>
    bool nondegenerate = true;
    double smallest_gap = 0.0;

    Eigen::Index size() const noexcept { return probabilities.size(); }
    ComplexMatrix reconstruct() const;
};

SpectralDecomposition spectral(const DensityOperator &rho);
SpectralDecomposition spectral(const DensityOperator &rho, double degeneracy_tol);

/// One pure-state decomposition {|u_h>} of a density operator.
struct PureStateEnsemble {
    std::vector<ComplexVector> vectors;

    ComplexMatrix density() const;
};

/// |u_h> = sum_k V_hk sqrt(p_k) |n_k>. Throws DimensionMismatch, NotUnitary.
PureStateEnsemble apply_ensemble_freedom(const SpectralDecomposition &s, const ComplexMatrix &v);

/// Columns sqrt(p_k) |n_k> of the spectral ensemble.
ComplexMatrix spectral_ensemble_matrix(const SpectralDecomposition &s);

/// S_kl = sqrt(p_k q_l) <n_k|m_l>. Throws DimensionMismatch.
ComplexMatrix overlap_matrix(const SpectralDecomposition &a, const SpectralDecomposition &b);

/// exp(-beta h) / tr exp(-beta h), evaluated with a softmax shift by the
/// smallest eigenvalue. Throws NotHermitian, InvalidArgument for beta <= 0.
DensityOperator thermal_state(const ComplexMatrix &h, double beta);

/// Bloch-ball coordinates: rho = (I + r n.sigma) / 2 with
/// n = (sin t cos p, sin t sin p, cos t).
struct BlochState {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;

    /// Throws InvalidArgument when a coordinate is out of range.
    void validate() const;
    Eigen::Vector3d vector() const;
    static BlochState from_vector(const Eigen::Vector3d &v);
};

DensityOperator bloch_to_density(const BlochState &b);
BlochState density_to_bloch(const DensityOperator &rho);

/// (I + v.sigma) / 2 for a polarization vector with |v| <= 1.
ComplexMatrix bloch_vector_matrix(const Eigen::Vector3d &v);
Eigen::Vector3d bloch_vector(const ComplexMatrix &rho2);

/// Random state from the product of the uniform simplex measure on the
/// spectrum and the Haar measure on the eigenbasis.
DensityOperator sample_zhsl(Eigen::Index dim, Rng &rng);

/// Uniform point on the probability simplex (Dirichlet(1, ..., 1)).
RealVector sample_simplex(Eigen::Index dim, Rng &rng);

}  // namespace qgeo

#endif
