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

#include "qgeo/quantum_states.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qgeo/errors.h"

namespace qgeo {

double Units::inverse_temperature(double temperature) const {
    if (!(temperature > 0.0) || !(kb > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "temperature and k_B must be positive");
    }
    return 1.0 / (kb * temperature);
}

DensityOperator DensityOperator::validate(const ComplexMatrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "density operator must be a non-empty square matrix");
    }
    if (m.rows() > kMaxDim) {
        throw Error(ErrorCode::InvalidArgument, "density operator dimension exceeds 64");
    }
    if (!m.allFinite()) {
        throw Error(ErrorCode::NumericalFailure, "density operator has non-finite entries");
    }
    const double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > kHermitianTol) {
        throw Error(ErrorCode::NotHermitian, "max |m - m^dagger| = " + std::to_string(herm_defect), herm_defect);
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    const double trace_defect = std::abs(h.trace() - Complex(1.0, 0.0));
    if (trace_defect > 1e-12) {
        throw Error(ErrorCode::TraceNotOne, "|tr(rho) - 1| = " + std::to_string(trace_defect), trace_defect);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "eigensolver failed during validation");
    }
    const double lowest = solver.eigenvalues()(0);
    if (lowest < -kPsdClampTol) {
        throw Error(ErrorCode::NotPSD, "smallest eigenvalue " + std::to_string(lowest), -lowest);
    }
    return DensityOperator(std::move(h));
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
    return validate(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::pure(const ComplexVector &psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "pure state vector must be nonzero");
    }
    const ComplexVector u = psi / n;
    return validate(u * u.adjoint());
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * probabilities.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition spectral(const DensityOperator &rho) {
    return spectral(rho, degeneracy_tolerance(rho.matrix()));
}

SpectralDecomposition spectral(const DensityOperator &rho, double degeneracy_tol) {
    const HermitianEigensystem es = eig_hermitian(rho.matrix());
    const Eigen::Index n = es.eigenvalues.size();
    SpectralDecomposition out;
    out.probabilities.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        // Reverse to descending order; clamp rounding noise below zero.
        out.probabilities(k) = std::max(0.0, es.eigenvalues(n - 1 - k));
        out.eigenvectors.col(k) = es.eigenvectors.col(n - 1 - k);
    }
    out.smallest_gap = min_gap(es.eigenvalues);
    out.nondegenerate = out.smallest_gap > degeneracy_tol;
    return out;
}

ComplexMatrix PureStateEnsemble::density() const {
    if (vectors.empty()) {
        return ComplexMatrix();
    }
    const Eigen::Index d = vectors.front().size();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (const ComplexVector &u : vectors) {
        rho += u * u.adjoint();
    }
    return rho;
}

ComplexMatrix spectral_ensemble_matrix(const SpectralDecomposition &s) {
    return s.eigenvectors * s.probabilities.cwiseSqrt().cast<Complex>().asDiagonal();
}

PureStateEnsemble apply_ensemble_freedom(const SpectralDecomposition &s, const ComplexMatrix &v) {
    const Eigen::Index n = s.size();
    if (v.rows() != n || v.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "ensemble unitary must be " + std::to_string(n) + "x" +
                                                      std::to_string(n));
    }
    const double defect = unitarity_residual(v);
    if (defect > 1e-10) {
        throw Error(ErrorCode::NotUnitary, "||V^dagger V - I||_F = " + std::to_string(defect), defect);
    }
    // Column h of (sqrt(p)-weighted eigenvectors) * V^T is sum_k V_hk sqrt(p_k) |n_k>.
    const ComplexMatrix u = spectral_ensemble_matrix(s) * v.transpose();
    PureStateEnsemble out;
    out.vectors.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index h = 0; h < n; ++h) {
        out.vectors.emplace_back(u.col(h));
    }
    return out;
}

ComplexMatrix overlap_matrix(const SpectralDecomposition &a, const SpectralDecomposition &b) {
    if (a.size() != b.size() || a.eigenvectors.rows() != b.eigenvectors.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "overlap_matrix: spectral decompositions differ in dimension");
    }
    return spectral_ensemble_matrix(a).adjoint() * spectral_ensemble_matrix(b);
}

DensityOperator thermal_state(const ComplexMatrix &h, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorCode::InvalidArgument, "beta must be finite and positive");
    }
    const HermitianEigensystem es = eig_hermitian(h);
    const double e_min = es.eigenvalues(0);
    RealVector weights = (-beta * (es.eigenvalues.array() - e_min)).exp().matrix();
    weights /= weights.sum();
    ComplexMatrix rho = es.eigenvectors * weights.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
    return DensityOperator::validate(0.5 * (rho + rho.adjoint()));
}

void BlochState::validate() const {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "Bloch radius must lie in [0, 1]");
    }
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw Error(ErrorCode::InvalidArgument, "Bloch polar angle must lie in [0, pi]");
    }
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
        throw Error(ErrorCode::InvalidArgument, "Bloch azimuth must lie in [0, 2 pi)");
    }
}

Eigen::Vector3d BlochState::vector() const {
    return r * Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

BlochState BlochState::from_vector(const Eigen::Vector3d &v) {
    BlochState b;
    b.r = v.norm();
    if (b.r == 0.0) {
        return b;
    }
    b.theta = std::acos(std::clamp(v.z() / b.r, -1.0, 1.0));
    double phi = std::atan2(v.y(), v.x());
    if (phi < 0.0) {
        phi += 2.0 * std::numbers::pi;
    }
    if (phi >= 2.0 * std::numbers::pi) {
        phi = 0.0;
    }
    b.phi = phi;
    return b;
}

ComplexMatrix bloch_vector_matrix(const Eigen::Vector3d &v) {
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + v.z());
    m(1, 1) = 0.5 * (1.0 - v.z());
    m(0, 1) = 0.5 * Complex(v.x(), -v.y());
    m(1, 0) = 0.5 * Complex(v.x(), v.y());
    return m;
}

Eigen::Vector3d bloch_vector(const ComplexMatrix &rho2) {
    if (rho2.rows() != 2 || rho2.cols() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "Bloch coordinates require a 2x2 state");
    }
    return Eigen::Vector3d(2.0 * rho2(1, 0).real(), 2.0 * rho2(1, 0).imag(), (rho2(0, 0) - rho2(1, 1)).real());
}

DensityOperator bloch_to_density(const BlochState &b) {
    b.validate();
    return DensityOperator::validate(bloch_vector_matrix(b.vector()));
}

BlochState density_to_bloch(const DensityOperator &rho) {
    if (rho.dim() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "Bloch coordinates require a 2x2 state");
    }
    BlochState b = BlochState::from_vector(bloch_vector(rho.matrix()));
    b.r = std::min(b.r, 1.0);
    return b;
}

RealVector sample_simplex(Eigen::Index dim, Rng &rng) {
    std::exponential_distribution<double> expo(1.0);
    RealVector d(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        d(i) = expo(rng);
    }
    return d / d.sum();
}

DensityOperator sample_zhsl(Eigen::Index dim, Rng &rng) {
    if (dim < 2 || dim > kMaxDim) {
        throw Error(ErrorCode::InvalidArgument, "sample_zhsl: dimension must be in [2, 64]");
    }
    const RealVector d = sample_simplex(dim, rng);
    const ComplexMatrix u = haar_unitary(dim, rng);
    ComplexMatrix rho = u * d.cast<Complex>().asDiagonal() * u.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return DensityOperator::validate(rho);
}

}  // namespace qgeo
