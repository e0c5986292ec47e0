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

#ifndef QGEO_MATRIX_CORE_H
#define QGEO_MATRIX_CORE_H

#include <complex>
#include <cstdint>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace qgeo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Seeded random stream. Streams are never shared between workers; use
/// `derive_seed` to split a base seed into independent per-task seeds.
using Rng = std::mt19937_64;

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

/// Largest supported matrix dimension.
inline constexpr Eigen::Index kMaxDim = 64;

struct HermitianEigensystem {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns, unitary, gauge-fixed
};

// Default tolerances shared across modules.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdClampTol = 1e-12;

/// Relative Hermiticity defect ||m - m^dagger||_F / ||m||_F (absolute when
/// m = 0).
double hermiticity_residual(const ComplexMatrix &m);

/// Eigenvalues closer than this are treated as degenerate:
/// 1e-10 * max(1, ||m||_F).
double degeneracy_tolerance(const ComplexMatrix &m);

/// Smallest gap between consecutive entries of an ascending list
/// (infinity for fewer than two entries).
double min_gap(const RealVector &ascending);

/// Fix the phase of every column so its largest-magnitude component is real
/// and positive. Ties go to the lowest row index.
void fix_column_phases(ComplexMatrix &columns);

/// Hermitian eigendecomposition with ascending eigenvalues and
/// gauge-fixed eigenvectors. Throws NotHermitian, NumericalFailure.
HermitianEigensystem eig_hermitian(const ComplexMatrix &m);

/// g(m) = U diag(g(lambda)) U^dagger for Hermitian m.
ComplexMatrix apply_spectral_function(const ComplexMatrix &m, const std::function<double(double)> &g);

/// Principal square root of a PSD Hermitian matrix. Eigenvalues in
/// [-1e-12, 0) are clamped to zero; anything below throws NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);

RealVector singular_values(const ComplexMatrix &m);

/// Sum of singular values, tr sqrt(m m^dagger).
double trace_norm(const ComplexMatrix &m);

/// Unitary factor U of the left polar decomposition m = sqrt(m m^dagger) U.
/// Throws SingularMatrix if the smallest singular value is <= invertibility_tol.
ComplexMatrix polar_unitary(const ComplexMatrix &m, double invertibility_tol = 1e-12);

/// Haar-distributed unitary: complex Ginibre matrix, QR, and a diagonal
/// phase correction from R.
ComplexMatrix haar_unitary(Eigen::Index dim, Rng &rng);

/// ||U^dagger U - I||_F.
double unitarity_residual(const ComplexMatrix &u);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qgeo

#endif
