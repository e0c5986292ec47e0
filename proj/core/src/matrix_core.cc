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

#include "qgeo/matrix_core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qgeo/errors.h"

namespace qgeo {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " requires a non-empty square matrix, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
    }
    if (m.rows() > kMaxDim) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + ": dimension " + std::to_string(m.rows()) + " exceeds supported maximum 64");
    }
}

void require_finite(const ComplexMatrix &m, const char *what) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::NumericalFailure, std::string(what) + ": matrix has non-finite entries");
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    return splitmix64(splitmix64(base_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double hermiticity_residual(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    const double defect = (m - m.adjoint()).norm();
    const double scale = m.norm();
    return scale > 0.0 ? defect / scale : defect;
}

double degeneracy_tolerance(const ComplexMatrix &m) { return 1e-10 * std::max(1.0, m.norm()); }

double min_gap(const RealVector &ascending) {
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < ascending.size(); ++i) {
        gap = std::min(gap, std::abs(ascending(i) - ascending(i - 1)));
    }
    return gap;
}

void fix_column_phases(ComplexMatrix &columns) {
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < columns.rows(); ++i) {
            // Strict comparison with a relative slack keeps the lowest index on ties.
            const double mag = std::abs(columns(i, j));
            if (mag > best * (1.0 + 1e-12) + 1e-300) {
                best = mag;
                pivot = i;
            }
        }
        if (best <= 0.0) {
            continue;
        }
        const Complex phase = std::conj(columns(pivot, j)) / best;
        columns.col(j) *= phase;
        columns(pivot, j) = Complex(std::abs(columns(pivot, j)), 0.0);
    }
}

HermitianEigensystem eig_hermitian(const ComplexMatrix &m) {
    require_square(m, "eig_hermitian");
    require_finite(m, "eig_hermitian");
    const double defect = hermiticity_residual(m);
    if (defect > kHermitianTol) {
        throw Error(ErrorCode::NotHermitian, "relative Hermiticity defect " + std::to_string(defect), defect);
    }
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    }
    HermitianEigensystem out{solver.eigenvalues(), solver.eigenvectors()};
    fix_column_phases(out.eigenvectors);
    return out;
}

ComplexMatrix apply_spectral_function(const ComplexMatrix &m, const std::function<double(double)> &g) {
    const HermitianEigensystem es = eig_hermitian(m);
    RealVector mapped(es.eigenvalues.size());
    for (Eigen::Index i = 0; i < mapped.size(); ++i) {
        mapped(i) = g(es.eigenvalues(i));
    }
    ComplexMatrix out = es.eigenvectors * mapped.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    const HermitianEigensystem es = eig_hermitian(m);
    const double lowest = es.eigenvalues.size() > 0 ? es.eigenvalues(0) : 0.0;
    if (lowest < -kPsdClampTol) {
        throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lowest) + " below -1e-12", -lowest);
    }
    RealVector roots = es.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix out = es.eigenvectors * roots.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

RealVector singular_values(const ComplexMatrix &m) {
    require_finite(m, "singular_values");
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

double trace_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return singular_values(m).sum();
}

ComplexMatrix polar_unitary(const ComplexMatrix &m, double invertibility_tol) {
    require_square(m, "polar_unitary");
    require_finite(m, "polar_unitary");
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector &s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    if (smallest <= invertibility_tol) {
        throw Error(ErrorCode::SingularMatrix,
                    "smallest singular value " + std::to_string(smallest) + " <= " + std::to_string(invertibility_tol),
                    smallest);
    }
    // m = W S X^dagger = (W S W^dagger)(W X^dagger)
    return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix haar_unitary(Eigen::Index dim, Rng &rng) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorCode::InvalidArgument, "haar_unitary: dimension must be in [1, 64]");
    }
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double mag = std::abs(r(j, j));
        const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

double unitarity_residual(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << Complex(0.0, 0.0), Complex(0.0, -1.0), Complex(0.0, 1.0), Complex(0.0, 0.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

}  // namespace qgeo
