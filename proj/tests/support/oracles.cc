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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace qgeo_test {

CMat eigen_sqrt(const CMat &m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

double literal_fidelity(const CMat &a, const CMat &b) {
    const CMat ra = eigen_sqrt(a);
    const CMat inner = ra * b * ra;
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (inner + inner.adjoint()));
    double f = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        f += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    }
    return f;
}

double qubit_fidelity(const Eigen::Vector3d &a, const Eigen::Vector3d &b) {
    const double mixed = std::sqrt(std::max(0.0, (1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm())));
    return std::sqrt(0.5 * (1.0 + a.dot(b)) + 0.5 * mixed);
}

Spectrum descending_spectrum(const CMat &rho) {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    const Eigen::Index n = rho.rows();
    Spectrum s{Eigen::VectorXd(n), CMat(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        s.p(k) = std::max(0.0, es.eigenvalues()(n - 1 - k));
        s.n.col(k) = es.eigenvectors().col(n - 1 - k);
    }
    return s;
}

double literal_sjoqvist(const Spectrum &a, const Spectrum &b, const std::vector<int> &perm) {
    double sum = 0.0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        const Eigen::Index l = perm[k];
        sum += std::sqrt(a.p(kk) * b.p(l)) * std::abs(a.n.col(kk).dot(b.n.col(l)));
    }
    return 2.0 - 2.0 * sum;
}

double min_over_labellings_sjoqvist(const CMat &a, const CMat &b) {
    const Spectrum sa = descending_spectrum(a);
    const Spectrum sb = descending_spectrum(b);
    std::vector<int> perm(static_cast<std::size_t>(a.rows()));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        best = std::min(best, literal_sjoqvist(sa, sb, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<int> best_matching(const Spectrum &a, const Spectrum &b) {
    std::vector<int> perm(static_cast<std::size_t>(a.p.size()));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_score = -1.0;
    do {
        double score = 1.0;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            score *= std::abs(a.n.col(static_cast<Eigen::Index>(k)).dot(b.n.col(perm[k])));
        }
        if (score > best_score) {
            best_score = score;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

CMat expm_thermal(const CMat &h, double beta) {
    const CMat e = (-beta * h).exp();
    return e / e.trace();
}

Eigen::Matrix2d fd_hessian(const Distance2 &d2, const Eigen::Vector2d &x, double h) {
    auto at_step = [&](double s) {
        Eigen::Matrix2d g;
        for (int i = 0; i < 2; ++i) {
            const Eigen::Vector2d e = s * Eigen::Vector2d::Unit(i);
            g(i, i) = d2(x - e, x + e) / (4.0 * s * s);
        }
        const Eigen::Vector2d diag(s, s);
        const Eigen::Vector2d anti(s, -s);
        g(0, 1) = (d2(x - diag, x + diag) - d2(x - anti, x + anti)) / (16.0 * s * s);
        g(1, 0) = g(0, 1);
        return g;
    };
    const Eigen::Matrix2d coarse = at_step(h);
    const Eigen::Matrix2d fine = at_step(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

CMat thermal_qubit(double wx, double wy, double wz, double beta, double hbar) {
    const double w = std::sqrt(wx * wx + wy * wy + wz * wz);
    const double t = std::tanh(0.5 * beta * hbar * w);
    const Cd i(0.0, 1.0);
    CMat rho(2, 2);
    rho(0, 0) = 0.5 * (1.0 - t * wz / w);
    rho(1, 1) = 0.5 * (1.0 + t * wz / w);
    rho(0, 1) = -0.5 * t * (wx - i * wy) / w;
    rho(1, 0) = -0.5 * t * (wx + i * wy) / w;
    return rho;
}

CMat random_hermitian(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMat g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = Cd(n(rng), n(rng));
        }
    }
    return 0.5 * (g + g.adjoint());
}

std::vector<CMat> amplitude_damping(double gamma) {
    CMat k0 = CMat::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    CMat k1 = CMat::Zero(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    return {k0, k1};
}

}  // namespace qgeo_test
