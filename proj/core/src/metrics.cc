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

#include "qgeo/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "qgeo/errors.h"

namespace qgeo {

namespace {

SpectralDecomposition nondegenerate_spectral(const DensityOperator &rho, const char *what,
                                             std::optional<double> tol = std::nullopt) {
    SpectralDecomposition s = tol ? spectral(rho, *tol) : spectral(rho);
    if (!s.nondegenerate) {
        throw Error(ErrorCode::DegenerateSpectrum,
                    std::string(what) + ": spectral gap " + std::to_string(s.smallest_gap) +
                        " is below the degeneracy tolerance",
                    s.smallest_gap);
    }
    return s;
}

void require_same_dim(const DensityOperator &a, const DensityOperator &b, const char *what) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": states differ in dimension");
    }
}

// Distance ||A - B V||_F^2 minimized over unitaries V. The minimizer comes
// from the SVD of A^dagger B, so the result carries no 2 - 2x cancellation.
double procrustes_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a.adjoint() * b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const ComplexMatrix v = svd.matrixV() * svd.matrixU().adjoint();
    return (a - b * v).squaredNorm();
}

// Spectral data at t + h re-ordered and phase-aligned to the branches at t.
struct AlignedSpectrum {
    RealVector probabilities;
    ComplexMatrix eigenvectors;
};

AlignedSpectrum align_to(const SpectralDecomposition &reference, const SpectralDecomposition &other,
                         bool transport_phases) {
    const BranchMatch match = match_branches(reference.eigenvectors, other.eigenvectors);
    const Eigen::Index n = reference.size();
    AlignedSpectrum out{RealVector(n), ComplexMatrix(other.eigenvectors.rows(), n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index l = match.target[static_cast<std::size_t>(k)];
        out.probabilities(k) = other.probabilities(l);
        ComplexVector col = other.eigenvectors.col(l);
        if (transport_phases) {
            const Complex ov = reference.eigenvectors.col(k).dot(col);
            const double mag = std::abs(ov);
            if (mag > 0.0) {
                col *= std::conj(ov) / mag;
            }
        }
        out.eigenvectors.col(k) = col;
    }
    return out;
}

struct Rates {
    double classical = 0.0;
    double sjoqvist_nc = 0.0;
    double bures_nc = 0.0;
};

Rates line_element_rates(const StateCurve &curve, double t, double h) {
    const SpectralDecomposition s0 = nondegenerate_spectral(curve(t), "line element");
    const SpectralDecomposition sp = nondegenerate_spectral(curve(t + h), "line element");
    const SpectralDecomposition sm = nondegenerate_spectral(curve(t - h), "line element");
    const AlignedSpectrum plus = align_to(s0, sp, true);
    const AlignedSpectrum minus = align_to(s0, sm, true);

    const RealVector dp = (plus.probabilities - minus.probabilities) / (2.0 * h);
    const ComplexMatrix dn = (plus.eigenvectors - minus.eigenvectors) / (2.0 * h);
    // coupling(j, k) = <n_j|dn_k/dt>
    const ComplexMatrix coupling = s0.eigenvectors.adjoint() * dn;
    const RealVector &p = s0.probabilities;

    Rates r;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (p(k) > 0.0) {
            r.classical += 0.25 * dp(k) * dp(k) / p(k);
        }
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            if (j == k) {
                continue;
            }
            const double c2 = std::norm(coupling(j, k));
            r.sjoqvist_nc += p(k) * c2;
            const double s = p(j) + p(k);
            if (s > 0.0) {
                const double d = p(j) - p(k);
                r.bures_nc += 0.5 * d * d / s * c2;
            }
        }
    }
    return r;
}

void check_richardson(double coarse, double fine, double tolerance) {
    const double estimate = std::abs(coarse - fine);
    if (estimate > tolerance * std::abs(fine) + 1e-14) {
        throw Error(ErrorCode::StepTooLarge,
                    "Richardson truncation estimate " + std::to_string(estimate) + " exceeds " +
                        std::to_string(tolerance) + " of the line element " + std::to_string(fine),
                    estimate);
    }
}

double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

LineElement line_element(const StateCurve &curve, double t, double dt, const FiniteDifferenceOptions &options,
                         MetricKind kind) {
    if (!(options.step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
    }
    const Rates coarse = line_element_rates(curve, t, options.step);
    const Rates fine = line_element_rates(curve, t, 0.5 * options.step);
    const double nc_coarse = kind == MetricKind::Sjoqvist ? coarse.sjoqvist_nc : coarse.bures_nc;
    const double nc_fine = kind == MetricKind::Sjoqvist ? fine.sjoqvist_nc : fine.bures_nc;
    check_richardson(coarse.classical + nc_coarse, fine.classical + nc_fine, options.richardson_tolerance);

    LineElement out;
    const double dt2 = dt * dt;
    out.classical = std::max(0.0, richardson(coarse.classical, fine.classical)) * dt2;
    out.nonclassical = std::max(0.0, richardson(nc_coarse, nc_fine)) * dt2;
    out.total = out.classical + out.nonclassical;
    return out;
}

}  // namespace

const char *metric_kind_name(MetricKind kind) { return kind == MetricKind::Sjoqvist ? "sjoqvist" : "bures"; }

BranchMatch match_branches(const ComplexMatrix &from, const ComplexMatrix &to, double min_overlap) {
    if (from.rows() != to.rows() || from.cols() != to.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "match_branches: eigenframes differ in shape");
    }
    const Eigen::MatrixXd mag = (from.adjoint() * to).cwiseAbs();
    const Eigen::Index n = mag.rows();

    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    pairs.reserve(static_cast<std::size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [&](const auto &x, const auto &y) { return mag(x.first, x.second) > mag(y.first, y.second); });

    BranchMatch out;
    out.target.assign(static_cast<std::size_t>(n), -1);
    out.overlaps.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    Eigen::Index assigned = 0;
    for (const auto &[i, j] : pairs) {
        if (assigned == n) {
            break;
        }
        if (out.target[static_cast<std::size_t>(i)] >= 0 || used[static_cast<std::size_t>(j)]) {
            continue;
        }
        out.target[static_cast<std::size_t>(i)] = j;
        out.overlaps[static_cast<std::size_t>(i)] = mag(i, j);
        used[static_cast<std::size_t>(j)] = true;
        ++assigned;
    }
    out.min_overlap = n > 0 ? *std::min_element(out.overlaps.begin(), out.overlaps.end()) : 1.0;
    if (out.min_overlap < min_overlap) {
        throw Error(ErrorCode::AmbiguousBranchMatching,
                    "weakest matched eigenvector overlap " + std::to_string(out.min_overlap) + " < " +
                        std::to_string(min_overlap),
                    out.min_overlap);
    }
    return out;
}

namespace {

double sjoqvist_distance_impl(const DensityOperator &a, const DensityOperator &b, std::optional<double> tol) {
    require_same_dim(a, b, "sjoqvist_distance");
    if (a.matrix() == b.matrix()) {
        return 0.0;
    }
    const SpectralDecomposition sa = nondegenerate_spectral(a, "sjoqvist_distance", tol);
    const SpectralDecomposition sb = nondegenerate_spectral(b, "sjoqvist_distance", tol);
    const BranchMatch match = match_branches(sa.eigenvectors, sb.eigenvectors);
    const ComplexMatrix overlap = sa.eigenvectors.adjoint() * sb.eigenvectors;

    // Each branch contributes p + q - 2 sqrt(pq) c with c = |<n|m>|, rewritten
    // as (sqrt p - sqrt q)^2 + 2 sqrt(pq) (1 - c^2) / (1 + c), where
    // 1 - c^2 is the weight of m outside n in the complete basis {n_j}.
    double d2 = 0.0;
    for (Eigen::Index k = 0; k < sa.size(); ++k) {
        const Eigen::Index l = match.target[static_cast<std::size_t>(k)];
        const double p = sa.probabilities(k);
        const double q = sb.probabilities(l);
        const double c = std::min(1.0, std::abs(overlap(k, l)));
        double leak = 0.0;
        for (Eigen::Index j = 0; j < sa.size(); ++j) {
            if (j != k) {
                leak += std::norm(overlap(j, l));
            }
        }
        const double root_diff = std::sqrt(p) - std::sqrt(q);
        d2 += root_diff * root_diff + 2.0 * std::sqrt(p * q) * leak / (1.0 + c);
    }
    return std::clamp(d2, 0.0, 4.0);
}

}  // namespace

double sjoqvist_distance(const DensityOperator &a, const DensityOperator &b) {
    return sjoqvist_distance_impl(a, b, std::nullopt);
}

double sjoqvist_distance(const DensityOperator &a, const DensityOperator &b, double degeneracy_tol) {
    return sjoqvist_distance_impl(a, b, degeneracy_tol);
}

double generalized_sjoqvist_distance(const DensityOperator &a, const DensityOperator &b) {
    require_same_dim(a, b, "generalized_sjoqvist_distance");
    if (a.matrix() == b.matrix()) {
        return 0.0;
    }
    const ComplexMatrix psi_a = spectral_ensemble_matrix(spectral(a));
    const ComplexMatrix psi_b = spectral_ensemble_matrix(spectral(b));
    return std::max(0.0, procrustes_distance(psi_a, psi_b));
}

double fidelity(const DensityOperator &a, const DensityOperator &b) {
    require_same_dim(a, b, "fidelity");
    if (a.matrix() == b.matrix()) {
        return 1.0;
    }
    const double f = trace_norm(psd_sqrt(a.matrix()) * psd_sqrt(b.matrix()));
    return std::clamp(f, 0.0, 1.0);
}

double bures_distance(const DensityOperator &a, const DensityOperator &b) {
    require_same_dim(a, b, "bures_distance");
    if (a.matrix() == b.matrix()) {
        return 0.0;
    }
    const double d2 = procrustes_distance(psd_sqrt(a.matrix()), psd_sqrt(b.matrix()));
    return std::clamp(d2, 0.0, 2.0);
}

double bures_angle(const DensityOperator &a, const DensityOperator &b) {
    // arccos F = 2 arcsin(D / 2) for unit-trace states; the arcsin form keeps
    // precision when F is close to 1.
    const double d = std::sqrt(bures_distance(a, b));
    return 2.0 * std::asin(std::min(1.0, 0.5 * d));
}

double fubini_study_distance(const ComplexVector &psi, const ComplexVector &phi) {
    if (psi.size() != phi.size()) {
        throw Error(ErrorCode::DimensionMismatch, "fubini_study_distance: vectors differ in dimension");
    }
    const ComplexVector u = psi.normalized();
    const ComplexVector v = phi.normalized();
    const ComplexVector perp = v - u * u.dot(v);
    return 2.0 * std::min(1.0, perp.norm());
}

LineElement sjoqvist_line_element(const StateCurve &curve, double t, double dt, const FiniteDifferenceOptions &options) {
    return line_element(curve, t, dt, options, MetricKind::Sjoqvist);
}

LineElement bures_line_element(const StateCurve &curve, double t, double dt, const FiniteDifferenceOptions &options) {
    return line_element(curve, t, dt, options, MetricKind::Bures);
}

double fubini_study_line_element(const PureCurve &curve, double t, double dt, const FiniteDifferenceOptions &options) {
    auto rate = [&](double h) {
        const ComplexVector psi = curve(t).normalized();
        auto aligned = [&](double s) {
            ComplexVector v = curve(s).normalized();
            const Complex ov = psi.dot(v);
            if (std::abs(ov) > 0.0) {
                v *= std::conj(ov) / std::abs(ov);
            }
            return v;
        };
        const ComplexVector dpsi = (aligned(t + h) - aligned(t - h)) / (2.0 * h);
        return std::max(0.0, dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
    };
    const double coarse = rate(options.step);
    const double fine = rate(0.5 * options.step);
    check_richardson(coarse, fine, options.richardson_tolerance);
    return std::max(0.0, richardson(coarse, fine)) * dt * dt;
}

void HamiltonianPerturbation::validate() const {
    if (h.rows() != h.cols() || dh.rows() != dh.cols() || h.rows() != dh.rows() || h.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "H and dH must be square matrices of equal dimension");
    }
    const double hr = hermiticity_residual(h);
    if (hr > kHermitianTol) {
        throw Error(ErrorCode::NotHermitian, "H is not Hermitian", hr);
    }
    const double dr = hermiticity_residual(dh);
    if (dr > kHermitianTol) {
        throw Error(ErrorCode::NotHermitian, "dH is not Hermitian", dr);
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorCode::InvalidArgument, "beta must be finite and positive");
    }
}

namespace {

HermitianEigensystem nondegenerate_eig(const ComplexMatrix &h, const char *what) {
    HermitianEigensystem es = eig_hermitian(h);
    const double gap = min_gap(es.eigenvalues);
    if (!(gap > degeneracy_tolerance(h))) {
        throw Error(ErrorCode::DegenerateSpectrum,
                    std::string(what) + ": Hamiltonian level spacing " + std::to_string(gap) +
                        " is below the degeneracy tolerance",
                    gap);
    }
    return es;
}

}  // namespace

double thermal_nonclassical(const HamiltonianPerturbation &p, MetricKind kind) {
    p.validate();
    const HermitianEigensystem es = nondegenerate_eig(p.h, "thermal_nonclassical");
    const RealVector &e = es.eigenvalues;
    const ComplexMatrix dh = es.eigenvectors.adjoint() * p.dh * es.eigenvectors;
    // Boltzmann weights shifted by the ground energy; Z uses the same shift.
    const RealVector w = (-p.beta * (e.array() - e(0))).exp().matrix();
    const double z = w.sum();

    double total = 0.0;
    for (Eigen::Index n = 0; n < e.size(); ++n) {
        for (Eigen::Index k = 0; k < e.size(); ++k) {
            if (n == k) {
                continue;
            }
            const double sum = w(n) + w(k);
            double term = sum / (2.0 * z) * std::norm(dh(n, k) / (e(n) - e(k)));
            if (kind == MetricKind::Bures) {
                const double contrast = (w(n) - w(k)) / sum;
                term *= contrast * contrast;
            }
            total += term;
        }
    }
    return total;
}

PerturbationReport eigvec_perturbation_check(const HamiltonianPerturbation &p, double step) {
    p.validate();
    if (!(step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "perturbation step must be positive");
    }
    const HermitianEigensystem es0 = nondegenerate_eig(p.h, "eigvec_perturbation_check");
    const HermitianEigensystem esp = eig_hermitian(p.h + step * p.dh);
    const HermitianEigensystem esm = eig_hermitian(p.h - step * p.dh);

    auto as_spectral = [](const HermitianEigensystem &es) {
        SpectralDecomposition s;
        s.probabilities = es.eigenvalues;
        s.eigenvectors = es.eigenvectors;
        return s;
    };
    const SpectralDecomposition s0 = as_spectral(es0);
    const AlignedSpectrum plus = align_to(s0, as_spectral(esp), true);
    const AlignedSpectrum minus = align_to(s0, as_spectral(esm), true);
    const ComplexMatrix coupling = es0.eigenvectors.adjoint() * (plus.eigenvectors - minus.eigenvectors) / (2.0 * step);
    const ComplexMatrix dh = es0.eigenvectors.adjoint() * p.dh * es0.eigenvectors;

    const Eigen::Index n = es0.eigenvalues.size();
    PerturbationReport out;
    out.step = step;
    out.finite_difference = Eigen::MatrixXd::Zero(n, n);
    out.first_order = Eigen::MatrixXd::Zero(n, n);
    double scale = 0.0;
    for (Eigen::Index col = 0; col < n; ++col) {
        for (Eigen::Index row = 0; row < n; ++row) {
            if (row == col) {
                continue;
            }
            out.finite_difference(row, col) = std::abs(coupling(row, col));
            out.first_order(row, col) =
                std::abs(dh(row, col)) / std::abs(es0.eigenvalues(col) - es0.eigenvalues(row));
            out.max_abs_deviation =
                std::max(out.max_abs_deviation, std::abs(out.finite_difference(row, col) - out.first_order(row, col)));
            scale = std::max(scale, out.first_order(row, col));
        }
    }
    out.max_relative_deviation = scale > 0.0 ? out.max_abs_deviation / scale : out.max_abs_deviation;
    return out;
}

double TransportReport::max_residual() const {
    double m = mixed_residual;
    for (double r : branch_residuals) {
        m = std::max(m, r);
    }
    return m;
}

TransportReport parallel_transport_residuals(const StateCurve &curve, double t, double dt) {
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "transport step must be positive");
    }
    const DensityOperator rho0 = curve(t);
    const SpectralDecomposition s0 = nondegenerate_spectral(rho0, "parallel_transport_residuals");
    // Frames at t +- dt keep the fixed eigensolver gauge; only the branch
    // order is aligned.
    const AlignedSpectrum plus =
        align_to(s0, nondegenerate_spectral(curve(t + dt), "parallel_transport_residuals"), false);
    const AlignedSpectrum minus =
        align_to(s0, nondegenerate_spectral(curve(t - dt), "parallel_transport_residuals"), false);

    const Eigen::Index n = s0.size();
    const ComplexMatrix dn = (plus.eigenvectors - minus.eigenvectors) / (2.0 * dt);
    ComplexMatrix transported_plus = plus.eigenvectors;
    ComplexMatrix transported_minus = minus.eigenvectors;

    TransportReport out;
    out.branch_residuals.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        const ComplexVector nk = s0.eigenvectors.col(k);
        const double connection = nk.dot(dn.col(k)).imag();
        const double phase_plus = std::arg(nk.dot(plus.eigenvectors.col(k)));
        const double phase_minus = std::arg(nk.dot(minus.eigenvectors.col(k)));
        transported_plus.col(k) *= std::polar(1.0, -phase_plus);
        transported_minus.col(k) *= std::polar(1.0, -phase_minus);
        // f(t + dt) = -phase_plus, f(t - dt) = -phase_minus, f(t) = 0.
        const double phase_rate = (-phase_plus + phase_minus) / (2.0 * dt);
        out.branch_residuals[static_cast<std::size_t>(k)] = std::abs(connection + phase_rate);
    }
    const ComplexMatrix frame_rate = (transported_plus - transported_minus) / (2.0 * dt);
    out.mixed_residual = std::abs((rho0.matrix() * frame_rate * s0.eigenvectors.adjoint()).trace());
    return out;
}

}  // namespace qgeo
