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

#include "qgeo/bloch_geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "qgeo/errors.h"

namespace qgeo {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_argument(double t, const char *what) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw Error(ErrorCode::DomainError, std::string(what) + ": argument must be finite and > 0");
    }
}

// Integral over the unit ball of a density given per (r, 1 - r^2, theta),
// with the azimuth integrated analytically. r = sin(alpha) removes the
// 1/sqrt(1 - r^2) endpoint singularity: dr = cos(alpha) dalpha. 1 - r^2 is
// passed as cos^2(alpha) to avoid cancellation near the boundary.
template <typename Density>
double integrate_ball(Density density) {
    using boost::math::quadrature::gauss;
    return 2.0 * kPi * gauss<double, 128>::integrate(
                           [&](double alpha) {
                               const double r = std::sin(alpha);
                               const double jac = std::cos(alpha);
                               return jac * gauss<double, 64>::integrate(
                                                [&](double theta) { return density(r, jac * jac, theta); }, 0.0, kPi);
                           },
                           0.0, 0.5 * kPi);
}

double zhsl_shape(double one_minus_r2, double theta, double nu) {
    return std::pow(one_minus_r2, nu - 1.0) * std::sin(theta);
}

double zhsl_prefactor(double nu) {
    // N(nu) * 2 pi^{3/2} Gamma(nu) / Gamma(1/2 + nu); unity when the
    // quadrature normalization matches the Gamma-function closed form.
    return zhsl_normalization(nu) * 2.0 * std::pow(kPi, 1.5) * std::tgamma(nu) / std::tgamma(0.5 + nu);
}

double zhsl_value(double t, double nu, double prefactor) {
    require_positive_argument(t, "f_zhsl");
    const double one_plus = 1.0 + t;
    const double base = 0.5 * (1.0 - t) * (1.0 - t) / one_plus;
    return prefactor * base * std::pow(4.0 * t / (one_plus * one_plus), 0.5 - nu);
}

void require_nu(double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw Error(ErrorCode::InvalidArgument, "ZHSL concentration nu must be finite and > 0");
    }
}

}  // namespace

double f_bures(double t) {
    require_positive_argument(t, "f_bures");
    return 0.5 * (1.0 + t);
}

double f_sjoqvist(double t) {
    require_positive_argument(t, "f_sjoqvist");
    return 0.5 * (1.0 - t) * (1.0 - t) / (1.0 + t);
}

double f_zhsl(double t, double nu) {
    require_nu(nu);
    return zhsl_value(t, nu, zhsl_prefactor(nu));
}

double zhsl_normalization(double nu) {
    require_nu(nu);
    return 1.0 / integrate_ball([nu](double, double one_minus_r2, double theta) { return zhsl_shape(one_minus_r2, theta, nu); });
}

MCFunction::MCFunction(std::string name, std::function<double(double)> fn, std::optional<double> nu)
    : name_(std::move(name)), fn_(std::move(fn)), nu_(nu), value_at_one_(fn_(1.0)) {}

double MCFunction::operator()(double t) const {
    require_positive_argument(t, name_.c_str());
    return fn_(t);
}

MCFunction MCFunction::bures() { return MCFunction("bures", f_bures); }

MCFunction MCFunction::sjoqvist() { return MCFunction("sjoqvist", f_sjoqvist); }

MCFunction MCFunction::zhsl(double nu) {
    require_nu(nu);
    const double prefactor = zhsl_prefactor(nu);
    std::ostringstream name;
    name << "zhsl(nu=" << nu << ")";
    return MCFunction(name.str(), [nu, prefactor](double t) { return zhsl_value(t, nu, prefactor); }, nu);
}

double mc_inverse_weight(const MCFunction &f, double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw Error(ErrorCode::RadiusOutOfDomain, "Bloch radius must lie in [0, 1)");
    }
    return 1.0 / f((1.0 - r) / (1.0 + r));
}

double mc_line_element(const MCFunction &f, const BlochState &b, const BlochDisplacement &db) {
    const double r = b.r;
    if (!(r >= 0.0 && r < 1.0)) {
        throw Error(ErrorCode::RadiusOutOfDomain, "Bloch radius must lie in [0, 1)", r);
    }
    const double s = std::sin(b.theta);
    const double solid = db.dtheta * db.dtheta + s * s * db.dphi * db.dphi;
    const double radial = db.dr * db.dr / (1.0 - r * r);

    double angular = 0.0;
    if (solid != 0.0) {
        if (r == 0.0) {
            if (f.singular_at_one()) {
                throw Error(ErrorCode::RadiusOutOfDomain,
                            f.name() + " metric diverges at the centre of the Bloch ball for angular displacements");
            }
            angular = 0.0;
        } else {
            angular = r * r / ((1.0 + r) * f((1.0 - r) / (1.0 + r))) * solid;
        }
    }
    return 0.25 * (radial + angular);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    std::vector<double> out;
    if (count == 0) {
        return out;
    }
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1)));
    }
    return out;
}

SelfInversiveReport check_self_inversive(const MCFunction &f, std::span<const double> sample_ts, double tolerance) {
    SelfInversiveReport out;
    out.samples = sample_ts.size();
    for (double t : sample_ts) {
        const double lhs = f(1.0 / t);
        const double rhs = f(t) / t;
        const double residual = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
        if (residual >= out.max_residual) {
            out.max_residual = residual;
            out.worst_t = t;
        }
    }
    out.pass = out.max_residual < tolerance;
    return out;
}

NormalizationReport check_normalization(const MCFunction &f, double tolerance) {
    NormalizationReport out;
    out.value_at_one = f.value_at_one();
    out.residual = std::abs(out.value_at_one - 1.0);
    out.pass = out.residual < tolerance;
    return out;
}

MonotonicityCounterexample evaluate_operator_pair(const MCFunction &f, const ComplexMatrix &a, const ComplexMatrix &b) {
    const auto g = [&f](double x) { return f(x); };
    const ComplexMatrix diff = apply_spectral_function(b, g) - apply_spectral_function(a, g);
    const HermitianEigensystem es = eig_hermitian(0.5 * (diff + diff.adjoint()));
    return {a, b, es.eigenvalues(0)};
}

std::string OperatorMonotoneReport::verdict() const {
    if (violation_found()) {
        return "violation found";
    }
    return "no violation found in " + std::to_string(trials) + " trials";
}

OperatorMonotoneReport check_operator_monotone(const MCFunction &f, Eigen::Index dim, std::size_t trials, Rng &rng) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorCode::InvalidArgument, "operator monotonicity search: dimension must be in [1, 64]");
    }
    OperatorMonotoneReport out;
    out.trials = trials;
    out.dim = dim;
    std::uniform_real_distribution<double> log_spectrum(-3.0, 3.0);
    std::uniform_real_distribution<double> log_scale(-3.0, 1.0);
    std::uniform_int_distribution<Eigen::Index> rank_dist(1, dim);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

    for (std::size_t trial = 0; trial < trials; ++trial) {
        RealVector spectrum(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            spectrum(i) = std::exp(log_spectrum(rng));
        }
        const ComplexMatrix u = haar_unitary(dim, rng);
        ComplexMatrix a = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
        a = 0.5 * (a + a.adjoint());

        const Eigen::Index rank = rank_dist(rng);
        ComplexMatrix g(dim, rank);
        for (Eigen::Index j = 0; j < rank; ++j) {
            for (Eigen::Index i = 0; i < dim; ++i) {
                const double re = normal(rng);
                const double im = normal(rng);
                g(i, j) = Complex(re, im);
            }
        }
        const double scale = std::exp(log_scale(rng));
        ComplexMatrix b = a + scale * g * g.adjoint();
        b = 0.5 * (b + b.adjoint());

        MonotonicityCounterexample pair = evaluate_operator_pair(f, a, b);
        if (pair.min_eigenvalue < -kOperatorMonotoneTol) {
            ++out.violations;
            if (!out.counterexample) {
                out.counterexample = std::move(pair);
            }
        }
    }
    return out;
}

MonotonicityCounterexample pinned_counterexample(const MCFunction &f) {
    const ComplexMatrix b = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix a = 0.5 * b;
    return evaluate_operator_pair(f, a, b);
}

std::string VolumeMeasure::name() const {
    switch (kind) {
        case VolumeKind::Bures:
            return "bures";
        case VolumeKind::Sjoqvist:
            return "sjoqvist";
        case VolumeKind::Zhsl: {
            std::ostringstream os;
            os << "zhsl(nu=" << nu << ")";
            return os.str();
        }
    }
    return "unknown";
}

namespace {

double volume_density_at(const VolumeMeasure &m, double r, double one_minus_r2, double theta) {
    const double s = std::sin(theta);
    switch (m.kind) {
        case VolumeKind::Bures:
            return r * r * s / (kPi * kPi * std::sqrt(one_minus_r2));
        case VolumeKind::Sjoqvist:
            return s / (2.0 * kPi * kPi * std::sqrt(one_minus_r2));
        case VolumeKind::Zhsl:
            require_nu(m.nu);
            return std::tgamma(0.5 + m.nu) / (2.0 * std::pow(kPi, 1.5) * std::tgamma(m.nu)) *
                   zhsl_shape(one_minus_r2, theta, m.nu);
    }
    return 0.0;
}

}  // namespace

double volume_density(const VolumeMeasure &m, const BlochState &b) {
    const double r = b.r;
    if (!(r >= 0.0 && r < 1.0)) {
        throw Error(ErrorCode::RadiusOutOfDomain, "volume densities are defined for r in [0, 1)", r);
    }
    return volume_density_at(m, r, (1.0 - r) * (1.0 + r), b.theta);
}

double integrate_volume_density(const VolumeMeasure &m) {
    if (m.kind == VolumeKind::Zhsl) {
        require_nu(m.nu);
    }
    return integrate_ball(
        [&m](double r, double one_minus_r2, double theta) { return volume_density_at(m, r, one_minus_r2, theta); });
}

void GeodesicEndpoints::validate() const {
    if (!(r_a >= 0.0 && r_a <= 1.0 && r_b >= 0.0 && r_b <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "geodesic endpoint radii must lie in [0, 1]");
    }
    if (!(theta_b >= 0.0 && theta_b <= kPi)) {
        throw Error(ErrorCode::InvalidArgument, "theta_b must lie in [0, pi]");
    }
}

double geodesic_length(MetricKind kind, const GeodesicEndpoints &e) {
    e.validate();
    if (kind == MetricKind::Sjoqvist) {
        return 0.5 * std::hypot(e.theta_b, std::asin(e.r_b) - std::asin(e.r_a));
    }
    // 1 - F^2 = [1 - r_a r_b cos(theta_b) - sqrt((1 - r_a^2)(1 - r_b^2))] / 2,
    // regrouped so that no term cancels:
    //   (1 - r_a r_b) - sqrt(...) = (r_a - r_b)^2 / ((1 - r_a r_b) + sqrt(...))
    //   r_a r_b (1 - cos theta_b)  = 2 r_a r_b sin^2(theta_b / 2)
    const double ra = e.r_a;
    const double rb = e.r_b;
    const double mixed = std::sqrt((1.0 - ra * ra) * (1.0 - rb * rb));
    const double denom = (1.0 - ra * rb) + mixed;
    const double radial = denom > 0.0 ? (ra - rb) * (ra - rb) / denom : 0.0;
    const double half = std::sin(0.5 * e.theta_b);
    const double one_minus_f2 = std::clamp(0.5 * (radial + 2.0 * ra * rb * half * half), 0.0, 1.0);
    const double f = std::sqrt(1.0 - one_minus_f2);
    const double one_minus_f = one_minus_f2 / (1.0 + f);
    return std::sqrt(2.0 * one_minus_f);
}

double fubini_study_length(double theta_b) {
    if (!(theta_b >= 0.0 && theta_b <= kPi)) {
        throw Error(ErrorCode::InvalidArgument, "theta_b must lie in [0, pi]");
    }
    return std::sin(0.5 * theta_b);
}

CylinderChart cylinder_chart(const BlochState &b) {
    if (!(b.r >= 0.0 && b.r <= 1.0)) {
        throw Error(ErrorCode::RadiusOutOfDomain, "Bloch radius must lie in [0, 1]");
    }
    return {std::asin(b.r), b.theta, b.phi};
}

double chart_line_element(MetricKind kind, const CylinderChart &c, double dalpha, double dtheta, double dphi) {
    const double s = std::sin(c.theta);
    const double solid = dtheta * dtheta + s * s * dphi * dphi;
    double radius2 = 1.0;
    if (kind == MetricKind::Bures) {
        const double sa = std::sin(c.alpha_r);
        radius2 = sa * sa;
    }
    return 0.25 * (dalpha * dalpha + radius2 * solid);
}

}  // namespace qgeo
