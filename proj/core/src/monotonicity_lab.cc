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

#include "qgeo/monotonicity_lab.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "qgeo/errors.h"
#include "qgeo/metrics.h"

namespace qgeo {

Eigen::Index CPTPChannel::dim() const { return kraus.empty() ? 0 : kraus.front().cols(); }

ComplexMatrix CPTPChannel::apply(const ComplexMatrix &rho) const {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const ComplexMatrix &k : kraus) {
        out += k * rho * k.adjoint();
    }
    return 0.5 * (out + out.adjoint());
}

DensityOperator CPTPChannel::apply(const DensityOperator &rho) const {
    if (rho.dim() != dim()) {
        throw Error(ErrorCode::DimensionMismatch, "channel and state dimensions differ");
    }
    return DensityOperator::validate(apply(rho.matrix()));
}

double CPTPChannel::completeness_residual() const {
    const Eigen::Index d = dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix &k : kraus) {
        sum += k.adjoint() * k;
    }
    return (sum - ComplexMatrix::Identity(d, d)).norm();
}

Eigen::Index CPTPChannel::kraus_rank(double tol) const {
    const Eigen::Index d = dim();
    ComplexMatrix stacked(d * d, static_cast<Eigen::Index>(kraus.size()));
    for (std::size_t i = 0; i < kraus.size(); ++i) {
        stacked.col(static_cast<Eigen::Index>(i)) = kraus[i].reshaped();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
    const RealVector &s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tol * std::max(1.0, s(0))) {
            ++rank;
        }
    }
    return rank;
}

CPTPChannel CPTPChannel::identity(Eigen::Index dim) { return {{ComplexMatrix::Identity(dim, dim)}}; }

CPTPChannel CPTPChannel::depolarizing(Eigen::Index dim, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "depolarizing probability must lie in [0, 1]");
    }
    CPTPChannel ch;
    ch.kraus.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(dim, dim));
    const double w = std::sqrt(p / static_cast<double>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
            k(i, j) = w;
            ch.kraus.push_back(std::move(k));
        }
    }
    return ch;
}

CPTPChannel sample_cptp(Eigen::Index dim_in, Eigen::Index env_dim, Rng &rng) {
    if (dim_in < 2 || env_dim < 1 || dim_in * env_dim > kMaxDim) {
        throw Error(ErrorCode::InvalidArgument, "sample_cptp: need dim_in >= 2, env_dim >= 1, dim_in * env_dim <= 64");
    }
    const ComplexMatrix u = haar_unitary(dim_in * env_dim, rng);
    CPTPChannel ch;
    ch.kraus.reserve(static_cast<std::size_t>(env_dim));
    for (Eigen::Index e = 0; e < env_dim; ++e) {
        ch.kraus.emplace_back(u.block(e * dim_in, 0, dim_in, dim_in));
    }
    return ch;
}

const char *contractivity_metric_name(ContractivityMetric m) {
    switch (m) {
        case ContractivityMetric::BuresDistance:
            return "bures_distance";
        case ContractivityMetric::BuresAngle:
            return "bures_angle";
        case ContractivityMetric::SjoqvistDistance:
            return "sjoqvist_distance";
        case ContractivityMetric::Fidelity:
            return "fidelity";
    }
    return "unknown";
}

std::optional<ContractivityMetric> parse_contractivity_metric(const std::string &name) {
    for (ContractivityMetric m : {ContractivityMetric::BuresDistance, ContractivityMetric::BuresAngle,
                                  ContractivityMetric::SjoqvistDistance, ContractivityMetric::Fidelity}) {
        if (name == contractivity_metric_name(m)) {
            return m;
        }
    }
    return std::nullopt;
}

MarginSample contractivity_margin(ContractivityMetric metric, const CPTPChannel &channel, const DensityOperator &rho1,
                                  const DensityOperator &rho2) {
    const DensityOperator out1 = channel.apply(rho1);
    const DensityOperator out2 = channel.apply(rho2);
    MarginSample s;
    switch (metric) {
        case ContractivityMetric::BuresDistance:
            s.before = bures_distance(rho1, rho2);
            s.after = bures_distance(out1, out2);
            s.margin = s.after - s.before;
            break;
        case ContractivityMetric::BuresAngle:
            s.before = bures_angle(rho1, rho2);
            s.after = bures_angle(out1, out2);
            s.margin = s.after - s.before;
            break;
        case ContractivityMetric::SjoqvistDistance:
            s.before = sjoqvist_distance(rho1, rho2);
            s.after = sjoqvist_distance(out1, out2);
            s.margin = s.after - s.before;
            break;
        case ContractivityMetric::Fidelity:
            s.before = fidelity(rho1, rho2);
            s.after = fidelity(out1, out2);
            s.margin = s.before - s.after;
            break;
    }
    return s;
}

namespace {

struct TrialOutcome {
    bool evaluated = false;
    std::size_t resamples = 0;
    MarginSample sample;
    ComplexMatrix rho1;
    ComplexMatrix rho2;
    std::vector<ComplexMatrix> kraus;
};

bool is_domain_error(const Error &e) {
    return e.code() == ErrorCode::DegenerateSpectrum || e.code() == ErrorCode::AmbiguousBranchMatching;
}

TrialOutcome run_trial(ContractivityMetric metric, const ContractivityConfig &config, std::uint64_t trial_seed) {
    Rng rng(trial_seed);
    std::uniform_int_distribution<Eigen::Index> env_dist(1, config.dim * config.dim);
    TrialOutcome out;
    for (std::size_t attempt = 0; attempt <= config.max_resamples; ++attempt) {
        const Eigen::Index env = config.env_dim > 0 ? config.env_dim : env_dist(rng);
        const DensityOperator rho1 = sample_zhsl(config.dim, rng);
        const DensityOperator rho2 = sample_zhsl(config.dim, rng);
        CPTPChannel channel = sample_cptp(config.dim, env, rng);
        try {
            out.sample = contractivity_margin(metric, channel, rho1, rho2);
        } catch (const Error &e) {
            if (metric != ContractivityMetric::SjoqvistDistance || !is_domain_error(e)) {
                throw;
            }
            ++out.resamples;
            continue;
        }
        out.evaluated = true;
        if (out.sample.margin > kViolationThreshold) {
            out.rho1 = rho1.matrix();
            out.rho2 = rho2.matrix();
            out.kraus = std::move(channel.kraus);
        }
        return out;
    }
    return out;
}

}  // namespace

ContractivityReport check_contractivity(ContractivityMetric metric, const ContractivityConfig &config) {
    if (config.dim < 2 || config.dim > 8) {
        throw Error(ErrorCode::InvalidArgument, "contractivity experiments support dimensions 2..8");
    }
    if (config.trials == 0) {
        throw Error(ErrorCode::InvalidArgument, "at least one trial is required");
    }
    std::vector<TrialOutcome> outcomes(config.trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(config.trials)));

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t i = next.fetch_add(1); i < config.trials; i = next.fetch_add(1)) {
                outcomes[i] = run_trial(metric, config, derive_seed(config.seed, i));
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    for (const std::exception_ptr &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    ContractivityReport report;
    report.metric = metric;
    report.dim = config.dim;
    report.seed = config.seed;
    report.trials = config.trials;
    report.max_violation_margin = -std::numeric_limits<double>::infinity();
    report.min_margin = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        TrialOutcome &o = outcomes[i];
        report.resamples += o.resamples;
        if (!o.evaluated) {
            ++report.skipped;
            continue;
        }
        ++report.evaluated;
        const double m = o.sample.margin;
        sum += m;
        report.max_violation_margin = std::max(report.max_violation_margin, m);
        report.min_margin = std::min(report.min_margin, m);
        if (m < -kViolationThreshold) {
            ++report.strictly_contracting;
        }
        if (m > kViolationThreshold) {
            report.violations.push_back({i, derive_seed(config.seed, i), std::move(o.rho1), std::move(o.rho2),
                                         std::move(o.kraus), o.sample.before, o.sample.after, m});
        }
    }
    if (report.evaluated > 0) {
        report.mean_margin = sum / static_cast<double>(report.evaluated);
    } else {
        report.max_violation_margin = 0.0;
        report.min_margin = 0.0;
    }
    return report;
}

ContractivityReport fidelity_monotonicity_check(const ContractivityConfig &config) {
    return check_contractivity(ContractivityMetric::Fidelity, config);
}

}  // namespace qgeo
