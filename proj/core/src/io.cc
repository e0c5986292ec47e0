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

#include "qgeo/io.h"

#include <cmath>
#include <fstream>

#include "qgeo/errors.h"

namespace qgeo {

namespace {

Eigen::MatrixXd read_rows(const nlohmann::json &rows, Eigen::Index dim, const char *key) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
        throw Error(ErrorCode::DimensionMismatch, std::string("\"") + key + "\" must hold dim rows");
    }
    Eigen::MatrixXd out(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const nlohmann::json &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw Error(ErrorCode::DimensionMismatch, std::string("\"") + key + "\" rows must hold dim entries");
        }
        for (Eigen::Index k = 0; k < dim; ++k) {
            const nlohmann::json &v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) {
                throw Error(ErrorCode::InvalidArgument, std::string("\"") + key + "\" entries must be numbers");
            }
            out(i, k) = v.get<double>();
            if (!std::isfinite(out(i, k))) {
                throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
            }
        }
    }
    return out;
}

nlohmann::json write_rows(const Eigen::MatrixXd &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(m(i, k));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::InvalidArgument, "matrix file must hold a JSON object");
    }
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw Error(ErrorCode::InvalidArgument, "missing integer \"dim\"");
    }
    const auto dim = j["dim"].get<std::int64_t>();
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorCode::InvalidArgument, "\"dim\" must lie in [1, 64]");
    }
    if (!j.contains("re")) {
        throw Error(ErrorCode::InvalidArgument, "missing \"re\"");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(dim);
    const Eigen::MatrixXd re = read_rows(j["re"], n, "re");
    const Eigen::MatrixXd im = j.contains("im") ? read_rows(j["im"], n, "im") : Eigen::MatrixXd::Zero(n, n);
    ComplexMatrix out(n, n);
    out.real() = re;
    out.imag() = im;
    return out;
}

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json j;
    j["dim"] = m.rows();
    j["re"] = write_rows(m.real());
    j["im"] = write_rows(m.imag());
    return j;
}

DensityOperator density_from_json(const nlohmann::json &j) { return DensityOperator::validate(matrix_from_json(j)); }

nlohmann::json density_to_json(const DensityOperator &rho) { return matrix_to_json(rho.matrix()); }

ComplexMatrix hamiltonian_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("hermitian") || j["hermitian"] != true) {
        throw Error(ErrorCode::InvalidArgument, "Hamiltonian files need \"hermitian\": true");
    }
    ComplexMatrix h = matrix_from_json(j);
    const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (defect > kHermitianTol) {
        throw Error(ErrorCode::NotHermitian, "Hamiltonian is not Hermitian", defect);
    }
    return 0.5 * (h + h.adjoint());
}

nlohmann::json hamiltonian_to_json(const ComplexMatrix &h) {
    nlohmann::json j = matrix_to_json(h);
    j["hermitian"] = true;
    return j;
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
    }
}

DensityOperator load_density(const std::string &path) { return density_from_json(read_json_file(path)); }

ComplexMatrix load_hamiltonian(const std::string &path) { return hamiltonian_from_json(read_json_file(path)); }

nlohmann::json contractivity_report_to_json(const ContractivityReport &report) {
    nlohmann::json j;
    j["metric"] = contractivity_metric_name(report.metric);
    j["dim"] = report.dim;
    j["seed"] = report.seed;
    j["trials"] = report.trials;
    j["evaluated"] = report.evaluated;
    j["resamples"] = report.resamples;
    j["skipped"] = report.skipped;
    j["violation_threshold"] = kViolationThreshold;
    j["violation_count"] = report.violations.size();
    j["max_violation_margin"] = report.max_violation_margin;
    j["min_margin"] = report.min_margin;
    j["mean_margin"] = report.mean_margin;
    j["strictly_contracting"] = report.strictly_contracting;
    nlohmann::json violations = nlohmann::json::array();
    for (const ContractivityViolation &v : report.violations) {
        nlohmann::json rec;
        rec["trial"] = v.trial;
        rec["trial_seed"] = v.trial_seed;
        rec["rho1"] = matrix_to_json(v.rho1);
        rec["rho2"] = matrix_to_json(v.rho2);
        nlohmann::json kraus = nlohmann::json::array();
        for (const ComplexMatrix &k : v.kraus) {
            kraus.push_back(matrix_to_json(k));
        }
        rec["kraus"] = std::move(kraus);
        rec["before"] = v.before;
        rec["after"] = v.after;
        rec["margin"] = v.margin;
        violations.push_back(std::move(rec));
    }
    j["violations"] = std::move(violations);
    return j;
}

}  // namespace qgeo
