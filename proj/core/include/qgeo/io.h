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

// Matrix file format:
//
//   {"dim": N, "re": [[...], ...], "im": [[...], ...]}
//
// with N rows of N reals each, row major. Hamiltonian files add
// "hermitian": true. "im" may be omitted for real matrices.

#ifndef QGEO_IO_H
#define QGEO_IO_H

#include <string>

#include <nlohmann/json.hpp>

#include "qgeo/matrix_core.h"
#include "qgeo/monotonicity_lab.h"
#include "qgeo/quantum_states.h"

namespace qgeo {

/// Throws InvalidArgument on a malformed object or DimensionMismatch when the
/// row shape disagrees with "dim".
ComplexMatrix matrix_from_json(const nlohmann::json &j);
nlohmann::json matrix_to_json(const ComplexMatrix &m);

/// Parses and validates a density operator.
DensityOperator density_from_json(const nlohmann::json &j);
nlohmann::json density_to_json(const DensityOperator &rho);

/// Requires "hermitian": true and a Hermitian matrix to 1e-12.
ComplexMatrix hamiltonian_from_json(const nlohmann::json &j);
nlohmann::json hamiltonian_to_json(const ComplexMatrix &h);

/// Throws InvalidArgument if the file cannot be read or parsed.
nlohmann::json read_json_file(const std::string &path);

DensityOperator load_density(const std::string &path);
ComplexMatrix load_hamiltonian(const std::string &path);

nlohmann::json contractivity_report_to_json(const ContractivityReport &report);

}  // namespace qgeo

#endif
