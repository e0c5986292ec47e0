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

#ifndef QGEO_TOOLS_COMMANDS_H
#define QGEO_TOOLS_COMMANDS_H

#include <iosfwd>
#include <string>
#include <vector>

namespace qgeo::cli {

inline constexpr const char *kSchema = "qgeo.v1";

/// Process exit statuses.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitDomain = 3,
    kExitNumerical = 4,
};

/// Runs one invocation. `args` excludes the program name, so args[0] is the
/// subcommand. Records go to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qgeo::cli

#endif
