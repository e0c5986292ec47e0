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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qgeo/bloch_geometry.h"
#include "qgeo/errors.h"
#include "qgeo/io.h"
#include "qgeo/metrics.h"
#include "qgeo/monotonicity_lab.h"
#include "qgeo/quantum_states.h"
#include "qgeo/thermal_spin_qubit.h"

namespace qgeo::cli {

namespace {

using nlohmann::json;

// Validation failure inside the CLI layer (bad grid, bad combination of flags).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateSpectrum:
        case ErrorCode::AmbiguousBranchMatching:
            return kExitDomain;
        case ErrorCode::SingularMatrix:
        case ErrorCode::NumericalFailure:
        case ErrorCode::StepTooLarge:
            return kExitNumerical;
        default:
            return kExitValidation;
    }
}

std::string fmt(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(bool b) { return b ? "true" : "false"; }

template <typename Int>
    requires std::is_integral_v<Int>
std::string fmt(Int i) {
    return std::to_string(i);
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string str() const {
        std::ostringstream os;
        auto line = [&os](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                os << (i ? "," : "") << cells[i];
            }
            os << '\n';
        };
        line(columns);
        for (const auto &r : rows) {
            line(r);
        }
        return os.str();
    }
};

struct CommonOptions {
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    std::string config;
};

void add_common(CLI::App &app, CommonOptions &o) {
    app.set_config("--config", "", "Flat key=value file mirroring the long flags; flags override it");
    app.add_option("--seed", o.seed, "Base seed for stochastic commands")->capture_default_str();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", o.out, "Write records to this path instead of stdout");
}

struct Output {
    json doc;
    CsvTable table;
    int status = kExitOk;
};

Output make_output(const char *command) {
    Output o;
    o.doc["schema"] = kSchema;
    o.doc["command"] = command;
    return o;
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    fn(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

// ---------------------------------------------------------------- grids

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 1;

    double at(std::size_t i) const {
        if (steps == 1) {
            return start;
        }
        if (i + 1 == steps) {
            return stop;
        }
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

// "start:stop:steps". steps >= 2, or steps == 1 with start == stop.
Grid parse_grid(const std::string &text, const char *name) {
    const auto bad = [&](const std::string &why) {
        return UsageError(std::string("malformed grid --") + name + " '" + text + "': " + why);
    };
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() != 3) {
        throw bad("expected start:stop:steps");
    }
    Grid g;
    try {
        std::size_t pos = 0;
        g.start = std::stod(parts[0], &pos);
        if (pos != parts[0].size()) throw bad("bad start");
        g.stop = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw bad("bad stop");
        const long long steps = std::stoll(parts[2], &pos);
        if (pos != parts[2].size() || steps < 1 || steps > 1000000) throw bad("steps must be an integer in [1, 1e6]");
        g.steps = static_cast<std::size_t>(steps);
    } catch (const std::logic_error &) {
        throw bad("not a number");
    }
    if (!std::isfinite(g.start) || !std::isfinite(g.stop)) {
        throw bad("bounds must be finite");
    }
    if (g.steps == 1 && g.start != g.stop) {
        throw bad("a sweep needs at least 2 steps");
    }
    return g;
}

json matrix_json(const ComplexMatrix &m) { return matrix_to_json(m); }

// ---------------------------------------------------------------- distance

Output cmd_distance(const std::string &path_a, const std::string &path_b, std::optional<double> tol) {
    const DensityOperator a = load_density(path_a);
    const DensityOperator b = load_density(path_b);
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state files differ in dimension");
    }
    Output o = make_output("distance");
    std::optional<double> sj;
    std::string sj_status = "ok";
    try {
        sj = tol ? sjoqvist_distance(a, b, *tol) : sjoqvist_distance(a, b);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::DegenerateSpectrum && e.code() != ErrorCode::AmbiguousBranchMatching) {
            throw;
        }
        sj_status = std::string(error_code_name(e.code()));
        o.status = kExitDomain;
    }
    const double gen = generalized_sjoqvist_distance(a, b);
    const double bures = bures_distance(a, b);
    const double fid = fidelity(a, b);
    const double angle = bures_angle(a, b);
    const double residual = std::abs(gen - bures);

    o.doc["dim"] = a.dim();
    o.doc["sjoqvist"] = sj ? json(*sj) : json(nullptr);
    o.doc["sjoqvist_status"] = sj_status;
    o.doc["generalized_sjoqvist"] = gen;
    o.doc["bures"] = bures;
    o.doc["fidelity"] = fid;
    o.doc["bures_angle"] = angle;
    o.doc["consistency_residual"] = residual;

    o.table.columns = {"schema",    "command",     "dim",        "sjoqvist", "sjoqvist_status", "generalized_sjoqvist",
                       "bures",     "fidelity",    "bures_angle", "consistency_residual"};
    o.table.rows.push_back({kSchema, "distance", fmt(a.dim()), sj ? fmt(*sj) : "nan", sj_status, fmt(gen), fmt(bures),
                            fmt(fid), fmt(angle), fmt(residual)});
    return o;
}

// ---------------------------------------------------------------- thermal-sweep

struct SweepOptions {
    double omega_x = 0.0;
    double omega_y = 0.0;
    double omega_z = 1.0;
    std::string beta_grid;
    std::string temperature_grid;
    std::string omega_z_grid;
    double hbar = 1.0;
    double kb = 1.0;
    double tol_degeneracy = 1e-12;
    unsigned workers = 1;
};

struct SweepCell {
    double beta = 0.0;
    double omega_z = 0.0;
    std::optional<double> temperature;
    double half_gap_ratio = 0.0;
    double tanh2 = 0.0;
    double ratio = 0.0;
    MetricTensor2x2 sj;
    MetricTensor2x2 bu;
    DegeneracyReport sj_deg;
    DegeneracyReport bu_deg;
};

json tensor_json(const MetricTensor2x2 &m, const DegeneracyReport &d) {
    json j;
    j["g11"] = m.g(0, 0);
    j["g12"] = m.g(0, 1);
    j["g22"] = m.g(1, 1);
    j["nonclassical_g22"] = m.nonclassical_g22;
    j["eigenvalues"] = {d.eigenvalues(0), d.eigenvalues(1)};
    j["determinant"] = d.determinant;
    j["principal_direction"] = {d.principal_direction(0), d.principal_direction(1)};
    j["degenerate"] = d.degenerate;
    return j;
}

std::vector<std::string> tensor_cells(const MetricTensor2x2 &m, const DegeneracyReport &d) {
    return {fmt(m.g(0, 0)),        fmt(m.g(0, 1)),        fmt(m.g(1, 1)),  fmt(m.nonclassical_g22),
            fmt(d.eigenvalues(0)), fmt(d.eigenvalues(1)), fmt(d.determinant), fmt(d.degenerate)};
}

Output cmd_thermal_sweep(const SweepOptions &opt) {
    if (opt.beta_grid.empty() == opt.temperature_grid.empty()) {
        throw UsageError("thermal-sweep needs exactly one of --beta-grid or --temperature-grid");
    }
    if (!(opt.tol_degeneracy >= 0.0)) {
        throw UsageError("--tol-degeneracy must be non-negative");
    }
    const Units units{opt.hbar, opt.kb};
    const bool by_temperature = !opt.temperature_grid.empty();
    const Grid outer = by_temperature ? parse_grid(opt.temperature_grid, "temperature-grid")
                                      : parse_grid(opt.beta_grid, "beta-grid");
    const Grid inner = opt.omega_z_grid.empty() ? Grid{opt.omega_z, opt.omega_z, 1}
                                                : parse_grid(opt.omega_z_grid, "omega-z-grid");
    const std::size_t n = outer.steps * inner.steps;
    if (n > 4000000) {
        throw UsageError("grid has more than 4e6 cells");
    }
    // Validate every cell before fanning out so errors are deterministic.
    for (std::size_t i = 0; i < outer.steps; ++i) {
        const double beta = by_temperature ? units.inverse_temperature(outer.at(i)) : outer.at(i);
        FieldParams{opt.omega_x, opt.omega_y, inner.at(0), beta, opt.hbar}.validate();
    }

    std::vector<SweepCell> cells(n);
    parallel_for(n, opt.workers, [&](std::size_t idx) {
        const std::size_t i = idx / inner.steps;
        const std::size_t k = idx % inner.steps;
        SweepCell &c = cells[idx];
        if (by_temperature) {
            c.temperature = outer.at(i);
            c.beta = units.inverse_temperature(outer.at(i));
        } else {
            c.beta = outer.at(i);
        }
        c.omega_z = inner.at(k);
        const FieldParams p{opt.omega_x, opt.omega_y, c.omega_z, c.beta, opt.hbar};
        c.half_gap_ratio = p.half_gap_ratio();
        const double t = std::tanh(c.half_gap_ratio);
        c.tanh2 = t * t;
        c.sj = analytic_metric(p, MetricKind::Sjoqvist);
        c.bu = analytic_metric(p, MetricKind::Bures);
        c.sj_deg = diagnose_degeneracy(c.sj, opt.tol_degeneracy);
        c.bu_deg = diagnose_degeneracy(c.bu, opt.tol_degeneracy);
        // Without a transverse field both nonclassical terms vanish; report the
        // continuous extension of their ratio.
        c.ratio = c.sj.nonclassical_g22 > 0.0 ? c.bu.nonclassical_g22 / c.sj.nonclassical_g22 : c.tanh2;
    });

    Output o = make_output("thermal-sweep");
    o.doc["omega_x"] = opt.omega_x;
    o.doc["omega_y"] = opt.omega_y;
    o.doc["hbar"] = opt.hbar;
    o.doc["kb"] = opt.kb;
    o.doc["coords"] = {"beta", "omega_z"};
    json records = json::array();
    o.table.columns = {"schema",  "index",   "beta",     "omega_z",   "temperature", "half_gap_ratio",
                       "tanh2",   "ratio",   "sj_g11",   "sj_g12",    "sj_g22",      "sj_nonclassical_g22",
                       "sj_eig_min", "sj_eig_max", "sj_det", "sj_degenerate", "bu_g11", "bu_g12",
                       "bu_g22",  "bu_nonclassical_g22", "bu_eig_min", "bu_eig_max", "bu_det", "bu_degenerate"};
    for (std::size_t idx = 0; idx < n; ++idx) {
        const SweepCell &c = cells[idx];
        json r;
        r["index"] = idx;
        r["beta"] = c.beta;
        r["omega_z"] = c.omega_z;
        r["temperature"] = c.temperature ? json(*c.temperature) : json(nullptr);
        r["half_gap_ratio"] = c.half_gap_ratio;
        r["tanh2"] = c.tanh2;
        r["ratio"] = c.ratio;
        r["zero_field"] = c.sj.zero_field;
        r["sjoqvist"] = tensor_json(c.sj, c.sj_deg);
        r["bures"] = tensor_json(c.bu, c.bu_deg);
        records.push_back(std::move(r));

        std::vector<std::string> row = {kSchema,
                                        fmt(idx),
                                        fmt(c.beta),
                                        fmt(c.omega_z),
                                        c.temperature ? fmt(*c.temperature) : "nan",
                                        fmt(c.half_gap_ratio),
                                        fmt(c.tanh2),
                                        fmt(c.ratio)};
        for (auto &s : tensor_cells(c.sj, c.sj_deg)) row.push_back(std::move(s));
        for (auto &s : tensor_cells(c.bu, c.bu_deg)) row.push_back(std::move(s));
        o.table.rows.push_back(std::move(row));
    }
    o.doc["cells"] = std::move(records);
    return o;
}

// ---------------------------------------------------------------- mc-analyze

struct McOptions {
    std::size_t trials = 10000;
    std::vector<int> dims{2, 3, 4};
    std::vector<double> nus{0.5, 1.0, 2.0};
    std::size_t samples = 1000;
};

json pair_json(const MonotonicityCounterexample &c) {
    json j;
    j["a"] = matrix_json(c.a);
    j["b"] = matrix_json(c.b);
    j["min_eigenvalue"] = c.min_eigenvalue;
    return j;
}

Output cmd_mc_analyze(const McOptions &opt, std::uint64_t seed) {
    if (opt.samples < 1 || opt.trials < 1) {
        throw UsageError("--samples and --trials must be positive");
    }
    for (int d : opt.dims) {
        if (d < 1 || d > 16) {
            throw UsageError("--dims entries must lie in [1, 16]");
        }
    }
    std::vector<MCFunction> functions = {MCFunction::bures(), MCFunction::sjoqvist()};
    for (double nu : opt.nus) {
        functions.push_back(MCFunction::zhsl(nu));
    }
    const std::vector<double> ts = log_spaced(1e-3, 1e3, opt.samples);

    Output o = make_output("mc-analyze");
    o.doc["seed"] = seed;
    o.doc["sample_points"] = opt.samples;
    o.doc["trials_per_dim"] = opt.trials;
    o.doc["dims"] = opt.dims;
    o.table.columns = {"schema",
                       "function",
                       "nu",
                       "value_at_one",
                       "normalized",
                       "self_inversive_residual",
                       "self_inversive",
                       "monotone_trials",
                       "monotone_violations",
                       "pinned_min_eigenvalue",
                       "proper_mc_function"};
    json records = json::array();
    std::uint64_t stream = 0;
    for (const MCFunction &f : functions) {
        const NormalizationReport norm = check_normalization(f);
        const SelfInversiveReport inv = check_self_inversive(f, ts);
        const MonotonicityCounterexample pinned = pinned_counterexample(f);

        json searches = json::array();
        std::size_t total_trials = 0;
        std::size_t total_violations = 0;
        for (int d : opt.dims) {
            Rng rng(derive_seed(seed, stream++));
            const OperatorMonotoneReport rep = check_operator_monotone(f, d, opt.trials, rng);
            total_trials += rep.trials;
            total_violations += rep.violations;
            json s;
            s["dim"] = d;
            s["trials"] = rep.trials;
            s["violations"] = rep.violations;
            s["verdict"] = rep.verdict();
            s["counterexample"] = rep.counterexample ? pair_json(*rep.counterexample) : json(nullptr);
            searches.push_back(std::move(s));
        }
        const bool monotone_violation = total_violations > 0 || pinned.min_eigenvalue < -kOperatorMonotoneTol;
        const bool proper = norm.pass && inv.pass && !monotone_violation;

        json r;
        r["function"] = f.name();
        r["nu"] = f.nu() ? json(*f.nu()) : json(nullptr);
        r["value_at_one"] = norm.value_at_one;
        r["singular_at_one"] = f.singular_at_one();
        r["normalization"] = {{"value", norm.value_at_one}, {"residual", norm.residual}, {"pass", norm.pass}};
        r["self_inversive"] = {
            {"max_residual", inv.max_residual}, {"worst_t", inv.worst_t}, {"samples", inv.samples}, {"pass", inv.pass}};
        r["operator_monotone_search"] = std::move(searches);
        r["pinned_pair"] = pair_json(pinned);
        r["pinned_violation"] = pinned.min_eigenvalue < -kOperatorMonotoneTol;
        r["proper_mc_function"] = proper;
        records.push_back(std::move(r));

        o.table.rows.push_back({kSchema, f.name(), f.nu() ? fmt(*f.nu()) : "nan", fmt(norm.value_at_one),
                                fmt(norm.pass), fmt(inv.max_residual), fmt(inv.pass), fmt(total_trials),
                                fmt(total_violations), fmt(pinned.min_eigenvalue), fmt(proper)});
    }
    o.doc["functions"] = std::move(records);

    // f_zhsl(t; 1/2) against f_sjoqvist(t) on the same sample points.
    double max_abs = 0.0;
    double max_scaled = 0.0;
    for (double t : ts) {
        const double d = std::abs(f_zhsl(t, 0.5) - f_sjoqvist(t));
        max_abs = std::max(max_abs, d);
        max_scaled = std::max(max_scaled, d / std::max(1.0, std::abs(f_sjoqvist(t))));
    }
    const double n_half = zhsl_normalization(0.5);
    const double expected = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
    o.doc["zhsl_half_vs_sjoqvist"] = {{"samples", ts.size()},
                                      {"max_abs_difference", max_abs},
                                      {"max_scaled_difference", max_scaled},
                                      {"pass", max_scaled < 1e-12},
                                      {"normalization_half", n_half},
                                      {"normalization_half_expected", expected}};
    return o;
}

// ---------------------------------------------------------------- monotonicity

struct MonoOptions {
    std::string metric = "all";
    std::size_t trials = 10000;
    int dim = 2;
    int env_dim = 0;
    unsigned workers = 1;
};

Output cmd_monotonicity(const MonoOptions &opt, std::uint64_t seed) {
    std::vector<ContractivityMetric> metrics;
    if (opt.metric == "all") {
        metrics = {ContractivityMetric::BuresDistance, ContractivityMetric::BuresAngle, ContractivityMetric::Fidelity,
                   ContractivityMetric::SjoqvistDistance};
    } else if (auto m = parse_contractivity_metric(opt.metric)) {
        metrics = {*m};
    } else {
        throw UsageError("unknown --metric '" + opt.metric + "'");
    }
    if (opt.env_dim < 0 || opt.dim * std::max(1, opt.env_dim) > kMaxDim) {
        throw UsageError("--env-dim must be >= 0 with dim * env-dim <= 64");
    }
    Output o = make_output("monotonicity");
    o.doc["seed"] = seed;
    o.doc["dim"] = opt.dim;
    o.doc["trials"] = opt.trials;
    o.doc["env_dim"] = opt.env_dim;
    o.table.columns = {"schema",    "metric",   "dim",     "seed",           "trials",
                       "evaluated", "resamples", "skipped", "violation_count", "max_violation_margin",
                       "min_margin", "mean_margin", "strictly_contracting"};
    json reports = json::array();
    for (ContractivityMetric m : metrics) {
        const ContractivityConfig cfg{opt.dim, opt.trials, seed, opt.env_dim, opt.workers, 1000};
        const ContractivityReport r = check_contractivity(m, cfg);
        json j = contractivity_report_to_json(r);
        j["asserted"] = m != ContractivityMetric::SjoqvistDistance;
        reports.push_back(std::move(j));
        o.table.rows.push_back({kSchema, contractivity_metric_name(m), fmt(r.dim), fmt(r.seed), fmt(r.trials),
                                fmt(r.evaluated), fmt(r.resamples), fmt(r.skipped), fmt(r.violations.size()),
                                fmt(r.max_violation_margin), fmt(r.min_margin), fmt(r.mean_margin),
                                fmt(r.strictly_contracting)});
    }
    o.doc["reports"] = std::move(reports);
    return o;
}

// ---------------------------------------------------------------- geodesic

Output cmd_geodesic(const GeodesicEndpoints &e) {
    e.validate();
    const double lb = geodesic_length(MetricKind::Bures, e);
    const double ls = geodesic_length(MetricKind::Sjoqvist, e);
    const double lf = fubini_study_length(e.theta_b);
    const bool pure = e.r_a == 1.0 && e.r_b == 1.0;
    Output o = make_output("geodesic");
    o.doc["r_a"] = e.r_a;
    o.doc["r_b"] = e.r_b;
    o.doc["theta_b"] = e.theta_b;
    o.doc["pure_endpoints"] = pure;
    o.doc["L_bures"] = lb;
    o.doc["L_sjoqvist"] = ls;
    o.doc["L_fubini_study"] = lf;
    o.table.columns = {"schema", "r_a", "r_b", "theta_b", "pure_endpoints", "L_bures", "L_sjoqvist", "L_fubini_study"};
    o.table.rows.push_back(
        {kSchema, fmt(e.r_a), fmt(e.r_b), fmt(e.theta_b), fmt(pure), fmt(lb), fmt(ls), fmt(lf)});
    return o;
}

// ---------------------------------------------------------------- sample

Output cmd_sample(int dim, std::size_t count, bool bare, std::uint64_t seed) {
    if (dim < 2 || dim > kMaxDim) {
        throw UsageError("--dim must lie in [2, 64]");
    }
    if (count < 1) {
        throw UsageError("--count must be positive");
    }
    if (bare && count != 1) {
        throw UsageError("--bare writes a single state file; use --count 1");
    }
    Output o = make_output("sample");
    o.doc["dim"] = dim;
    o.doc["seed"] = seed;
    o.table.columns = {"schema", "index", "row", "col", "re", "im"};
    json states = json::array();
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, i));
        const DensityOperator rho = sample_zhsl(dim, rng);
        json s = density_to_json(rho);
        if (bare) {
            o.doc = s;
        }
        s["index"] = i;
        states.push_back(std::move(s));
        for (Eigen::Index r = 0; r < dim; ++r) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                o.table.rows.push_back(
                    {kSchema, fmt(i), fmt(r), fmt(c), fmt(rho.matrix()(r, c).real()), fmt(rho.matrix()(r, c).imag())});
            }
        }
    }
    if (!bare) {
        o.doc["states"] = std::move(states);
    }
    return o;
}

// ---------------------------------------------------------------- driver

const char *kUsage =
    "usage: qgeo <command> [options]\n"
    "\n"
    "commands:\n"
    "  distance       distances between two state files\n"
    "  thermal-sweep  closed-form spin-qubit metric tensors over a (beta, omega_z) grid\n"
    "  mc-analyze     Morozova-Chentsov function diagnostics\n"
    "  monotonicity   random-channel contractivity experiments\n"
    "  geodesic       closed-form qubit geodesic lengths\n"
    "  sample         random states from the ZHSL measure\n"
    "\n"
    "Run 'qgeo <command> --help' for the options of a command.\n";

void emit(const Output &o, const CommonOptions &common, std::ostream &out) {
    const std::string text = common.format == "csv" ? o.table.str() : o.doc.dump(2) + "\n";
    if (common.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(common.out, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + common.out);
    }
    f << text;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        (args.empty() ? err : out) << kUsage;
        return args.empty() ? kExitValidation : kExitOk;
    }
    if (args[0] == "--version") {
        out << "qgeo 0.1.0 (" << kSchema << ")\n";
        return kExitOk;
    }
    const std::string command = args[0];
    CLI::App app("qgeo " + command, "qgeo " + command);
    CommonOptions common;
    add_common(app, common);

    std::function<Output()> run;

    // Options of each subcommand live here so the parser can bind to them.
    std::string path_a, path_b;
    double tol_degeneracy = -1.0;
    SweepOptions sweep;
    McOptions mc;
    MonoOptions mono;
    GeodesicEndpoints geo{1.0, 1.0, 0.0};
    int sample_dim = 2;
    std::size_t sample_count = 1;
    bool sample_bare = false;

    if (command == "distance") {
        app.add_option("state_a", path_a, "First state file")->required();
        app.add_option("state_b", path_b, "Second state file")->required();
        app.add_option("--tol-degeneracy", tol_degeneracy,
                       "Spectral gap below which a state counts as degenerate (default 1e-10 max(1, |rho|_F))");
        run = [&] {
            return cmd_distance(path_a, path_b, tol_degeneracy >= 0.0 ? std::optional<double>(tol_degeneracy)
                                                                      : std::nullopt);
        };
    } else if (command == "thermal-sweep") {
        app.add_option("--omega-x", sweep.omega_x, "Fixed field component omega_x")->capture_default_str();
        app.add_option("--omega-y", sweep.omega_y, "Fixed field component omega_y")->capture_default_str();
        app.add_option("--omega-z", sweep.omega_z, "omega_z when no --omega-z-grid is given")->capture_default_str();
        app.add_option("--beta-grid", sweep.beta_grid, "start:stop:steps over beta");
        app.add_option("--temperature-grid", sweep.temperature_grid, "start:stop:steps over T, beta = 1/(kb T)");
        app.add_option("--omega-z-grid", sweep.omega_z_grid, "start:stop:steps over omega_z");
        app.add_option("--hbar", sweep.hbar, "Reduced Planck constant")->capture_default_str();
        app.add_option("--kb", sweep.kb, "Boltzmann constant")->capture_default_str();
        app.add_option("--tol-degeneracy", sweep.tol_degeneracy,
                       "Tensor flagged degenerate when min eigenvalue < tol * max eigenvalue")
            ->capture_default_str();
        app.add_option("--workers", sweep.workers, "Worker threads")->capture_default_str();
        run = [&] { return cmd_thermal_sweep(sweep); };
    } else if (command == "mc-analyze") {
        app.add_option("--trials", mc.trials, "Operator-monotonicity trials per dimension")->capture_default_str();
        app.add_option("--dims", mc.dims, "Matrix dimensions for the randomized search")->delimiter(',');
        app.add_option("--nu", mc.nus, "ZHSL concentration parameters")->delimiter(',');
        app.add_option("--samples", mc.samples, "Self-inversive sample points in [1e-3, 1e3]")->capture_default_str();
        run = [&] { return cmd_mc_analyze(mc, common.seed); };
    } else if (command == "monotonicity") {
        app.add_option("--metric", mono.metric,
                       "bures_distance, bures_angle, fidelity, sjoqvist_distance or all")
            ->capture_default_str();
        app.add_option("--trials", mono.trials, "Random (state pair, channel) trials")->capture_default_str();
        app.add_option("--dim", mono.dim, "State dimension")->capture_default_str();
        app.add_option("--env-dim", mono.env_dim, "Environment dimension (0 draws it per trial)")
            ->capture_default_str();
        app.add_option("--workers", mono.workers, "Worker threads")->capture_default_str();
        run = [&] { return cmd_monotonicity(mono, common.seed); };
    } else if (command == "geodesic") {
        app.add_option("--r-a", geo.r_a, "Bloch radius of the first endpoint")->capture_default_str();
        app.add_option("--r-b", geo.r_b, "Bloch radius of the second endpoint")->capture_default_str();
        app.add_option("--theta-b", geo.theta_b, "Polar angle of the second endpoint")->required();
        run = [&] { return cmd_geodesic(geo); };
    } else if (command == "sample") {
        app.add_option("--dim", sample_dim, "State dimension")->capture_default_str();
        app.add_option("--count", sample_count, "Number of states")->capture_default_str();
        app.add_flag("--bare", sample_bare, "Write one state in the plain state-file format");
        run = [&] { return cmd_sample(sample_dim, sample_count, sample_bare, common.seed); };
    } else {
        err << "qgeo: unknown command '" << command << "'\n" << kUsage;
        return kExitValidation;
    }

    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rest);
    } catch (const CLI::ParseError &e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        const Output o = run();
        emit(o, common, out);
        return o.status;
    } catch (const Error &e) {
        err << "qgeo " << command << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const UsageError &e) {
        err << "qgeo " << command << ": " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception &e) {
        err << "qgeo " << command << ": internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace qgeo::cli
