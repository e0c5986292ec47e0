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

#include <vector>

#include <benchmark/benchmark.h>

#include "qgeo/bloch_geometry.h"
#include "qgeo/errors.h"
#include "qgeo/metrics.h"
#include "qgeo/monotonicity_lab.h"
#include "qgeo/quantum_states.h"
#include "qgeo/thermal_spin_qubit.h"

namespace {

using namespace qgeo;

std::vector<DensityOperator> states(Eigen::Index dim, std::size_t count) {
    Rng rng(7);
    std::vector<DensityOperator> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(sample_zhsl(dim, rng));
    }
    return out;
}

template <double (*Distance)(const DensityOperator &, const DensityOperator &)>
void BM_Distance(benchmark::State &state) {
    const auto rho = states(state.range(0), 64);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Distance(rho[i % 64], rho[(i + 1) % 64]));
        ++i;
    }
}
BENCHMARK_TEMPLATE(BM_Distance, bures_distance)->DenseRange(2, 8, 2);
BENCHMARK_TEMPLATE(BM_Distance, generalized_sjoqvist_distance)->DenseRange(2, 8, 2);
BENCHMARK_TEMPLATE(BM_Distance, fidelity)->DenseRange(2, 8, 2);

void BM_SjoqvistDistance(benchmark::State &state) {
    const auto rho = states(state.range(0), 64);
    std::size_t i = 0;
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(sjoqvist_distance(rho[i % 64], rho[(i + 1) % 64]));
        } catch (const Error &) {
        }
        ++i;
    }
}
BENCHMARK(BM_SjoqvistDistance)->DenseRange(2, 8, 2);

void BM_SampleZhsl(benchmark::State &state) {
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_zhsl(state.range(0), rng));
    }
}
BENCHMARK(BM_SampleZhsl)->RangeMultiplier(2)->Range(2, 32);

void BM_SampleCptp(benchmark::State &state) {
    Rng rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_cptp(2, state.range(0), rng));
    }
}
BENCHMARK(BM_SampleCptp)->DenseRange(1, 4);

void BM_BuresLineElement(benchmark::State &state) {
    const StateCurve curve = [](double t) { return spin_qubit_thermal({0.4, 0.3, t, 1.2, 1.0}).state; };
    for (auto _ : state) {
        benchmark::DoNotOptimize(bures_line_element(curve, 0.7, 1.0));
    }
}
BENCHMARK(BM_BuresLineElement);

void BM_AnalyticMetric(benchmark::State &state) {
    const FieldParams p{0.4, 0.3, 0.7, 1.2, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic_metric(p, MetricKind::Bures));
    }
}
BENCHMARK(BM_AnalyticMetric);

void BM_ContractivityTrials(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            check_contractivity(ContractivityMetric::BuresDistance, {2, 100, 3, 0, 1, 1000}).mean_margin);
    }
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_ContractivityTrials);

void BM_VolumeQuadrature(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_volume_density({VolumeKind::Zhsl, 2.0}));
    }
}
BENCHMARK(BM_VolumeQuadrature);

}  // namespace

BENCHMARK_MAIN();
