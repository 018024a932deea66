/*
 Copyright 2026 The hocbf Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
// Serial reference vs OpenMP kernels: batched HOCBF rows and penalty sweeps.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hocbf/acc.hpp"
#include "hocbf/hocbf.hpp"

namespace {

std::vector<hocbf::State> random_states(std::size_t count) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> z(10.0, 110.0), v(0.0, 30.0);
    std::vector<hocbf::State> states;
    states.reserve(count);
    for (std::size_t i = 0; i < count; ++i) states.push_back(hocbf::acc::AccState{z(rng), v(rng)}.to_state());
    return states;
}

void BM_HocbfRows(benchmark::State& state, hocbf::Execution exec) {
    auto params = hocbf::acc::AccParams::table1();
    params.form = hocbf::acc::Form::quadratic;
    params.p = 0.02;
    const auto spec = hocbf::acc::safety_hocbf(params);
    const auto states = random_states(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto rows = hocbf::hocbf_constraints(spec, states, exec, hocbf::PsiPolicy::clamp);
        benchmark::DoNotOptimize(rows.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PenaltySweep(benchmark::State& state, hocbf::Execution exec) {
    hocbf::acc::RunSpec base;
    base.params.form = hocbf::acc::Form::quadratic;
    std::vector<double> ps;
    for (int i = 0; i < state.range(0); ++i) ps.push_back(0.02 + 0.01 * i);
    for (auto _ : state) {
        auto rows = hocbf::acc::sweep(base, "p", ps, exec);
        benchmark::DoNotOptimize(rows.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_HocbfRows, serial, hocbf::Execution::serial)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK_CAPTURE(BM_HocbfRows, parallel, hocbf::Execution::parallel)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK_CAPTURE(BM_PenaltySweep, serial, hocbf::Execution::serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PenaltySweep, parallel, hocbf::Execution::parallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
