// bench/bench_kernels.cpp

// Copyright 2026  The dctface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels on ORL-sized workloads.

#include <random>

#include <benchmark/benchmark.h>

#include "dctface/kernels.hpp"

using namespace dctface;

namespace {

std::vector<FeatureVector> RandomVectors(std::size_t n, std::size_t dim,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0, 1);
  std::vector<FeatureVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(dim);
    for (auto &x : c) x = z(rng);
    out.emplace_back(std::move(c), SourceChannel::kGray);
  }
  return out;
}

void BM_NearestTemplates(benchmark::State &state) {
  const auto exec = static_cast<kernels::Execution>(state.range(0));
  const std::size_t subjects = state.range(1);
  const auto templates = RandomVectors(subjects * 5, 100, 1);
  const auto probes = RandomVectors(subjects * 5, 100, 2);
  kernels::TemplateBank bank;
  for (std::size_t s = 0; s < subjects; ++s)
    bank.AddSubject(std::span(templates).subspan(s * 5, 5));
  std::vector<double> packed;
  for (const auto &p : probes)
    packed.insert(packed.end(), p.coeffs().begin(), p.coeffs().end());
  std::vector<double> out(probes.size() * subjects);
  for (auto _ : state) {
    kernels::NearestTemplateDistances(packed, bank, Metric::kMad, out, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * out.size());
}

void BM_ExtractBatch(benchmark::State &state) {
  const auto exec = static_cast<kernels::Execution>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<GrayPlane> planes;
  for (int i = 0; i < state.range(1); ++i) {
    GrayPlane p(64, 64);
    for (auto &v : p.values) v = u(rng);
    planes.push_back(std::move(p));
  }
  for (auto _ : state) {
    auto v = kernels::ExtractBatch(planes, 100, SourceChannel::kGray, exec);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * planes.size());
}

constexpr int kSerial = static_cast<int>(kernels::Execution::kSerial);
constexpr int kParallel = static_cast<int>(kernels::Execution::kParallel);

}  // namespace

BENCHMARK(BM_NearestTemplates)
    ->ArgNames({"parallel", "subjects"})
    ->Args({kSerial, 40})
    ->Args({kParallel, 40})
    ->Args({kSerial, 400})
    ->Args({kParallel, 400});
BENCHMARK(BM_ExtractBatch)
    ->ArgNames({"parallel", "planes"})
    ->Args({kSerial, 200})
    ->Args({kParallel, 200});

BENCHMARK_MAIN();
