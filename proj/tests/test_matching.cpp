// tests/test_matching.cpp

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

#include <cstring>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dctface/matching.hpp"
#include "oracles.hpp"

using namespace dctface;

namespace {

FeatureVector V(std::vector<double> c) {
  return FeatureVector(std::move(c), SourceChannel::kGray);
}

ScoreTensor RandomTensor(std::mt19937_64 &rng, std::size_t n, std::size_t t,
                         int levels = 0) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("id" + std::to_string(i));
  ScoreTensor s(ids, ids, t, Metric::kMad);
  std::uniform_real_distribution<double> u(0, 10);
  std::uniform_int_distribution<int> level(0, std::max(levels - 1, 0));
  for (auto &v : s.values()) v = levels > 0 ? double(level(rng)) : u(rng);
  return s;
}

std::size_t Brute(const ScoreTensor &s) {
  return oracle::BruteSuccesses(
      s.probe_count(), s.model_count(), s.trials(),
      [&](std::size_t i, std::size_t j, std::size_t k) { return s.at(i, j, k); },
      [&](std::size_t i) { return s.genuine_column(i); });
}

}  // namespace

TEST_CASE("Mse and Mad") {
  CHECK(Mse(V({1, 2}), V({0, 0})) == 5);
  CHECK(Mad(V({1, 2}), V({0, 0})) == 3);
  CHECK(Mse(V({1, 2, 3}), V({1, 2, 3})) == 0);
  CHECK(Mad(V({1, 2, 3}), V({1, 2, 3})) == 0);
  CHECK_THROWS_AS(Mse(V({1}), V({1, 2})), ValidationError);
  CHECK_THROWS_AS(Mad(V({1}), V({1, 2})), ValidationError);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = V(oracle::RandomVector(rng, 10)), y = V(oracle::RandomVector(rng, 10)),
               z = V(oracle::RandomVector(rng, 10));
    CHECK(Mse(x, y) == Mse(y, x));
    CHECK(Mad(x, y) == Mad(y, x));
    CHECK(Mse(x, y) > 0);
    CHECK(Mad(x, z) <= Mad(x, y) + Mad(y, z) + 1e-12);
  }
}

TEST_CASE("PersonScore takes the nearest template") {
  const std::vector<FeatureVector> two{V({0, 0}), V({10, 10})};
  CHECK(PersonScore(V({1, 0}), two, Metric::kMad) == 1);
  CHECK(PersonScore(V({10, 10}), two, Metric::kMse) == 0);
  CHECK(PersonScore(V({3, 4}), {V({0, 0})}, Metric::kMse) == 25);
  CHECK_THROWS_AS(PersonScore(V({1}), {}, Metric::kMse), ValidationError);
}

TEST_CASE("BuildScoreTensor") {
  SUBCASE("hand-set 2x2x1 tensor equals direct metric calls") {
    Gallery g;
    g.Enroll("a", V({0, 0}));
    g.Enroll("a", V({4, 4}));
    g.Enroll("b", V({1, 3}));
    ProbeSet probes{{"a", {V({1, 1})}}, {"b", {V({2, 2})}}};
    const auto s = BuildScoreTensor(probes, g, Metric::kMse);
    CHECK(s.probe_count() == 2);
    CHECK(s.trials() == 1);
    CHECK(s.at(0, 0, 0) == 2);  // min(2, 18)
    CHECK(s.at(0, 1, 0) == 4);
    CHECK(s.at(1, 0, 0) == 8);
    CHECK(s.at(1, 1, 0) == 2);
  }
  SUBCASE("ORL-shaped tensor has 8000 cells") {
    std::mt19937_64 rng(2);
    Gallery g;
    ProbeSet probes;
    for (int s = 0; s < 40; ++s) {
      const std::string id = "s" + std::to_string(10 + s);
      for (int t = 0; t < 5; ++t) {
        g.Enroll(id, V(oracle::RandomVector(rng, 100)));
        probes[id].push_back(V(oracle::RandomVector(rng, 100)));
      }
    }
    const auto s = BuildScoreTensor(probes, g, Metric::kMad);
    CHECK(s.probe_count() == 40);
    CHECK(s.model_count() == 40);
    CHECK(s.trials() == 5);
    CHECK(s.size() == 8000);
  }
  SUBCASE("probes equal to templates give a zero diagonal and rate 1") {
    std::mt19937_64 rng(3);
    Gallery g;
    ProbeSet probes;
    for (int s = 0; s < 6; ++s)
      for (int t = 0; t < 3; ++t) {
        auto v = V(oracle::RandomVector(rng, 20));
        g.Enroll("x" + std::to_string(s), v);
        probes["x" + std::to_string(s)].push_back(v);
      }
    const auto s = BuildScoreTensor(probes, g, Metric::kMse);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t k = 0; k < 3; ++k) CHECK(s.at(i, i, k) == 0);
    CHECK(IdentificationRate(s).rate() == 1.0);
  }
  SUBCASE("errors") {
    Gallery g;
    g.Enroll("a", V({0, 0}));
    g.Enroll("b", V({1, 1}));
    CHECK_THROWS_AS(BuildScoreTensor({{"zz", {V({0, 0})}}}, g, Metric::kMse),
                    ValidationError);
    CHECK_THROWS_AS(BuildScoreTensor({{"a", {V({0, 0})}},
                                      {"b", {V({0, 0}), V({1, 1})}}},
                                     g, Metric::kMse),
                    ValidationError);
    CHECK_THROWS_AS(BuildScoreTensor({{"a", {V({0, 0, 0})}}}, g, Metric::kMse),
                    ValidationError);
  }
}

TEST_CASE("rectangular tensor: probe subjects are a subset of the gallery") {
  Gallery g;
  for (const char *id : {"a", "b", "c"}) g.Enroll(id, V({double(id[0]), 0}));
  const auto s = BuildScoreTensor({{"b", {V({98, 0})}}}, g, Metric::kMad);
  CHECK(s.probe_count() == 1);
  CHECK(s.model_count() == 3);
  CHECK(s.genuine_column(0) == 1);
  CHECK(s.at(0, 1, 0) == 0);
  CHECK(IdentificationRate(s).successes == 1);
}

TEST_CASE("parallel score kernel reproduces the serial one bit for bit") {
  std::mt19937_64 rng(5);
  Gallery g;
  ProbeSet probes;
  for (int s = 0; s < 23; ++s) {
    const std::string id = "p" + std::to_string(s);
    for (int t = 0; t < 1 + s % 4; ++t) g.Enroll(id, V(oracle::RandomVector(rng, 37)));
    for (int t = 0; t < 3; ++t) probes[id].push_back(V(oracle::RandomVector(rng, 37)));
  }
  for (Metric m : {Metric::kMse, Metric::kMad}) {
    const auto serial = BuildScoreTensor(probes, g, m, kernels::Execution::kSerial);
    const auto parallel = BuildScoreTensor(probes, g, m, kernels::Execution::kParallel);
    REQUIRE(serial.size() == parallel.size());
    CHECK(std::memcmp(serial.values().data(), parallel.values().data(),
                      serial.size() * sizeof(double)) == 0);
    // And each cell equals PersonScore.
    for (std::size_t i = 0; i < serial.probe_count(); ++i)
      for (std::size_t j = 0; j < serial.model_count(); ++j)
        for (std::size_t k = 0; k < serial.trials(); ++k)
          CHECK(serial.at(i, j, k) ==
                PersonScore(probes.at(serial.probe_ids()[i])[k],
                            g.templates(serial.model_ids()[j]), m));
  }
}

TEST_CASE("IdentificationRate") {
  SUBCASE("strictly smallest diagonal") {
    ScoreTensor s({"a", "b"}, {"a", "b"}, 2, Metric::kMse);
    s.at(0, 0, 0) = 1; s.at(0, 1, 0) = 2;
    s.at(0, 0, 1) = 1; s.at(0, 1, 1) = 2;
    s.at(1, 1, 0) = 0; s.at(1, 0, 0) = 5;
    s.at(1, 1, 1) = 3; s.at(1, 0, 1) = 4;
    auto r = IdentificationRate(s);
    CHECK(r.successes == 4);
    CHECK(r.rate() == 1.0);

    s.at(1, 0, 1) = 2;  // one off-diagonal winner
    r = IdentificationRate(s);
    CHECK(r.errors == 1);
    CHECK(r.rate() == 0.75);
  }
  SUBCASE("ties count as errors") {
    ScoreTensor s({"a", "b"}, {"a", "b"}, 1, Metric::kMse);
    s.at(0, 0, 0) = 1; s.at(0, 1, 0) = 1;
    s.at(1, 1, 0) = 0; s.at(1, 0, 0) = 2;
    const auto r = IdentificationRate(s);
    CHECK(r.successes == 1);
    CHECK(r.errors == 1);
    CHECK(r.rate() == 0.5);
  }
  SUBCASE("agrees with the brute-force decision rule") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = RandomTensor(rng, 1 + rng() % 6, 1 + rng() % 4, trial % 2 ? 3 : 0);
      CHECK(IdentificationRate(s).successes == Brute(s));
    }
  }
  SUBCASE("invariant under increasing maps and label permutations") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + rng() % 5, t = 1 + rng() % 3;
      const auto s = RandomTensor(rng, n, t, trial % 2 ? 4 : 0);
      const auto base = IdentificationRate(s).successes;
      ScoreTensor mapped = s;
      for (auto &v : mapped.values()) v = std::sqrt(v) + 2 * v;
      CHECK(IdentificationRate(mapped).successes == base);

      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      ScoreTensor permuted = s;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < t; ++k)
            permuted.at(perm[i], perm[j], k) = s.at(i, j, k);
      CHECK(IdentificationRate(permuted).successes == base);
    }
  }
}

TEST_CASE("tensor CSV round trip and validation") {
  std::mt19937_64 rng(12);
  const auto s = RandomTensor(rng, 4, 3);
  std::stringstream buf;
  WriteTensorCsv(s, buf);
  const auto back = ReadTensorCsv(buf, Metric::kMad);
  CHECK(back == s);

  std::stringstream missing("i,j,k,score\na,a,1,0\na,b,1,1\nb,a,1,2\n");
  CHECK_THROWS_AS(ReadTensorCsv(missing, Metric::kMse), DataError);
  std::stringstream dup("a,a,1,0\na,b,1,1\nb,a,1,2\na,a,1,3\n");
  CHECK_THROWS_AS(ReadTensorCsv(dup, Metric::kMse), DataError);
  std::stringstream negative("a,a,1,-1\n");
  CHECK_THROWS_AS(ReadTensorCsv(negative, Metric::kMse), DataError);
  std::stringstream unknown_probe("a,b,1,1\nb,b,1,0\n");
  // Row "a" has no column "a".
  CHECK_THROWS_AS(ReadTensorCsv(unknown_probe, Metric::kMse), DataError);
}
