// tests/test_significance.cpp

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

#include <cmath>
#include <random>

#include "doctest.h"
#include "dctface/error.hpp"
#include "dctface/significance.hpp"

using namespace dctface;

TEST_CASE("RequiredN") {
  CHECK(RequiredN({}) == 7490);  // -ln 0.05 / (0.04 * 0.01) = 7489.33
  CHECK(RequiredN({0.05, 0.2, 0.001}) == 74894);
  CHECK(RequiredN({std::exp(-1.0), 1.0, 1.0}) == 1);
  CHECK(RequiredN({std::exp(-1.0), 1.0, 0.25}) == 4);
  CHECK(RequiredN({std::exp(-2.0), 0.5, 0.5}) == 16);
  CHECK_THROWS_AS(RequiredN({0, 0.2, 0.01}), ValidationError);
  CHECK_THROWS_AS(RequiredN({1, 0.2, 0.01}), ValidationError);
  CHECK_THROWS_AS(RequiredN({0.05, 0, 0.01}), ValidationError);
  CHECK_THROWS_AS(RequiredN({0.05, 1.2, 0.01}), ValidationError);
  CHECK_THROWS_AS(RequiredN({0.05, 0.2, 0}), ValidationError);
  CHECK_THROWS_AS(RequiredN({0.05, 0.2, 1.5}), ValidationError);
}

TEST_CASE("SimplifiedN") {
  CHECK(SimplifiedN(0.01) == 10000);
  CHECK(SimplifiedN(0.001) == 100000);
  CHECK(SimplifiedN(0.5) == 200);
  CHECK(SimplifiedN(0.3) == 334);
  CHECK_THROWS_AS(SimplifiedN(0), ValidationError);
  CHECK_THROWS_AS(SimplifiedN(1), ValidationError);
  // The simplified rule is conservative at its defaults.
  for (double p : {0.5, 0.1, 0.01, 0.003, 1e-4}) CHECK(SimplifiedN(p) >= RequiredN({0.05, 0.2, p}));
}

TEST_CASE("MinResolvableErrorRate") {
  CHECK(MinResolvableErrorRate(8000, SizingRule::kSimplified) == 0.0125);
  CHECK(MinResolvableErrorRate(10000, SizingRule::kSimplified) == 0.01);
  CHECK(MinResolvableErrorRate(7490, SizingRule::kExact) ==
        doctest::Approx(-std::log(0.05) / (0.04 * 7490)));
  CHECK_THROWS_AS(MinResolvableErrorRate(0, SizingRule::kExact), ValidationError);
  CHECK_THROWS_AS(MinResolvableErrorRate(10, SizingRule::kExact, 0), ValidationError);
}

TEST_CASE("RequiredN and MinResolvableErrorRate are inverse") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> a(0.001, 0.5), b(0.05, 1), p(1e-5, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const SignificanceParams s{a(rng), b(rng), p(rng)};
    const auto n = RequiredN(s);
    CHECK(n >= 1);
    // Counts are snapped to an integer within 1e-9, hence the slack.
    CHECK(MinResolvableErrorRate(n, SizingRule::kExact, s.alpha, s.beta) <=
          s.p * (1 + 1e-9));
    if (n > 1)
      CHECK(MinResolvableErrorRate(n - 1, SizingRule::kExact, s.alpha, s.beta) > s.p);
  }
}
