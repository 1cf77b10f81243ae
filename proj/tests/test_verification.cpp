// tests/test_verification.cpp

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
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dctface/verification.hpp"
#include "oracles.hpp"

using namespace dctface;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TrialScores RandomTrials(std::mt19937_64 &rng, bool discrete) {
  const std::size_t ng = 1 + rng() % 12, ni = 1 + rng() % 30;
  std::uniform_real_distribution<double> u(0, 10);
  std::uniform_int_distribution<int> level(0, 5);
  std::vector<double> g(ng), im(ni);
  for (auto &x : g) x = discrete ? level(rng) : u(rng);
  for (auto &x : im) x = discrete ? level(rng) + 1 : u(rng) + 2;
  return TrialScores(g, im);
}

std::vector<double> Vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("TrialScores validation") {
  CHECK_THROWS_AS(TrialScores({}, {1.0}), ValidationError);
  CHECK_THROWS_AS(TrialScores({1.0}, {}), ValidationError);
  CHECK_THROWS_AS(TrialScores({1.0}, {NAN}), ValidationError);
  CHECK_THROWS_AS(TrialScores({kInf}, {1.0}), ValidationError);
  const TrialScores t({3, 1, 2}, {-1, 5});
  CHECK(Vec(t.genuine()) == std::vector<double>{1, 2, 3});
}

TEST_CASE("FarFrrAt") {
  const TrialScores t({1, 2}, {3, 4});
  auto r = FarFrrAt(t, 2.5);
  CHECK(r.p_fa == 0);
  CHECK(r.p_miss == 0);
  r = FarFrrAt(t, 2);  // accept iff score <= threshold
  CHECK(r.p_miss == 0);
  r = FarFrrAt(t, 1.5);
  CHECK(r.p_miss == 0.5);
  r = FarFrrAt(t, 3);
  CHECK(r.p_fa == 0.5);
  r = FarFrrAt(t, kInf);
  CHECK(r.p_fa == 1);
  CHECK(r.p_miss == 0);
  r = FarFrrAt(t, -kInf);
  CHECK(r.p_fa == 0);
  CHECK(r.p_miss == 1);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = RandomTrials(rng, trial % 2);
    const double th = std::uniform_real_distribution<double>(-1, 13)(rng);
    const auto a = FarFrrAt(s, th);
    const auto b = oracle::CountRates(Vec(s.genuine()), Vec(s.impostor()), th);
    CHECK(a.p_fa == b.p_fa);
    CHECK(a.p_miss == b.p_miss);
  }
}

TEST_CASE("DetCurve") {
  SUBCASE("interleaved staircase") {
    const auto curve = DetCurve(TrialScores({1, 3}, {2, 4}));
    REQUIRE(curve.size() == 5);
    const double th[] = {kInf, 3.5, 2.5, 1.5, -kInf};
    const double fa[] = {1, 0.5, 0.5, 0, 0};
    const double miss[] = {0, 0, 0.5, 0.5, 1};
    for (int i = 0; i < 5; ++i) {
      CHECK(curve[i].threshold == th[i]);
      CHECK(curve[i].p_fa == fa[i]);
      CHECK(curve[i].p_miss == miss[i]);
    }
  }
  SUBCASE("every point agrees with linear counting; rates are monotone") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = RandomTrials(rng, trial % 2);
      const auto curve = DetCurve(s);
      CHECK(curve.front().threshold == kInf);
      CHECK(curve.back().threshold == -kInf);
      for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto r = oracle::CountRates(Vec(s.genuine()), Vec(s.impostor()),
                                          curve[i].threshold);
        CHECK(curve[i].p_fa == r.p_fa);
        CHECK(curve[i].p_miss == r.p_miss);
        if (i > 0) {
          CHECK(curve[i].threshold < curve[i - 1].threshold);
          CHECK(curve[i].p_fa <= curve[i - 1].p_fa);
          CHECK(curve[i].p_miss >= curve[i - 1].p_miss);
        }
      }
    }
  }
  SUBCASE("adjacent doubles with no midpoint") {
    const double a = 1.0, b = std::nextafter(1.0, 2.0);
    const auto curve = DetCurve(TrialScores({a}, {b}));
    REQUIRE(curve.size() == 3);
    CHECK(curve[1].threshold == a);
    CHECK(curve[1].p_fa == 0);
    CHECK(curve[1].p_miss == 0);
  }
}

TEST_CASE("Eer") {
  CHECK(Eer(TrialScores({1, 2}, {3, 4})) == 0);
  CHECK(Eer(TrialScores({1, 2, 3}, {1, 2, 3})) == doctest::Approx(0.5));
  CHECK(Eer(TrialScores({5}, {5})) == doctest::Approx(0.5));
  CHECK(Eer(TrialScores({1, 3}, {2, 4})) == 0.5);
  // Fully inverted: every impostor beats every genuine.
  CHECK(Eer(TrialScores({3, 4}, {1, 2})) == doctest::Approx(1.0));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = RandomTrials(rng, trial % 2);
    const double e = Eer(s);
    CHECK(e >= 0);
    CHECK(e <= 1);
    // The crossing sits between the best and worst of the two error rates.
    double lo = 1;
    for (const auto &pt : DetCurve(s)) lo = std::min(lo, std::max(pt.p_fa, pt.p_miss));
    CHECK(e <= lo + 1e-12);
    // EER never falls below minDCF at equal costs and priors.
    CHECK(e + 1e-12 >= MinDcf(s, DcfParams{}).value);
  }
}

TEST_CASE("Dcf and MinDcf") {
  const TrialScores t({1, 3}, {2, 4});
  CHECK(Dcf(t, 2.5, DcfParams{}) == 0.5);
  CHECK(Dcf(t, kInf, DcfParams{}) == 0.5);
  CHECK(Dcf(t, 2.5, DcfParams{10, 1, 0.01}) ==
        doctest::Approx(10 * 0.5 * 0.01 + 0.5 * 0.99));
  CHECK(MinDcf(TrialScores({1, 2}, {3, 4}), DcfParams{}).value == 0);
  CHECK(MinDcf(TrialScores({1, 2}, {3, 4}), DcfParams{}).threshold == 2.5);
  CHECK_THROWS_AS(Dcf(t, 1, DcfParams{1, 1, 0}), ValidationError);
  CHECK_THROWS_AS(MinDcf(t, DcfParams{1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(MinDcf(t, DcfParams{-1, 1, 0.5}), ValidationError);

  // 3.5 and 1.5 tie at 0.25; the smaller threshold wins.
  CHECK(MinDcf(t, DcfParams{}).value == 0.25);
  CHECK(MinDcf(t, DcfParams{}).threshold == 1.5);
  CHECK(MinDcf(TrialScores({1}, {1}), DcfParams{}).threshold == -kInf);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> prior(0.01, 0.99), cost(0, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = RandomTrials(rng, trial % 2);
    const DcfParams p{cost(rng), cost(rng), prior(rng)};
    const auto m = MinDcf(s, p);
    CHECK(m.value == doctest::Approx(oracle::BruteMinDcf(
                         Vec(s.genuine()), Vec(s.impostor()), p.c_miss, p.c_fa,
                         p.p_true)).epsilon(1e-12));
    CHECK(Dcf(s, m.threshold, p) == doctest::Approx(m.value).epsilon(1e-12));

    double half_sum = kInf;
    for (const auto &pt : DetCurve(s)) half_sum = std::min(half_sum, pt.p_fa + pt.p_miss);
    CHECK(MinDcf(s, DcfParams{}).value == doctest::Approx(0.5 * half_sum));
  }
}

TEST_CASE("rates and minDCF are invariant under increasing score maps") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = RandomTrials(rng, trial % 2);
    auto map = [](std::span<const double> v) {
      std::vector<double> out;
      for (double x : v) out.push_back(std::exp(0.3 * x) + 7);
      return out;
    };
    const TrialScores m(map(s.genuine()), map(s.impostor()));
    CHECK(Eer(m) == doctest::Approx(Eer(s)).epsilon(1e-12));
    CHECK(MinDcf(m, DcfParams{}).value == MinDcf(s, DcfParams{}).value);
    const auto a = DetCurve(s), b = DetCurve(m);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].p_fa == b[i].p_fa);
      CHECK(a[i].p_miss == b[i].p_miss);
    }
  }
}

TEST_CASE("SplitIntraInter") {
  ScoreTensor s({"a", "b", "c"}, {"a", "b", "c"}, 2, Metric::kMse);
  double v = 0;
  for (auto &x : s.values()) x = v++;
  const auto t = SplitIntraInter(s);
  CHECK(t.genuine().size() == 6);
  CHECK(t.impostor().size() == 12);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      const double g = s.at(i, i, k);
      CHECK(std::count(t.genuine().begin(), t.genuine().end(), g) == 1);
    }
  ScoreTensor one({"a"}, {"a"}, 3, Metric::kMse);
  CHECK_THROWS_AS(SplitIntraInter(one), ValidationError);
}

TEST_CASE("NormalDeviate") {
  CHECK(NormalDeviate(0.5) == 0);
  CHECK(NormalDeviate(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(NormalDeviate(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-12));
  CHECK(NormalDeviate(1e-6) == doctest::Approx(-4.753424308822899).epsilon(1e-10));
  CHECK_THROWS_AS(NormalDeviate(0), ValidationError);
  CHECK_THROWS_AS(NormalDeviate(1), ValidationError);
  CHECK_THROWS_AS(NormalDeviate(-0.1), ValidationError);
  CHECK_THROWS_AS(NormalDeviate(NAN), ValidationError);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(1e-9, 1 - 1e-9);
  for (int trial = 0; trial < 500; ++trial) {
    const double p = u(rng);
    const double x = NormalDeviate(p);
    CHECK(std::abs(NormalCdf(x) - p) <= 1e-8);
    CHECK(std::abs(x - oracle::ProbitByBisection(p)) <= 1e-8);
    CHECK(NormalDeviate(1 - p) == doctest::Approx(-x).epsilon(1e-9));
  }
}

TEST_CASE("DET exports") {
  const auto curve = DetCurve(TrialScores({1, 3}, {2, 4}));
  std::ostringstream csv;
  WriteDetCsv(curve, csv);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "threshold,pFa,pMiss,probit_pFa,probit_pMiss");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == curve.size());
  CHECK(csv.str().find("inf,1,0,") != std::string::npos);

  std::ostringstream svg;
  WriteDetSvg(curve, 0.5, svg);
  CHECK(svg.str().rfind("<svg", 0) == 0);
  CHECK(svg.str().find("</svg>") != std::string::npos);
}
