// tests/acceptance.cpp

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

// Acceptance harness: one PASS/FAIL/SKIP line per criterion. Exits nonzero
// if any criterion fails. Set DCTFACE_ORL_DIR to the AT&T face database
// (s1/1.pgm ... s40/10.pgm) to run the optional real-data check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "dctface/commands.hpp"
#include "oracles.hpp"

using namespace dctface;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  enum { kPass, kFail, kSkip } status;
  std::string detail;
};

Outcome Pass(std::string d) { return {Outcome::kPass, std::move(d)}; }
Outcome Fail(std::string d) { return {Outcome::kFail, std::move(d)}; }

std::string Fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::vector<double> Vec(std::span<const double> s) { return {s.begin(), s.end()}; }

Outcome DctRoundTrip() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  double worst_inf = 0, worst_energy = 0;
  for (int i = 0; i < 200; ++i) {
    GrayPlane p(64, 64, oracle::RandomVector(rng, 64 * 64, 0, 1));
    const auto spec = Dct2(p);
    const auto back = Idct2(spec);
    double e_plane = 0, e_spec = 0;
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      worst_inf = std::max(worst_inf, std::abs(p.values[k] - back.values[k]));
      e_plane += p.values[k] * p.values[k];
      e_spec += spec.coeffs[k] * spec.coeffs[k];
    }
    worst_energy = std::max(worst_energy, std::abs(e_spec - e_plane) / e_plane);
  }
  const double t = Seconds(start);
  const auto d = Fmt("max|p-idct(dct(p))|=%.3g, energy rel err=%.3g, %.2fs",
                     worst_inf, worst_energy, t);
  return worst_inf < 1e-9 && worst_energy < 1e-9 && t < 5 ? Pass(d) : Fail(d);
}

Outcome IdentificationOracle() {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> u(0, 5);
  for (int inst = 0; inst < 50; ++inst) {
    const std::size_t n = 1 + rng() % 6, t = 1 + rng() % 4;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));
    ScoreTensor s(ids, ids, t, Metric::kMse);
    // Odd instances use a coarse grid so that ties actually occur.
    for (auto &v : s.values()) v = inst % 2 ? std::floor(u(rng)) : u(rng);
    const auto brute = oracle::BruteSuccesses(
        n, n, t, [&](auto i, auto j, auto k) { return s.at(i, j, k); },
        [&](auto i) { return s.genuine_column(i); });
    const auto got = IdentificationRate(s);
    if (got.successes != brute || got.rate() != double(brute) / double(n * t))
      return Fail(Fmt("instance %d: %zu vs brute %zu", inst, got.successes, brute));
  }
  return Pass("50 instances agree exactly");
}

Outcome MinDcfOracle() {
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> prior(0.01, 0.99), cost(0.1, 10);
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t ng = 1 + rng() % 60, ni = 1 + rng() % (200 - ng);
    std::normal_distribution<double> gen(0, 1), imp(1.5, 1);
    std::vector<double> g(ng), im(ni);
    for (auto &x : g) x = inst % 3 ? gen(rng) : std::round(gen(rng) * 2);
    for (auto &x : im) x = inst % 3 ? imp(rng) : std::round(imp(rng) * 2);
    const TrialScores trials(g, im);
    const DcfParams params{cost(rng), cost(rng), prior(rng)};
    const auto got = MinDcf(trials, params);
    const double brute = oracle::BruteMinDcf(Vec(trials.genuine()),
                                             Vec(trials.impostor()),
                                             params.c_miss, params.c_fa,
                                             params.p_true);
    if (got.value != brute)
      return Fail(Fmt("instance %d: %.17g vs brute %.17g", inst, got.value, brute));
    std::uniform_real_distribution<double> th(-5, 7);
    for (int k = 0; k < 1000; ++k)
      if (got.value > Dcf(trials, th(rng), params))
        return Fail(Fmt("instance %d: minDcf above a sampled DCF", inst));
  }
  return Pass("100 instances exact; 100000 sampled thresholds bounded");
}

Outcome EerAnalytic() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1004);
  std::normal_distribution<double> gen(0, 1), imp(2, 1);
  std::vector<double> g(100000), im(100000);
  for (auto &x : g) x = gen(rng);
  for (auto &x : im) x = imp(rng);
  const double eer = Eer(TrialScores(std::move(g), std::move(im)));
  const double t = Seconds(start);
  const double target = NormalCdf(-1.0);
  const auto d = Fmt("EER=%.5f, Phi(-1)=%.5f, %.2fs", eer, target, t);
  return std::abs(eer - target) <= 0.01 && t < 10 ? Pass(d) : Fail(d);
}

Outcome SignificanceArithmetic() {
  const double orl = MinResolvableErrorRate(8000, SizingRule::kSimplified);
  if (orl != 0.0125) return Fail(Fmt("8000 -> %.17g", orl));
  const double feret = MinResolvableErrorRate(986048, SizingRule::kSimplified);
  // 100/986048 = 1.014148e-4. The quoted 1.0142e-4 is that value rounded
  // twice (via 1.01415), so it is held to one unit in its last digit.
  if (feret != 100.0 / 986048 || std::abs(feret - 1.0142e-4) > 1e-8)
    return Fail(Fmt("986048 -> %.7g", feret));
  if (std::round(feret * 100 * 100) / 100 != 0.01)
    return Fail(Fmt("986048 -> %.6g%% does not round to 0.01%%", feret * 100));
  std::string d = Fmt("8000->%.4f%%, 986048->%.6e", orl * 100, feret);
  // 74.893 is -ln(0.05)/0.2^2 = 74.8933 written to three decimals. The exact
  // value and the rounded constant agree except where the dropped digits
  // cross an integer, so accept any count the constant's precision allows.
  const double k = -std::log(0.05) / 0.04;
  for (double p : {0.1, 0.01, 0.001}) {
    const auto n = RequiredN({0.05, 0.2, p});
    const auto lo = std::uint64_t(std::ceil((74.893 - 0.0005) / p));
    const auto hi = std::uint64_t(std::ceil((74.893 + 0.0005) / p));
    const auto exact = std::uint64_t(std::ceil(k / p));
    const auto stated = std::uint64_t(std::ceil(74.893 / p));
    d += Fmt(", p=%g->%llu (ceil(74.893/p)=%llu)", p, (unsigned long long)n,
             (unsigned long long)stated);
    if (n != exact || n < lo || n > hi) return Fail(d);
  }
  return Pass(d);
}

Outcome TrialCounts() {
  std::mt19937_64 rng(1006);
  auto run = [&](int probe_subjects, int gallery_subjects, int per_subject,
                 int dim) {
    Gallery gallery;
    ProbeSet probes;
    for (int s = 0; s < gallery_subjects; ++s) {
      const std::string id = Fmt("c%04d", s);
      for (int t = 0; t < per_subject; ++t)
        gallery.Enroll(id, FeatureVector(oracle::RandomVector(rng, dim),
                                         SourceChannel::kGray));
      if (s < probe_subjects)
        for (int t = 0; t < per_subject; ++t)
          probes[id].push_back(FeatureVector(oracle::RandomVector(rng, dim),
                                             SourceChannel::kGray));
    }
    const auto tensor = BuildScoreTensor(probes, gallery, Metric::kMad);
    const auto trials = SplitIntraInter(tensor);
    return std::pair{trials.genuine().size(), trials.impostor().size()};
  };
  const auto [g1, i1] = run(40, 40, 5, 100);
  // FERET-shaped: 992 probe subjects matched against 994 enrolled ones.
  const auto [g2, i2] = run(992, 994, 1, 16);
  const auto d = Fmt("ORL %zu+%zu=%zu, FERET-shaped %zu+%zu=%zu", g1, i1, g1 + i1,
                     g2, i2, g2 + i2);
  return g1 == 200 && i1 == 7800 && g2 + i2 == 986048 ? Pass(d) : Fail(d);
}

fs::path Scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("dctface_accept_" + name);
  fs::remove_all(dir);
  return dir;
}

Outcome SyntheticEndToEnd() {
  const double levels[] = {0, 0.3, 0.6, 1.0, 10};
  std::string d;
  double previous = 2, last = 0;
  bool ok = true;
  for (double sigma : levels) {
    SynthSpec spec;
    spec.sigma = sigma;
    spec.seed = 7;
    const fs::path dir = Scratch("sigma");
    const auto manifest = GenerateDataset(spec, dir);
    const auto run = RunChannelPipeline(manifest, SplitSpec::Orl(),
                                        SourceChannel::kGray, Metric::kMad, 100,
                                        64, DcfParams{});
    fs::remove_all(dir);
    const double rate = run.evaluation.identification.rate();
    d += Fmt("%ssigma=%g rate=%.3f minDcf=%.3f", d.empty() ? "" : ", ", sigma,
             rate, run.evaluation.min_dcf.value);
    if (sigma == 0 && (rate != 1.0 || run.evaluation.min_dcf.value != 0.0)) ok = false;
    if (rate > previous) ok = false;
    previous = last = rate;
  }
  // Chance is 1/40 over 200 trials; allow three binomial standard errors.
  const double chance = 1.0 / 40, se = std::sqrt(chance * (1 - chance) / 200);
  if (last > chance + 3 * se) ok = false;
  return ok ? Pass(d) : Fail(d);
}

bool SameEvaluation(const Evaluation &a, const Evaluation &b) {
  return a.identification.successes == b.identification.successes &&
         a.eer == b.eer && a.min_dcf.value == b.min_dcf.value;
}

Outcome FusionConsistency() {
  SynthSpec spec;
  spec.sigma = 0.8;
  spec.seed = 11;
  spec.color = "RGB";
  const fs::path dir = Scratch("fusion");
  const auto manifest = GenerateDataset(spec, dir);
  std::vector<ScoreTensor> rgb;
  Evaluation r_only;
  for (SourceChannel c : {SourceChannel::kRed, SourceChannel::kGreen,
                          SourceChannel::kBlue}) {
    auto run = RunChannelPipeline(manifest, SplitSpec::Orl(), c, Metric::kMad,
                                  100, 64, DcfParams{});
    if (c == SourceChannel::kRed) r_only = run.evaluation;
    rgb.push_back(std::move(run.tensor));
  }
  fs::remove_all(dir);

  const std::vector<double> one_hot{1, 0, 0}, ones{1, 1, 1},
      lum{0.3, 0.59, 0.11}, lum_scaled{0.3 * 3.7, 0.59 * 3.7, 0.11 * 3.7};
  const auto first = FuseScoresWeighted(rgb, one_hot);
  if (!(first == rgb[0]))
    return Fail("weights (1,0,0) differ from the R tensor");
  if (!SameEvaluation(EvaluateTensor(first, DcfParams{}), r_only))
    return Fail("weights (1,0,0) change the R-only results");
  if (!(FuseScoresWeighted(rgb, ones) == FuseScoresSum(rgb)))
    return Fail("weights (1,1,1) differ from the plain sum");
  const auto a = EvaluateTensor(FuseScoresWeighted(rgb, lum), DcfParams{});
  const auto b = EvaluateTensor(FuseScoresWeighted(rgb, lum_scaled), DcfParams{});
  const auto d = Fmt("R rate=%.3f; weighted rate=%.3f eer=%.4f minDcf=%.4f; "
                     "x3.7 rate=%.3f eer=%.4f minDcf=%.4f",
                     r_only.identification.rate(), a.identification.rate(), a.eer,
                     a.min_dcf.value, b.identification.rate(), b.eer,
                     b.min_dcf.value);
  return SameEvaluation(a, b) ? Pass(d) : Fail(d);
}

Outcome MonotoneInvariance() {
  SynthSpec spec;
  spec.sigma = 1.0;
  spec.seed = 13;
  const fs::path dir = Scratch("monotone");
  const auto manifest = GenerateDataset(spec, dir);
  const auto run = RunChannelPipeline(manifest, SplitSpec::Orl(),
                                      SourceChannel::kGray, Metric::kMse, 100, 64,
                                      DcfParams{});
  fs::remove_all(dir);
  ScoreTensor mapped = run.tensor;
  for (auto &v : mapped.values()) v = v * v * v + v;
  const auto before = run.evaluation;
  const auto after = EvaluateTensor(mapped, DcfParams{});
  if (after.identification.successes != before.identification.successes)
    return Fail("identification rate changed");
  if (after.det.size() != before.det.size()) return Fail("DET size changed");
  for (std::size_t i = 0; i < after.det.size(); ++i)
    if (after.det[i].p_fa != before.det[i].p_fa ||
        after.det[i].p_miss != before.det[i].p_miss)
      return Fail(Fmt("DET point %zu changed", i));
  return Pass(Fmt("rate=%.3f, %zu DET points unchanged",
                  before.identification.rate(), before.det.size()));
}

Outcome OrlDataset() {
  const char *root = std::getenv("DCTFACE_ORL_DIR");
  if (!root || !*root)
    return {Outcome::kSkip, "set DCTFACE_ORL_DIR to the AT&T face database"};
  DatasetManifest manifest;
  manifest.root = root;
  for (int s = 1; s <= 40; ++s)
    for (int k = 1; k <= 10; ++k)
      manifest.subjects[Fmt("s%02d", s)].push_back(Fmt("s%d/%d.pgm", s, k));
  const auto run = RunChannelPipeline(manifest, SplitSpec::Orl(),
                                      SourceChannel::kGray, Metric::kMad, 100,
                                      64, DcfParams{});
  const double rate = run.evaluation.identification.rate();
  const auto d = Fmt("MAD rate=%.4f (%zu/200), eer=%.4f", rate,
                     run.evaluation.identification.successes, run.evaluation.eer);
  return rate >= 0.85 ? Pass(d) : Fail(d);
}

}  // namespace

int main() {
  const std::pair<const char *, std::function<Outcome()>> criteria[] = {
      {"DCT round trip and energy", DctRoundTrip},
      {"identification rate vs brute force", IdentificationOracle},
      {"minDCF vs exhaustive thresholds", MinDcfOracle},
      {"EER of two unit Gaussians at d'=2", EerAnalytic},
      {"significance arithmetic", SignificanceArithmetic},
      {"trial counts", TrialCounts},
      {"synthetic end to end", SyntheticEndToEnd},
      {"fusion consistency", FusionConsistency},
      {"monotone score maps", MonotoneInvariance},
      {"ORL database (optional)", OrlDataset},
  };
  int failures = 0, index = 0;
  for (const auto &[name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception &e) {
      o = Fail(std::string("exception: ") + e.what());
    }
    const char *tag = o.status == Outcome::kPass   ? "PASS"
                      : o.status == Outcome::kSkip ? "SKIP"
                                                   : "FAIL";
    failures += o.status == Outcome::kFail;
    std::printf("[%s] %2d %s: %s\n", tag, index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
