// src/verification.cpp

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

#include "dctface/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace dctface {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckFinite(const std::vector<double> &v, const char *what) {
  if (v.empty())
    throw ValidationError(std::string("no ") + what + " trials");
  for (double x : v)
    if (!std::isfinite(x))
      throw ValidationError(std::string(what) + " score is not finite");
}

std::size_t CountAtMost(std::span<const double> sorted, double t) {
  return std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
}

}  // namespace

TrialScores::TrialScores(std::vector<double> genuine,
                         std::vector<double> impostor)
    : genuine_(std::move(genuine)), impostor_(std::move(impostor)) {
  CheckFinite(genuine_, "genuine");
  CheckFinite(impostor_, "impostor");
  std::sort(genuine_.begin(), genuine_.end());
  std::sort(impostor_.begin(), impostor_.end());
}

TrialScores SplitIntraInter(const ScoreTensor &tensor) {
  if (tensor.model_count() < 2)
    throw ValidationError("score tensor has no impostor trials");
  std::vector<double> genuine, impostor;
  genuine.reserve(tensor.probe_count() * tensor.trials());
  impostor.reserve(tensor.probe_count() * (tensor.model_count() - 1) *
                   tensor.trials());
  for (std::size_t i = 0; i < tensor.probe_count(); ++i) {
    const std::size_t g = tensor.genuine_column(i);
    for (std::size_t j = 0; j < tensor.model_count(); ++j)
      for (std::size_t k = 0; k < tensor.trials(); ++k)
        (j == g ? genuine : impostor).push_back(tensor.at(i, j, k));
  }
  return TrialScores(std::move(genuine), std::move(impostor));
}

ErrorRates FarFrrAt(const TrialScores &trials, double threshold) {
  const auto g = trials.genuine();
  const auto im = trials.impostor();
  ErrorRates r;
  r.p_fa = double(CountAtMost(im, threshold)) / double(im.size());
  r.p_miss = double(g.size() - CountAtMost(g, threshold)) / double(g.size());
  return r;
}

std::vector<double> CandidateThresholds(const TrialScores &trials) {
  std::vector<double> pooled;
  pooled.reserve(trials.genuine().size() + trials.impostor().size());
  std::merge(trials.genuine().begin(), trials.genuine().end(),
             trials.impostor().begin(), trials.impostor().end(),
             std::back_inserter(pooled));
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  std::vector<double> out;
  out.reserve(pooled.size() + 1);
  out.push_back(kInf);
  for (std::size_t i = pooled.size() - 1; i > 0; --i) {
    const double lo = pooled[i - 1], hi = pooled[i];
    double mid = lo / 2 + hi / 2;
    // Adjacent doubles have no midpoint; lo itself realizes the same
    // accept set {score <= lo}.
    if (!(mid > lo && mid < hi)) mid = lo;
    out.push_back(mid);
  }
  out.push_back(-kInf);
  return out;
}

std::vector<DetPoint> DetCurve(const TrialScores &trials) {
  const auto thresholds = CandidateThresholds(trials);
  std::vector<DetPoint> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto r = FarFrrAt(trials, t);
    curve.push_back({t, r.p_fa, r.p_miss});
  }
  return curve;
}

double Eer(std::span<const DetPoint> curve) {
  if (curve.empty()) throw ValidationError("empty DET curve");
  // p_fa - p_miss falls from +1 to -1 along the curve.
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const double d = curve[j].p_fa - curve[j].p_miss;
    if (d > 0) continue;
    if (d == 0 || j == 0) return curve[j].p_fa;
    const DetPoint &a = curve[j - 1], &b = curve[j];
    const double da = a.p_fa - a.p_miss;
    const double t = da / (da - d);
    return a.p_fa + t * (b.p_fa - a.p_fa);
  }
  return curve.back().p_fa;
}

double Eer(const TrialScores &trials) {
  const auto curve = DetCurve(trials);
  return Eer(curve);
}

void DcfParams::Validate() const {
  if (!(c_miss >= 0) || !(c_fa >= 0))
    throw ValidationError("DCF costs must be >= 0");
  if (!(p_true > 0 && p_true < 1))
    throw ValidationError("DCF target prior must be in (0, 1)");
}

namespace {

double DcfValue(const DcfParams &p, double p_miss, double p_fa) {
  return p.c_miss * p_miss * p.p_true + p.c_fa * p_fa * p.p_false();
}

}  // namespace

double Dcf(const TrialScores &trials, double threshold,
           const DcfParams &params) {
  params.Validate();
  const auto r = FarFrrAt(trials, threshold);
  return DcfValue(params, r.p_miss, r.p_fa);
}

MinDcfResult MinDcf(std::span<const DetPoint> curve, const DcfParams &params) {
  params.Validate();
  if (curve.empty()) throw ValidationError("empty DET curve");
  MinDcfResult best{kInf, kInf};
  // Thresholds descend, so "<=" leaves the smallest threshold among ties.
  for (const auto &pt : curve) {
    const double v = DcfValue(params, pt.p_miss, pt.p_fa);
    if (v <= best.value) best = {v, pt.threshold};
  }
  return best;
}

MinDcfResult MinDcf(const TrialScores &trials, const DcfParams &params) {
  const auto curve = DetCurve(trials);
  return MinDcf(curve, params);
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// P. J. Acklam's rational approximation of the normal quantile,
// relative error below 1.15e-9 over (0, 1).
double AcklamQuantile(double p) {
  static constexpr std::array<double, 6> a = {
      -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {
      -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {
      -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {
      7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  auto tail = [&](double q) {
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  };
  if (p < kLow) return tail(std::sqrt(-2.0 * std::log(p)));
  if (p > 1.0 - kLow) return -tail(std::sqrt(-2.0 * std::log1p(-p)));
  const double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double NormalDeviate(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ValidationError("normal deviate needs 0 < p < 1");
  if (p > 0.5) return -NormalDeviate(1.0 - p);
  double x = AcklamQuantile(p);
  // One Newton step on Phi(x) - p.
  const double density =
      std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (density > 0) x -= (NormalCdf(x) - p) / density;
  return x;
}

namespace {

double ClampedProbit(double p) {
  return NormalDeviate(std::clamp(p, kProbitClamp, 1.0 - kProbitClamp));
}

}  // namespace

void WriteDetCsv(std::span<const DetPoint> curve, std::ostream &out) {
  out << "threshold,pFa,pMiss,probit_pFa,probit_pMiss\n";
  for (const auto &pt : curve)
    out << FormatExact(pt.threshold) << ',' << FormatExact(pt.p_fa) << ','
        << FormatExact(pt.p_miss) << ',' << FormatExact(ClampedProbit(pt.p_fa))
        << ',' << FormatExact(ClampedProbit(pt.p_miss)) << '\n';
}

void WriteDetSvg(std::span<const DetPoint> curve, double eer,
                 std::ostream &out) {
  constexpr double kSize = 480, kMargin = 60;
  constexpr double kLowP = 0.001, kHighP = 0.8;
  const double lo = NormalDeviate(kLowP), hi = NormalDeviate(kHighP);
  auto px = [&](double p) {
    double z = std::clamp(ClampedProbit(p), lo, hi);
    return kMargin + (z - lo) / (hi - lo) * kSize;
  };
  auto py = [&](double p) {
    double z = std::clamp(ClampedProbit(p), lo, hi);
    return kMargin + kSize - (z - lo) / (hi - lo) * kSize;
  };
  char buf[160];
  const double total = kSize + 2 * kMargin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total
      << "\" height=\"" << total << "\" font-family=\"sans-serif\" "
      << "font-size=\"11\">\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kSize << "\" height=\"" << kSize
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double tick : {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.4,
                      0.6, 0.8}) {
    std::snprintf(buf, sizeof buf, "%g", tick * 100);
    const double x = px(tick), y = py(tick);
    out << "<line x1=\"" << x << "\" y1=\"" << kMargin << "\" x2=\"" << x
        << "\" y2=\"" << kMargin + kSize
        << "\" stroke=\"#ddd\"/>\n<text x=\"" << x << "\" y=\""
        << kMargin + kSize + 14 << "\" text-anchor=\"middle\">" << buf
        << "</text>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << y << "\" x2=\""
        << kMargin + kSize << "\" y2=\"" << y
        << "\" stroke=\"#ddd\"/>\n<text x=\"" << kMargin - 6 << "\" y=\""
        << y + 4 << "\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  out << "<text x=\"" << kMargin + kSize / 2 << "\" y=\"" << total - 14
      << "\" text-anchor=\"middle\">False Alarm probability (%)</text>\n";
  out << "<text x=\"16\" y=\"" << kMargin + kSize / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kMargin + kSize / 2 << ")\">Miss probability (%)</text>\n";
  // EER diagonal: p_fa = p_miss.
  out << "<line x1=\"" << px(kLowP) << "\" y1=\"" << py(kLowP) << "\" x2=\""
      << px(kHighP) << "\" y2=\"" << py(kHighP)
      << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" "
         "points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    // Staircase: horizontal then vertical move between points.
    if (i > 0) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(curve[i].p_fa),
                    py(curve[i - 1].p_miss));
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(curve[i].p_fa),
                  py(curve[i].p_miss));
    out << buf;
  }
  out << "\"/>\n";
  std::snprintf(buf, sizeof buf, "EER = %.2f%%", eer * 100);
  out << "<text x=\"" << kMargin + kSize - 8 << "\" y=\"" << kMargin + 16
      << "\" text-anchor=\"end\">" << buf << "</text>\n</svg>\n";
}

}  // namespace dctface
