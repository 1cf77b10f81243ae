// include/dctface/verification.hpp

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

#ifndef DCTFACE_VERIFICATION_HPP_
#define DCTFACE_VERIFICATION_HPP_

#include <iosfwd>
#include <span>
#include <vector>

#include "dctface/matching.hpp"

namespace dctface {

/// Genuine (own-subject) and impostor distances. Both sets are kept
/// sorted ascending; the object is read-only after construction.
class TrialScores {
 public:
  /// Throws ValidationError if either set is empty or holds a
  /// non-finite value.
  TrialScores(std::vector<double> genuine, std::vector<double> impostor);

  std::span<const double> genuine() const { return genuine_; }
  std::span<const double> impostor() const { return impostor_; }

 private:
  std::vector<double> genuine_;
  std::vector<double> impostor_;
};

/// Genuine = cells of each row's own subject, impostor = all other cells.
/// Throws ValidationError when the tensor has no impostor cells.
TrialScores SplitIntraInter(const ScoreTensor &tensor);

/// Accept iff score <= threshold.
struct ErrorRates {
  double p_fa = 0;    // accepted impostors / impostors
  double p_miss = 0;  // rejected genuines / genuines
};

ErrorRates FarFrrAt(const TrialScores &trials, double threshold);

struct DetPoint {
  double threshold = 0;
  double p_fa = 0;
  double p_miss = 0;
};

/// +inf, the midpoints between consecutive distinct pooled scores
/// (descending), then -inf. Each candidate realizes one distinct
/// operating point of the error staircase.
std::vector<double> CandidateThresholds(const TrialScores &trials);

/// Operating points at every candidate threshold, threshold descending:
/// runs from (1, 0) to (0, 1).
std::vector<DetPoint> DetCurve(const TrialScores &trials);

/// Error rate where p_fa = p_miss: an exact crossing if one exists,
/// otherwise linear interpolation between the two DET points that
/// straddle it.
double Eer(const TrialScores &trials);
double Eer(std::span<const DetPoint> curve);

/// Costs and target prior of the detection cost function.
struct DcfParams {
  double c_miss = 1.0;
  double c_fa = 1.0;
  double p_true = 0.5;

  double p_false() const { return 1.0 - p_true; }
  /// Throws ValidationError unless costs >= 0 and 0 < p_true < 1.
  void Validate() const;
};

/// Cmiss * Pmiss * Ptrue + Cfa * Pfa * Pfalse at the given threshold.
double Dcf(const TrialScores &trials, double threshold, const DcfParams &params);

struct MinDcfResult {
  double value = 0;
  double threshold = 0;
};

/// Minimum of Dcf over CandidateThresholds; ties go to the smallest
/// threshold.
MinDcfResult MinDcf(const TrialScores &trials, const DcfParams &params);
MinDcfResult MinDcf(std::span<const DetPoint> curve, const DcfParams &params);

/// Standard normal CDF.
double NormalCdf(double x);
/// Inverse standard normal CDF for 0 < p < 1 (rational approximation
/// plus one Newton step). Throws ValidationError outside (0, 1).
double NormalDeviate(double p);

/// Probabilities are clamped to [kProbitClamp, 1 - kProbitClamp] before
/// the probit transform in DET exports.
inline constexpr double kProbitClamp = 1e-6;

/// CSV "threshold,pFa,pMiss,probit_pFa,probit_pMiss".
void WriteDetCsv(std::span<const DetPoint> curve, std::ostream &out);
/// DET staircase on probit axes with the EER diagonal.
void WriteDetSvg(std::span<const DetPoint> curve, double eer, std::ostream &out);

}  // namespace dctface

#endif  // DCTFACE_VERIFICATION_HPP_
