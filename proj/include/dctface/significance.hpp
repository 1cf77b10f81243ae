// include/dctface/significance.hpp

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

#ifndef DCTFACE_SIGNIFICANCE_HPP_
#define DCTFACE_SIGNIFICANCE_HPP_

#include <cstdint>

namespace dctface {

/// Test-set sizing for an error-rate estimate: with risk `alpha` the true
/// error rate `p` does not exceed the measured one by more than beta * p,
/// assuming i.i.d. Bernoulli errors.
struct SignificanceParams {
  double alpha = 0.05;  // (0, 1)
  double beta = 0.2;    // (0, 1]
  double p = 0.01;      // (0, 1]

  /// Throws ValidationError outside the ranges above.
  void Validate() const;
};

enum class SizingRule {
  kExact,       // -ln(alpha) / (beta^2 p)
  kSimplified,  // 100 / p, the alpha = 0.05, beta = 0.2 rule rounded up
};

/// ceil(-ln(alpha) / (beta^2 p)).
std::uint64_t RequiredN(const SignificanceParams &params);

/// ceil(100 / p) for 0 < p < 1.
std::uint64_t SimplifiedN(double p);

/// Smallest error rate a test set of n trials resolves:
/// 100 / n (simplified) or -ln(alpha) / (beta^2 n) (exact).
double MinResolvableErrorRate(std::uint64_t n, SizingRule rule,
                              double alpha = 0.05, double beta = 0.2);

}  // namespace dctface

#endif  // DCTFACE_SIGNIFICANCE_HPP_
