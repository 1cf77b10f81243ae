// src/significance.cpp

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

#include "dctface/significance.hpp"

#include <cmath>

#include "dctface/error.hpp"

namespace dctface {

namespace {

// ceil() that first snaps values within 1e-9 relative of an integer, so
// binary rounding in ln() or division cannot add a spurious trial.
std::uint64_t CeilCount(double x) {
  const double nearest = std::round(x);
  if (std::fabs(x - nearest) <= 1e-9 * std::fabs(x))
    return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

void SignificanceParams::Validate() const {
  if (!(alpha > 0 && alpha < 1))
    throw ValidationError("alpha must be in (0, 1)");
  if (!(beta > 0 && beta <= 1)) throw ValidationError("beta must be in (0, 1]");
  if (!(p > 0 && p <= 1)) throw ValidationError("p must be in (0, 1]");
}

std::uint64_t RequiredN(const SignificanceParams &params) {
  params.Validate();
  return CeilCount(-std::log(params.alpha) /
                   (params.beta * params.beta * params.p));
}

std::uint64_t SimplifiedN(double p) {
  if (!(p > 0 && p < 1)) throw ValidationError("p must be in (0, 1)");
  return CeilCount(100.0 / p);
}

double MinResolvableErrorRate(std::uint64_t n, SizingRule rule, double alpha,
                              double beta) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (rule == SizingRule::kSimplified) return 100.0 / double(n);
  SignificanceParams{alpha, beta, 0.5}.Validate();
  return -std::log(alpha) / (beta * beta * double(n));
}

}  // namespace dctface
