// include/dctface/fusion.hpp

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

#ifndef DCTFACE_FUSION_HPP_
#define DCTFACE_FUSION_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctface/matching.hpp"

namespace dctface {

/// Cellwise sum of raw distance tensors (no per-channel normalization).
/// Tensors must share shape, labels and metric; throws ValidationError.
ScoreTensor FuseScoresSum(std::span<const ScoreTensor> tensors);

/// Cellwise sum of w_c * s_c. Weights must be >= 0, not all zero, and as
/// many as tensors.
ScoreTensor FuseScoresWeighted(std::span<const ScoreTensor> tensors,
                               std::span<const double> weights);

/// Score-level fusion recipe over color channels.
struct FusionSpec {
  struct Term {
    SourceChannel channel;
    double weight;
  };
  bool weighted = false;
  std::vector<Term> terms;

  /// "sum:R,G,B" or "w:0.3R+0.59G+0.11B". Throws ValidationError.
  static FusionSpec Parse(std::string_view text);
  /// Row label, e.g. "R+G+B" or "0.3R+0.59G+0.11B".
  std::string Label() const;
};

}  // namespace dctface

#endif  // DCTFACE_FUSION_HPP_
