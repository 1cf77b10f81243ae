// include/dctface/features.hpp

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

#ifndef DCTFACE_FEATURES_HPP_
#define DCTFACE_FEATURES_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dctface/image.hpp"

namespace dctface {

/// Which image plane a feature vector was computed from.
enum class SourceChannel { kGray, kRed, kGreen, kBlue, kLuma };

const char *ToString(SourceChannel channel);
/// Accepts GRAY, R, G, B, Y (case-insensitive). Throws ValidationError.
SourceChannel ParseSourceChannel(std::string_view text);

/// Retained DCT coefficients describing one face image.
class FeatureVector {
 public:
  FeatureVector() = default;
  /// Throws ValidationError on an empty or non-finite coefficient array.
  FeatureVector(std::vector<double> coeffs, SourceChannel channel,
                std::optional<std::string> subject_id = std::nullopt);

  std::size_t dim() const { return coeffs_.size(); }
  std::span<const double> coeffs() const { return coeffs_; }
  SourceChannel channel() const { return channel_; }
  const std::optional<std::string> &subject_id() const { return subject_id_; }
  void set_subject_id(std::string id) { subject_id_ = std::move(id); }

  bool operator==(const FeatureVector &) const = default;

 private:
  std::vector<double> coeffs_;
  SourceChannel channel_ = SourceChannel::kGray;
  std::optional<std::string> subject_id_;
};

/// Row-major 2-D DCT coefficients; (row, col) = (vertical, horizontal)
/// frequency.
struct DctSpectrum {
  int width = 0;
  int height = 0;
  std::vector<double> coeffs;

  double at(int row, int col) const {
    return coeffs[std::size_t(row) * width + col];
  }
};

/// Orthonormal 2-D DCT-II, applied along rows then columns with
/// C[k][n] = s(k) cos(pi (2n+1) k / 2N), s(0) = sqrt(1/N), s(k>0) = sqrt(2/N).
DctSpectrum Dct2(const GrayPlane &plane);
/// Inverse of Dct2 (orthonormal DCT-III).
GrayPlane Idct2(const DctSpectrum &spectrum);

/// JPEG zigzag traversal of an n x n grid as (row, col) pairs.
std::vector<std::pair<int, int>> ZigzagOrder(int n);

/// First `dim` zigzag-ordered coefficients of the full DCT of a square
/// plane, DC included.
FeatureVector ExtractFeatures(const GrayPlane &plane, int dim,
                              SourceChannel channel = SourceChannel::kGray);

/// One CSV row: subjectId,sourceChannel,dim,c0,...,c{dim-1}. Coefficients
/// use 17 significant digits so doubles round-trip exactly.
std::string FormatFeatureRow(const FeatureVector &vec);
/// Throws DataError on malformed rows.
FeatureVector ParseFeatureRow(std::string_view line);

/// Formats a double with 17 significant digits; +-inf as "inf"/"-inf".
std::string FormatExact(double v);

}  // namespace dctface

#endif  // DCTFACE_FEATURES_HPP_
