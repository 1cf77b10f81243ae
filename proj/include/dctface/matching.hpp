// include/dctface/matching.hpp

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

#ifndef DCTFACE_MATCHING_HPP_
#define DCTFACE_MATCHING_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dctface/gallery.hpp"
#include "dctface/kernels.hpp"

namespace dctface {

/// Sum over components of (x_i - y_i)^2. Throws ValidationError on a
/// dimension mismatch.
double Mse(const FeatureVector &x, const FeatureVector &y);
/// Sum over components of |x_i - y_i|.
double Mad(const FeatureVector &x, const FeatureVector &y);
double Distance(Metric metric, const FeatureVector &x, const FeatureVector &y);

/// Distance from the probe to the nearest of one person's templates.
double PersonScore(const FeatureVector &probe,
                   const std::vector<FeatureVector> &templates, Metric metric);

/// Test probes per subject, each subject with the same number of trials.
using ProbeSet = std::map<std::string, std::vector<FeatureVector>>;

/// s[i][j][k]: distance from trial k of probe subject i to model subject j.
///
/// Rows are probe subjects and columns are gallery subjects, both in
/// lexicographic order. When every gallery subject has probes the tensor
/// is square; otherwise the genuine cell of row i is the column with the
/// same subject id.
class ScoreTensor {
 public:
  ScoreTensor() = default;
  /// Zero-filled tensor. Throws ValidationError if a probe id is not
  /// among the model ids or ids repeat.
  ScoreTensor(std::vector<std::string> probe_ids,
              std::vector<std::string> model_ids, std::size_t trials,
              Metric metric);

  std::size_t probe_count() const { return probe_ids_.size(); }
  std::size_t model_count() const { return model_ids_.size(); }
  std::size_t trials() const { return trials_; }
  std::size_t size() const { return values_.size(); }
  Metric metric() const { return metric_; }
  const std::vector<std::string> &probe_ids() const { return probe_ids_; }
  const std::vector<std::string> &model_ids() const { return model_ids_; }
  /// Column holding row i's own subject.
  std::size_t genuine_column(std::size_t i) const { return genuine_col_[i]; }

  double &at(std::size_t i, std::size_t j, std::size_t k) {
    return values_[(i * model_ids_.size() + j) * trials_ + k];
  }
  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * model_ids_.size() + j) * trials_ + k];
  }
  std::vector<double> &values() { return values_; }
  const std::vector<double> &values() const { return values_; }

  /// Same shape and labels (values may differ).
  bool SameShape(const ScoreTensor &other) const;
  bool operator==(const ScoreTensor &) const = default;

 private:
  std::vector<std::string> probe_ids_;
  std::vector<std::string> model_ids_;
  std::vector<std::size_t> genuine_col_;
  std::size_t trials_ = 0;
  Metric metric_ = Metric::kMse;
  std::vector<double> values_;
};

/// Fills the tensor with PersonScore for every (probe, model subject).
/// Throws ValidationError for unknown probe subjects, ragged trial counts
/// or dimension/channel mismatches.
ScoreTensor BuildScoreTensor(
    const ProbeSet &probes, const Gallery &gallery, Metric metric,
    kernels::Execution exec = kernels::Execution::kParallel);

struct IdentificationResult {
  std::size_t successes = 0;
  std::size_t errors = 0;
  double rate() const {
    const auto total = successes + errors;
    return total == 0 ? 0.0 : double(successes) / double(total);
  }
};

/// A trial succeeds when its genuine cell is strictly smaller than every
/// other cell of its row; ties count as errors.
IdentificationResult IdentificationRate(const ScoreTensor &tensor);

/// CSV "i,j,k,score" with subject ids for i and j and 1-based k.
void WriteTensorCsv(const ScoreTensor &tensor, std::ostream &out);
/// Inverse of WriteTensorCsv; every (i, j, k) cell must appear once.
/// Throws DataError.
ScoreTensor ReadTensorCsv(std::istream &in, Metric metric);

}  // namespace dctface

#endif  // DCTFACE_MATCHING_HPP_
