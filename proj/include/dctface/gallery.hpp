// include/dctface/gallery.hpp

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

#ifndef DCTFACE_GALLERY_HPP_
#define DCTFACE_GALLERY_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dctface/features.hpp"

namespace dctface {

/// Subject id -> ordered image paths. Position in the list is the 1-based
/// sample index used by SplitSpec. Relative paths resolve against `root`.
struct DatasetManifest {
  std::filesystem::path root;
  std::map<std::string, std::vector<std::filesystem::path>> subjects;

  std::filesystem::path Resolve(const std::filesystem::path &p) const {
    return p.is_absolute() ? p : root / p;
  }
};

/// Reads {"subject": ["img1.pgm", ...], ...}. Throws DataError.
DatasetManifest LoadManifest(const std::filesystem::path &path);
DatasetManifest ParseManifest(std::string_view json_text,
                              const std::filesystem::path &root);
std::string ManifestToJson(const DatasetManifest &manifest);

/// Disjoint, non-empty sets of 1-based sample indices.
class SplitSpec {
 public:
  SplitSpec(std::set<int> train, std::set<int> test);

  /// "1-5:6-10" or "1,2,3:4" (train:test). Throws ValidationError.
  static SplitSpec Parse(std::string_view text);
  /// Faces 1 to 5 for training, 6 to 10 for testing.
  static SplitSpec Orl() { return SplitSpec({1, 2, 3, 4, 5}, {6, 7, 8, 9, 10}); }

  const std::set<int> &train() const { return train_; }
  const std::set<int> &test() const { return test_; }
  int max_index() const;
  std::string ToString() const;

 private:
  std::set<int> train_;
  std::set<int> test_;
};

using SampleSet = std::map<std::string, std::vector<std::filesystem::path>>;

struct SplitResult {
  SampleSet train;
  SampleSet test;
};

/// Partitions each subject's ordered samples by index. Throws DataError
/// naming the first subject with fewer than split.max_index() samples.
SplitResult ApplySplit(const DatasetManifest &manifest, const SplitSpec &split);

/// Enrolled templates per subject. Subjects iterate in lexicographic id
/// order; templates keep enrollment order.
class Gallery {
 public:
  Gallery() = default;

  /// Appends a template. The first enrollment fixes the feature dimension
  /// and channel; later mismatches throw ValidationError.
  void Enroll(const std::string &subject_id, FeatureVector vec);

  bool empty() const { return subjects_.empty(); }
  std::size_t subject_count() const { return subjects_.size(); }
  std::size_t template_count() const;
  std::size_t feature_dim() const { return feature_dim_; }
  SourceChannel channel() const { return channel_; }
  const std::map<std::string, std::vector<FeatureVector>> &subjects() const {
    return subjects_;
  }
  std::vector<std::string> subject_ids() const;
  const std::vector<FeatureVector> &templates(const std::string &id) const;
  bool contains(const std::string &id) const { return subjects_.count(id); }

  /// Canonical window side the templates were extracted at (0 = unknown).
  int window() const { return window_; }
  void set_window(int window) { window_ = window; }

  bool operator==(const Gallery &) const = default;

 private:
  std::map<std::string, std::vector<FeatureVector>> subjects_;
  std::size_t feature_dim_ = 0;
  SourceChannel channel_ = SourceChannel::kGray;
  int window_ = 0;
};

/// Throws ValidationError for ids that would break CSV rows.
void CheckSubjectId(std::string_view id);

enum class GalleryErrorKind { kVersionMismatch, kCorrupted };

class GalleryError : public DataError {
 public:
  GalleryError(GalleryErrorKind kind, const std::string &what)
      : DataError(what), kind_(kind) {}
  GalleryErrorKind kind() const { return kind_; }

 private:
  GalleryErrorKind kind_;
};

inline constexpr int kGalleryFormatVersion = 1;

/// gallery.json + vectors.csv contents.
struct GalleryFiles {
  std::string manifest_json;
  std::string vectors_csv;
};

/// Throws ValidationError for an empty gallery.
GalleryFiles SaveGallery(const Gallery &gallery);
/// Throws GalleryError (version mismatch or corruption).
Gallery LoadGallery(const GalleryFiles &files);

void SaveGalleryDir(const Gallery &gallery, const std::filesystem::path &dir);
Gallery LoadGalleryDir(const std::filesystem::path &dir);

}  // namespace dctface

#endif  // DCTFACE_GALLERY_HPP_
