// src/gallery.cpp

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

#include "dctface/gallery.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace dctface {

using nlohmann::json;

namespace {

std::string ReadTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void WriteTextFile(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

}  // namespace

void CheckSubjectId(std::string_view id) {
  if (id.empty()) throw ValidationError("subject id is empty");
  for (char c : id)
    if (c == ',' || c == '"' || c == '\n' || c == '\r')
      throw ValidationError("subject id '" + std::string(id) +
                            "' contains a comma, quote or newline");
}

DatasetManifest ParseManifest(std::string_view json_text,
                              const std::filesystem::path &root) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw DataError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("manifest must be a JSON object");
  DatasetManifest manifest;
  manifest.root = root;
  for (auto &[id, paths] : doc.items()) {
    try {
      CheckSubjectId(id);
    } catch (const ValidationError &e) {
      throw DataError(e.what());
    }
    if (!paths.is_array())
      throw DataError("manifest entry for subject '" + id +
                      "' must be an array of paths");
    auto &list = manifest.subjects[id];
    for (const auto &p : paths) {
      if (!p.is_string())
        throw DataError("manifest entry for subject '" + id +
                        "' has a non-string path");
      list.emplace_back(p.get<std::string>());
    }
  }
  return manifest;
}

DatasetManifest LoadManifest(const std::filesystem::path &path) {
  return ParseManifest(ReadTextFile(path), path.parent_path());
}

std::string ManifestToJson(const DatasetManifest &manifest) {
  json doc = json::object();
  for (const auto &[id, paths] : manifest.subjects) {
    json list = json::array();
    for (const auto &p : paths) list.push_back(p.generic_string());
    doc[id] = std::move(list);
  }
  return doc.dump(2) + "\n";
}

SplitSpec::SplitSpec(std::set<int> train, std::set<int> test)
    : train_(std::move(train)), test_(std::move(test)) {
  if (train_.empty() || test_.empty())
    throw ValidationError("split needs non-empty train and test index sets");
  for (int i : train_)
    if (i < 1) throw ValidationError("split indices are 1-based");
  for (int i : test_) {
    if (i < 1) throw ValidationError("split indices are 1-based");
    if (train_.count(i))
      throw ValidationError("sample index " + std::to_string(i) +
                            " is in both train and test sets");
  }
}

namespace {

std::set<int> ParseIndexList(std::string_view text) {
  std::set<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string item(text.substr(start, comma - start));
    if (item.empty()) throw ValidationError("empty index in split spec");
    try {
      auto dash = item.find('-');
      std::size_t used = 0;
      if (dash == std::string::npos) {
        out.insert(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } else {
        int lo = std::stoi(item.substr(0, dash), &used);
        if (used != dash) throw std::invalid_argument(item);
        auto hi_text = item.substr(dash + 1);
        int hi = std::stoi(hi_text, &used);
        if (used != hi_text.size() || hi < lo)
          throw std::invalid_argument(item);
        for (int i = lo; i <= hi; ++i) out.insert(i);
      }
    } catch (const std::logic_error &) {
      throw ValidationError("bad index range '" + item + "' in split spec");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string FormatIndexList(const std::set<int> &s) {
  std::string out;
  for (auto it = s.begin(); it != s.end();) {
    int lo = *it, hi = lo;
    auto next = std::next(it);
    while (next != s.end() && *next == hi + 1) hi = *next++;
    if (!out.empty()) out += ',';
    out += std::to_string(lo);
    if (hi != lo) out += "-" + std::to_string(hi);
    it = next;
  }
  return out;
}

}  // namespace

SplitSpec SplitSpec::Parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ValidationError("split spec must look like TRAIN:TEST, e.g. 1-5:6-10");
  return SplitSpec(ParseIndexList(text.substr(0, colon)),
                   ParseIndexList(text.substr(colon + 1)));
}

int SplitSpec::max_index() const {
  return std::max(*train_.rbegin(), *test_.rbegin());
}

std::string SplitSpec::ToString() const {
  return FormatIndexList(train_) + ":" + FormatIndexList(test_);
}

SplitResult ApplySplit(const DatasetManifest &manifest, const SplitSpec &split) {
  if (manifest.subjects.empty()) throw DataError("dataset manifest is empty");
  SplitResult result;
  const std::size_t need = split.max_index();
  for (const auto &[id, paths] : manifest.subjects) {
    if (paths.size() < need)
      throw DataError("subject '" + id + "' has " +
                      std::to_string(paths.size()) + " samples, split needs " +
                      std::to_string(need));
    auto &train = result.train[id];
    auto &test = result.test[id];
    for (int i : split.train()) train.push_back(paths[i - 1]);
    for (int i : split.test()) test.push_back(paths[i - 1]);
  }
  return result;
}

void Gallery::Enroll(const std::string &subject_id, FeatureVector vec) {
  CheckSubjectId(subject_id);
  if (subjects_.empty()) {
    feature_dim_ = vec.dim();
    channel_ = vec.channel();
  } else {
    if (vec.dim() != feature_dim_)
      throw ValidationError("cannot enroll a dim-" + std::to_string(vec.dim()) +
                            " vector into a dim-" +
                            std::to_string(feature_dim_) + " gallery");
    if (vec.channel() != channel_)
      throw ValidationError(std::string("cannot enroll a ") +
                            ToString(vec.channel()) + " vector into a " +
                            ToString(channel_) + " gallery");
  }
  vec.set_subject_id(subject_id);
  subjects_[subject_id].push_back(std::move(vec));
}

std::size_t Gallery::template_count() const {
  std::size_t n = 0;
  for (const auto &[id, t] : subjects_) n += t.size();
  return n;
}

std::vector<std::string> Gallery::subject_ids() const {
  std::vector<std::string> ids;
  ids.reserve(subjects_.size());
  for (const auto &[id, t] : subjects_) ids.push_back(id);
  return ids;
}

const std::vector<FeatureVector> &Gallery::templates(
    const std::string &id) const {
  auto it = subjects_.find(id);
  if (it == subjects_.end())
    throw ValidationError("subject '" + id + "' is not enrolled");
  return it->second;
}

GalleryFiles SaveGallery(const Gallery &gallery) {
  if (gallery.empty()) throw ValidationError("cannot save an empty gallery");
  json doc;
  doc["format"] = "dctface-gallery";
  doc["version"] = kGalleryFormatVersion;
  doc["featureDim"] = gallery.feature_dim();
  doc["channel"] = ToString(gallery.channel());
  doc["window"] = gallery.window();
  json subjects = json::array();
  std::string csv;
  for (const auto &[id, templates] : gallery.subjects()) {
    subjects.push_back({{"id", id}, {"templates", templates.size()}});
    for (const auto &t : templates) {
      csv += FormatFeatureRow(t);
      csv += '\n';
    }
  }
  doc["subjects"] = std::move(subjects);
  return GalleryFiles{doc.dump(2) + "\n", std::move(csv)};
}

Gallery LoadGallery(const GalleryFiles &files) {
  auto corrupt = [](const std::string &why) {
    return GalleryError(GalleryErrorKind::kCorrupted, "gallery corrupted: " + why);
  };
  json doc;
  try {
    doc = json::parse(files.manifest_json);
  } catch (const json::exception &e) {
    throw corrupt(std::string("gallery.json: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "dctface-gallery")
    throw corrupt("gallery.json is not a dctface gallery");
  if (!doc.contains("version") || !doc["version"].is_number_integer())
    throw corrupt("gallery.json has no version");
  if (doc["version"].get<int>() != kGalleryFormatVersion)
    throw GalleryError(GalleryErrorKind::kVersionMismatch,
                       "gallery format version " +
                           std::to_string(doc["version"].get<int>()) +
                           " is not supported (expected " +
                           std::to_string(kGalleryFormatVersion) + ")");

  std::size_t dim = 0;
  SourceChannel channel;
  std::vector<std::pair<std::string, std::size_t>> expected;
  int window = 0;
  try {
    dim = doc.at("featureDim").get<std::size_t>();
    channel = ParseSourceChannel(doc.at("channel").get<std::string>());
    window = doc.value("window", 0);
    for (const auto &s : doc.at("subjects"))
      expected.emplace_back(s.at("id").get<std::string>(),
                            s.at("templates").get<std::size_t>());
  } catch (const std::exception &e) {
    throw corrupt(std::string("gallery.json: ") + e.what());
  }

  std::vector<FeatureVector> rows;
  std::istringstream in(files.vectors_csv);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      rows.push_back(ParseFeatureRow(line));
    } catch (const DataError &e) {
      throw corrupt("vectors.csv line " + std::to_string(line_no) + ": " +
                    e.what());
    }
  }

  Gallery gallery;
  gallery.set_window(window);
  std::size_t next = 0;
  for (const auto &[id, count] : expected) {
    if (count == 0) throw corrupt("subject '" + id + "' has no templates");
    for (std::size_t t = 0; t < count; ++t, ++next) {
      if (next >= rows.size())
        throw corrupt("vectors.csv has fewer rows than gallery.json lists");
      FeatureVector &v = rows[next];
      if (v.subject_id() != id)
        throw corrupt("vectors.csv row " + std::to_string(next + 1) +
                      " belongs to '" + v.subject_id().value_or("") +
                      "', expected '" + id + "'");
      if (v.dim() != dim || v.channel() != channel)
        throw corrupt("vectors.csv row " + std::to_string(next + 1) +
                      " does not match the gallery dim/channel");
      try {
        gallery.Enroll(id, std::move(v));
      } catch (const ValidationError &e) {
        throw corrupt(e.what());
      }
    }
  }
  if (next != rows.size())
    throw corrupt("vectors.csv has more rows than gallery.json lists");
  if (gallery.empty()) throw corrupt("gallery lists no subjects");
  return gallery;
}

void SaveGalleryDir(const Gallery &gallery, const std::filesystem::path &dir) {
  auto files = SaveGallery(gallery);
  std::filesystem::create_directories(dir);
  WriteTextFile(dir / "gallery.json", files.manifest_json);
  WriteTextFile(dir / "vectors.csv", files.vectors_csv);
}

Gallery LoadGalleryDir(const std::filesystem::path &dir) {
  GalleryFiles files{ReadTextFile(dir / "gallery.json"),
                     ReadTextFile(dir / "vectors.csv")};
  return LoadGallery(files);
}

}  // namespace dctface
