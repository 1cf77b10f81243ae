// src/features.cpp

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

#include "dctface/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace dctface {

const char *ToString(SourceChannel channel) {
  switch (channel) {
    case SourceChannel::kGray: return "GRAY";
    case SourceChannel::kRed: return "R";
    case SourceChannel::kGreen: return "G";
    case SourceChannel::kBlue: return "B";
    case SourceChannel::kLuma: return "Y";
  }
  return "?";
}

SourceChannel ParseSourceChannel(std::string_view text) {
  std::string up(text);
  for (auto &c : up) c = char(std::toupper(static_cast<unsigned char>(c)));
  if (up == "GRAY") return SourceChannel::kGray;
  if (up == "R") return SourceChannel::kRed;
  if (up == "G") return SourceChannel::kGreen;
  if (up == "B") return SourceChannel::kBlue;
  if (up == "Y") return SourceChannel::kLuma;
  throw ValidationError("unknown channel '" + std::string(text) +
                        "' (expected GRAY, R, G, B or Y)");
}

FeatureVector::FeatureVector(std::vector<double> coeffs, SourceChannel channel,
                             std::optional<std::string> subject_id)
    : coeffs_(std::move(coeffs)), channel_(channel),
      subject_id_(std::move(subject_id)) {
  if (coeffs_.empty()) throw ValidationError("feature vector is empty");
  for (double c : coeffs_)
    if (!std::isfinite(c))
      throw ValidationError("feature vector has a non-finite coefficient");
}

namespace {

// Orthonormal DCT-II matrix for one length, row k = frequency.
class CosineBasis {
 public:
  explicit CosineBasis(int n) : n_(n), table_(std::size_t(n) * n) {
    const double s0 = std::sqrt(1.0 / n), s = std::sqrt(2.0 / n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        table_[std::size_t(k) * n + i] =
            (k == 0 ? s0 : s) *
            std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n));
  }
  int size() const { return n_; }
  double operator()(int k, int i) const {
    return table_[std::size_t(k) * n_ + i];
  }

 private:
  int n_;
  std::vector<double> table_;
};

// Tables are built once per length and never modified afterwards.
std::shared_ptr<const CosineBasis> BasisFor(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CosineBasis>> cache;
  std::lock_guard lock(mu);
  auto &slot = cache[n];
  if (!slot) slot = std::make_shared<const CosineBasis>(n);
  return slot;
}

// out[r][k] = sum_i basis(k, i) in[r][i] for every row r (forward), or
// out[r][i] = sum_k basis(k, i) in[r][k] (inverse).
void TransformRows(const std::vector<double> &in, std::vector<double> &out,
                   int rows, const CosineBasis &basis, bool inverse) {
  const int n = basis.size();
  for (int r = 0; r < rows; ++r) {
    const double *src = in.data() + std::size_t(r) * n;
    double *dst = out.data() + std::size_t(r) * n;
    for (int a = 0; a < n; ++a) {
      double acc = 0.0;
      for (int b = 0; b < n; ++b)
        acc += (inverse ? basis(b, a) : basis(a, b)) * src[b];
      dst[a] = acc;
    }
  }
}

std::vector<double> Transpose(const std::vector<double> &m, int rows,
                              int cols) {
  std::vector<double> t(m.size());
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      t[std::size_t(c) * rows + r] = m[std::size_t(r) * cols + c];
  return t;
}

// Separable 2-D transform: along rows (length w), then along columns.
std::vector<double> Separable(const std::vector<double> &in, int w, int h,
                              bool inverse) {
  auto row_basis = BasisFor(w);
  auto col_basis = BasisFor(h);
  std::vector<double> tmp(in.size());
  TransformRows(in, tmp, h, *row_basis, inverse);
  auto t = Transpose(tmp, h, w);
  std::vector<double> out_t(in.size());
  TransformRows(t, out_t, w, *col_basis, inverse);
  return Transpose(out_t, w, h);
}

}  // namespace

DctSpectrum Dct2(const GrayPlane &plane) {
  if (plane.width < 1 || plane.height < 1)
    throw ValidationError("DCT input must be at least 1x1");
  return DctSpectrum{plane.width, plane.height,
                     Separable(plane.values, plane.width, plane.height, false)};
}

GrayPlane Idct2(const DctSpectrum &spectrum) {
  if (spectrum.width < 1 || spectrum.height < 1 ||
      spectrum.coeffs.size() != std::size_t(spectrum.width) * spectrum.height)
    throw ValidationError("malformed DCT spectrum");
  GrayPlane out;
  out.width = spectrum.width;
  out.height = spectrum.height;
  out.values =
      Separable(spectrum.coeffs, spectrum.width, spectrum.height, true);
  return out;
}

std::vector<std::pair<int, int>> ZigzagOrder(int n) {
  if (n < 1) throw ValidationError("zigzag side must be >= 1");
  std::vector<std::pair<int, int>> order;
  order.reserve(std::size_t(n) * n);
  for (int s = 0; s <= 2 * (n - 1); ++s) {
    const int lo = std::max(0, s - (n - 1));
    const int hi = std::min(s, n - 1);
    if (s % 2 == 0) {
      for (int row = hi; row >= lo; --row) order.emplace_back(row, s - row);
    } else {
      for (int row = lo; row <= hi; ++row) order.emplace_back(row, s - row);
    }
  }
  return order;
}

FeatureVector ExtractFeatures(const GrayPlane &plane, int dim,
                              SourceChannel channel) {
  if (plane.width != plane.height)
    throw ValidationError("feature extraction needs a square plane, got " +
                          std::to_string(plane.width) + "x" +
                          std::to_string(plane.height));
  const int n = plane.width;
  if (dim < 1 || dim > n * n)
    throw ValidationError("feature dimension " + std::to_string(dim) +
                          " outside [1, " + std::to_string(n * n) + "]");
  const DctSpectrum spectrum = Dct2(plane);
  const auto order = ZigzagOrder(n);
  std::vector<double> coeffs(dim);
  for (int i = 0; i < dim; ++i)
    coeffs[i] = spectrum.at(order[i].first, order[i].second);
  return FeatureVector(std::move(coeffs), channel);
}

std::string FormatExact(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string FormatFeatureRow(const FeatureVector &vec) {
  std::string row = vec.subject_id().value_or("");
  row += ',';
  row += ToString(vec.channel());
  row += ',';
  row += std::to_string(vec.dim());
  for (double c : vec.coeffs()) {
    row += ',';
    row += FormatExact(c);
  }
  return row;
}

namespace {

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

FeatureVector ParseFeatureRow(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto fields = SplitCommas(line);
  if (fields.size() < 4) throw DataError("feature row has too few fields");
  std::size_t dim = 0;
  auto [p, ec] = std::from_chars(fields[2].data(),
                                 fields[2].data() + fields[2].size(), dim);
  if (ec != std::errc() || p != fields[2].data() + fields[2].size())
    throw DataError("feature row has a bad dim field");
  if (fields.size() != 3 + dim)
    throw DataError("feature row has " + std::to_string(fields.size() - 3) +
                    " coefficients, header says " + std::to_string(dim));
  std::vector<double> coeffs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::string field(fields[3 + i]);
    char *end = nullptr;
    coeffs[i] = std::strtod(field.c_str(), &end);
    if (field.empty() || *end != '\0')
      throw DataError("feature row has a bad coefficient '" + field + "'");
  }
  SourceChannel channel;
  try {
    channel = ParseSourceChannel(fields[1]);
  } catch (const ValidationError &e) {
    throw DataError(e.what());
  }
  std::optional<std::string> id;
  if (!fields[0].empty()) id = std::string(fields[0]);
  try {
    return FeatureVector(std::move(coeffs), channel, std::move(id));
  } catch (const ValidationError &e) {
    throw DataError(e.what());
  }
}

}  // namespace dctface
