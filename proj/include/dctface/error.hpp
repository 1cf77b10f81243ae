// include/dctface/error.hpp

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

#ifndef DCTFACE_ERROR_HPP_
#define DCTFACE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dctface {

/// Bad arguments or configuration: the caller asked for something the
/// contract does not allow. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string &what)
      : std::invalid_argument(what) {}
};

/// Input data could not be used (unreadable file, malformed payload,
/// inconsistent dataset). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace dctface

#endif  // DCTFACE_ERROR_HPP_
