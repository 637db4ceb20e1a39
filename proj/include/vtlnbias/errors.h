// include/vtlnbias/errors.h

// Copyright 2026  vtlnbias authors

// See ../../COPYING for clarification regarding multiple authors
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

#ifndef VTLNBIAS_ERRORS_H_
#define VTLNBIAS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace vtlnbias {

// Exit codes used by the command line tool.
enum class ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

// Malformed or inconsistent input data (manifests, audio, archives, tables).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

// A numerical procedure could not produce a valid result.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string &what) : std::runtime_error(what) {}
};

// An argument or configuration value is outside its contract.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string &what)
      : std::invalid_argument(what) {}
};

}  // namespace vtlnbias

#endif  // VTLNBIAS_ERRORS_H_
