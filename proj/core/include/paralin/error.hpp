// core/include/paralin/error.hpp

// Copyright 2026  paralin authors

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

#ifndef PARALIN_ERROR_HPP_
#define PARALIN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace paralin {

// Base class for everything the library throws on bad input or bad state.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Malformed file contents: wrong column, ragged row, unparsable number.
class FormatError : public Error {
  using Error::Error;
};

// Well-formed input that violates a consistency rule: duplicate ids,
// overlapping segments.
class IntegrityError : public Error {
  using Error::Error;
};

// Invalid argument or configuration value.
class ParameterError : public Error {
  using Error::Error;
};

// Inputs that do not line up with each other: missing utterance,
// dimension mismatch, label outside the class set.
class DataError : public Error {
  using Error::Error;
};

// Numerical failure, e.g. a non-finite likelihood.
class NumericError : public Error {
  using Error::Error;
};

// File system failure: missing or unreadable file.
class IoError : public Error {
  using Error::Error;
};

}  // namespace paralin

#endif  // PARALIN_ERROR_HPP_
