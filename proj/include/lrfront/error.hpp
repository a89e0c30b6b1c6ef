// Copyright 2026 The lrfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lrfront {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands over different qubit counts, or an index outside the register.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bad user input: nonpositive parameters, malformed files, invalid angles.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A network description failed to parse or validate.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A configured size limit (dense dimension, term count, path count, site
/// count) would be exceeded. The message names the limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace lrfront
