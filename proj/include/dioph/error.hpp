// Copyright 2026 The dioph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIOPH_ERROR_HPP
#define DIOPH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dioph {

enum class ErrorKind {
  Config,        // malformed input: bad syntax, bad config values
  Precondition,  // operation called outside its contract
  Numerical,     // integration/diagonalization/convergence failure
  Budget,        // enumeration or conversion budget exceeded
};

// Every failure raised by the library carries the module that raised it and
// a kind that the command-line driver maps onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string &what)
      : std::runtime_error(module + ": " + what),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string &module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

// Syntax errors from the expression parser; position is a 0-based byte
// offset into the input text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string &what)
      : Error(ErrorKind::Config, "polynomial",
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dioph

#endif  // DIOPH_ERROR_HPP
