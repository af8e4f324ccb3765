// Copyright 2026 The itemidx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ITEMIDX_ERROR_H_
#define ITEMIDX_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itemidx {

// Base class for all recoverable failures raised by the library. Argument
// misuse (empty labels, out-of-range counts) is reported with
// std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `line()` is 1-based; 0 when not line oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

// A character of the input cannot be covered by any piece of the model.
class CoverageError : public Error {
 public:
  CoverageError(const std::string& text, std::size_t position)
      : Error("no piece covers position " + std::to_string(position) +
              " of \"" + text + "\""),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (achieved residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Violated parameter constraint, e.g. branching factor larger than the
// final-cluster size.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// Tree shape that cannot be labeled without sibling collisions.
class StructureError : public Error {
 public:
  using Error::Error;
};

class DuplicateIdError : public Error {
 public:
  using Error::Error;
};

// Index inputs that do not satisfy a scheme's preconditions (missing
// titles, mismatched item sets in hybrid composition).
class IndexError : public Error {
 public:
  using Error::Error;
};

}  // namespace itemidx

#endif  // ITEMIDX_ERROR_H_
