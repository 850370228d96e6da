/*
 * Copyright 2026 The Twistlab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TWISTLAB_ERRORS_HPP_
#define TWISTLAB_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistlab {

// Base class for every error raised by the library. The CLI maps these to
// exit status 1 (domain errors); usage errors never reach the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Malformed twist expression or chain text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A dual step was requested on a twist with lexp <= 1/d.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(const std::string& msg, std::size_t step, double ell)
      : Error(msg), step_(step), ell_(ell) {}
  // 1-based index of the offending dual step (0 when not in a chain).
  std::size_t step() const { return step_; }
  double ell() const { return ell_; }

 private:
  std::size_t step_;
  double ell_;
};

// The requested truncation depth does not resolve every flat term.
class DepthError : public Error {
 public:
  explicit DepthError(const std::string& msg) : Error(msg) {}
};

// Iterative solver failed to converge.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Request beyond what a provider or evaluation mode supports.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

}  // namespace twistlab

#endif  // TWISTLAB_ERRORS_HPP_
