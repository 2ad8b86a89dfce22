// Copyright 2026 The BodyNet Authors
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

#ifndef BODYNET_ERROR_HPP_
#define BODYNET_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace bodynet {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (not valid JSON, wrong value type).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain invariant. `field()` names the
/// offending field or id.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(message) {}

  const std::string& field() const noexcept { return field_; }
  /// The message without the field prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

class ScenarioError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class CutError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NoRouteError : public Error {
 public:
  NoRouteError(const std::string& src, const std::string& dst)
      : Error("no link from '" + src + "' to '" + dst + "'") {}
};

class NoSensorError : public Error {
 public:
  using Error::Error;
};

class NoOutputError : public Error {
 public:
  using Error::Error;
};

/// Thermal ceiling cannot be met even at the lowest frequency scale.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class NoCandidateMeetsFloor : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class DuplicateIdError : public Error {
 public:
  using Error::Error;
};

class UnknownModelError : public Error {
 public:
  using Error::Error;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

}  // namespace bodynet

#endif  // BODYNET_ERROR_HPP_
