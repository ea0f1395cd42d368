// Copyright 2026 The btlrank Authors.
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

#ifndef BTLRANK_ERRORS_HPP_
#define BTLRANK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace btlrank {

// Base class for all library errors. `code()` is a stable machine-readable
// identifier used by the CLI when emitting structured error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& message)
      : Error("InvalidArgument", message) {}
};

class IndexOutOfRangeError : public Error {
 public:
  explicit IndexOutOfRangeError(const std::string& message)
      : Error("IndexOutOfRange", message) {}
};

class AlphaOutOfRangeError : public Error {
 public:
  explicit AlphaOutOfRangeError(const std::string& message)
      : Error("AlphaOutOfRange", message) {}
};

class DisconnectedGraphError : public Error {
 public:
  explicit DisconnectedGraphError(const std::string& message)
      : Error("DisconnectedGraph", message) {}
};

class NoConvergenceError : public Error {
 public:
  explicit NoConvergenceError(const std::string& message)
      : Error("NoConvergence", message) {}
};

class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& message)
      : Error("SingularSystem", message) {}
};

class EmptyEdgeSetError : public Error {
 public:
  explicit EmptyEdgeSetError(const std::string& message)
      : Error("EmptyEdgeSet", message) {}
};

class UnsupportedPropertyError : public Error {
 public:
  explicit UnsupportedPropertyError(const std::string& message)
      : Error("UnsupportedProperty", message) {}
};

class InsufficientUsersError : public Error {
 public:
  explicit InsufficientUsersError(const std::string& message)
      : Error("InsufficientUsers", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("Io", message) {}
};

}  // namespace btlrank

#endif  // BTLRANK_ERRORS_HPP_
