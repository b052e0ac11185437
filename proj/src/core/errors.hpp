// Copyright 2026 The revnwise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVNWISE_CORE_ERRORS_HPP
#define REVNWISE_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rnw {

/// Raised when a caller-supplied value violates a documented precondition
/// (bad bounds, unknown label, malformed file, ...). Maps to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a concrete output value cannot be assigned to an equivalence
/// class (wrong kind, out of declared range).
class ClassificationError : public std::runtime_error {
public:
    explicit ClassificationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a system under test fails to produce an output.
class EvaluationError : public std::runtime_error {
public:
    explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Subprocess protocol failures, discriminated by kind so harnesses can
/// react differently to a hung child vs. a garbled frame.
class ProtocolError : public std::runtime_error {
public:
    enum class Kind { Timeout, Malformed, ChildExit };

    ProtocolError(Kind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace rnw

#endif  // REVNWISE_CORE_ERRORS_HPP
