// Copyright 2026 The fasrsma Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace fasrsma {

// Raised when an input breaks a documented numerical contract (non-symmetric
// covariance, indefinite matrix, degenerate block routed to the wrong path).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Raised for malformed or inconsistent experiment configuration. `field` is
// the dotted key path when one applies.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Requested scheme or combination is not supported (e.g. NOMA with U != 2).
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fasrsma
