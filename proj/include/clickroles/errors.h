// Copyright 2026 The clickroles Authors.
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

#ifndef CLICKROLES_ERRORS_H_
#define CLICKROLES_ERRORS_H_

#include <stdexcept>
#include <string>

namespace clickroles {

// Bad input data: malformed files, duplicate keys, missing paths.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Bad invocation: unknown keys, mismatched dimensions, invalid flags.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Arguments outside the domain of a computation (zero denominators,
// empty tables, single-class labels).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace clickroles

#endif  // CLICKROLES_ERRORS_H_
