// Copyright 2026 The Distress Authors.
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

#ifndef DISTRESS_ERROR_HPP_
#define DISTRESS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace distress {

// Malformed or inconsistent input data (bad records, unknown ids, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration or invalid arguments to an operation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pipeline stage was run before the artifact it depends on exists.
class MissingPrerequisite : public std::runtime_error {
 public:
  MissingPrerequisite(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace distress

#endif  // DISTRESS_ERROR_HPP_
