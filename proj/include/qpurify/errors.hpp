// Copyright 2026 qpurify contributors
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

namespace qpurify {

// All syndrome branches were rejected; no posterior state exists.
class zero_success_error : public std::runtime_error {
public:
  explicit zero_success_error(const std::string &what)
      : std::runtime_error(what) {}
};

// A request would enumerate more states than the configured limit.
class size_guard_error : public std::runtime_error {
public:
  explicit size_guard_error(const std::string &what)
      : std::runtime_error(what) {}
};

// An iteration hit its round budget before reaching tolerance.
class non_convergence_error : public std::runtime_error {
public:
  explicit non_convergence_error(const std::string &what)
      : std::runtime_error(what) {}
};

} // namespace qpurify
