// Copyright 2026 The StableCluster Authors.
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

#ifndef STABLECLUSTER_ERRORS_H_
#define STABLECLUSTER_ERRORS_H_

#include <stdexcept>
#include <string>

namespace stablecluster {

// Caller violated an operation precondition (bad k, empty set, malformed
// matrix). The CLI maps this to exit code 3.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

// An exhaustive search would exceed its configured budget. Exit code 4.
class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

// Unreadable or malformed input file. Exit code 2.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stablecluster

#endif  // STABLECLUSTER_ERRORS_H_
