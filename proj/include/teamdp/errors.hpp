// Copyright 2026 The teamdp Authors.
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

namespace teamdp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatch, index out of range, malformed argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of probability zero.
class ZeroLikelihood : public Error {
 public:
  using Error::Error;
};

// A team view whose contents do not determine the full joint history.
class IncompleteHistory : public Error {
 public:
  using Error::Error;
};

// A strategy (or co-strategy) was queried at a history it does not cover.
class UndefinedStrategy : public Error {
 public:
  using Error::Error;
};

// Node budget or enumeration budget exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Scenario document that cannot be turned into a model.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace teamdp
