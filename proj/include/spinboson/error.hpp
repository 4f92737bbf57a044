// Copyright 2026 The spinboson Authors.
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

namespace spinboson {

// Base class for every error raised by the library. The CLI maps these to
// exit codes; callers that only care about failure can catch this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

// Raised when an enumeration would exceed the configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A combinatorial object does not have the structure an operation needs
// (e.g. a non-connecting cluster term where a spanning tree is required).
class StructureError : public Error {
 public:
  using Error::Error;
};

// Monte Carlo weights overflowed; the estimate cannot be trusted.
class EstimateUnreliable : public Error {
 public:
  using Error::Error;
};

// |alpha| * K >= 1: the tail certificate does not apply.
class OutsideCertificate : public Error {
 public:
  using Error::Error;
};

}  // namespace spinboson
