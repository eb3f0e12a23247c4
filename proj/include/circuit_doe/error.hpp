// Copyright 2026 The Authors.
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

#ifndef CIRCUIT_DOE_ERROR_HPP_
#define CIRCUIT_DOE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace circuit_doe {

// Every library failure derives from Error; the CLI maps the concrete type
// to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed design specification (levels < 2, bad terms, unknown model).
class SpecError : public Error {
 public:
  using Error::Error;
};

// Model matrix is rank deficient or otherwise unsupported.
class ModelError : public Error {
 public:
  using Error::Error;
};

// A configured size budget would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (circuit files, fraction strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input parsed but fails a mathematical check (vector not in the kernel).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Caller violated a precondition (wrong cardinality, mismatched K).
class ContractError : public Error {
 public:
  using Error::Error;
};

class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_ERROR_HPP_
