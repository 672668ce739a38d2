// Copyright 2026 The bmcarpet Authors
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

#ifndef BMCARPET_ERRORS_HPP_
#define BMCARPET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bmc {

// Root of every error the library raises. The CLI maps the three families
// below onto its exit codes (spec errors 2, I/O errors 3, domain errors 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Arguments outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidProbVector : public DomainError {
 public:
  using DomainError::DomainError;
};

class UniformFibres : public DomainError {
 public:
  using DomainError::DomainError;
};

class ThetaOutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

class UOutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

// The two-scale counting of approximate squares only holds for
// theta >= log_n m and for depths where the subdivision window is non-empty.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class RegimeMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class SearchFailed : public DomainError {
 public:
  using DomainError::DomainError;
};

class WordTooShort : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidMeasure : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace bmc

#endif  // BMCARPET_ERRORS_HPP_
