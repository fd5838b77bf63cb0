// Copyright 2026 The OQRW Authors
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

namespace oqrw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed operators, states, parameters or configs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numerical guard tripped: accumulated drift, imaginary residue and so on.
class NumericalGuardError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public ValidationError {
 public:
  explicit NormalizationError(double deviation)
      : ValidationError("Kraus pair is not normalized: |B*B + C*C - I|_max = " +
                        std::to_string(deviation)),
        deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class InvalidStateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedExample : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ResourceLimitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonUniqueInvariant : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateMax : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SumError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class ResidueError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class NoInvariantState : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class DegenerateJump : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

}  // namespace oqrw
