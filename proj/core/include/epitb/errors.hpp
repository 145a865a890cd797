// Copyright 2026 The epitb Authors
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

namespace epitb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Raised when a state or matrix entry stops being finite.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, double time)
      : Error(what + " (t=" + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual=" + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ComplexSpectrumError : public Error {
 public:
  explicit ComplexSpectrumError(double discriminant)
      : Error("complex spectrum (discriminant=" + std::to_string(discriminant) + ")"),
        discriminant_(discriminant) {}
  double discriminant() const noexcept { return discriminant_; }

 private:
  double discriminant_;
};

class DegenerateFrameError : public Error {
 public:
  using Error::Error;
};

/// A probability or split component fell below the numerical floor.
class FloorError : public Error {
 public:
  FloorError(const std::string& what, double time, int index)
      : Error(what + " (t=" + std::to_string(time) + ", index=" + std::to_string(index) + ")"),
        time_(time),
        index_(index) {}
  double time() const noexcept { return time_; }
  int index() const noexcept { return index_; }

 private:
  double time_;
  int index_;
};

}  // namespace epitb
