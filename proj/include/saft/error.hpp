// Copyright 2026 The saft authors
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

namespace saft {

enum class Errc {
  // configuration / parsing
  ConfigParse,
  UnknownKey,
  // validation of inputs and parameters
  WrongCount,
  DuplicateResidue,
  NotExpanding,
  BadParameters,
  WrongDilation,
  WrongGenerator,
  DepthExceedsGrid,
  ShapeMismatch,
  NonFiniteValue,
  LevelBeyondNyquist,
  LevelTooFine,
  InsufficientLevels,
  EmptyStepSet,
  NotLocated,
  DegenerateBoundaryDistance,
  RankDeficient,
  BudgetExceeded,
  // numerical failures detected at run time
  Unstable,
  NotRefinable,
  // filesystem
  IoError,
};

enum class ErrorCategory { Config, Validation, Numeric, Io };

constexpr ErrorCategory category_of(Errc c) {
  switch (c) {
    case Errc::ConfigParse:
    case Errc::UnknownKey:
      return ErrorCategory::Config;
    case Errc::Unstable:
    case Errc::NotRefinable:
      return ErrorCategory::Numeric;
    case Errc::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Validation;
  }
}

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }
  ErrorCategory category() const { return category_of(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace saft
