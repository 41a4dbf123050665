// Copyright 2026 The gamebush Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAMEBUSH_ERROR_H_
#define GAMEBUSH_ERROR_H_

#include <stdexcept>
#include <string>

namespace gamebush {

// Base class for every error raised by the library. Violations that are part
// of a report (bush validation, subgame checks) are returned as data instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const { return "error"; }
};

#define GAMEBUSH_DEFINE_ERROR(Name, tag)                  \
  class Name : public Error {                             \
   public:                                                \
    using Error::Error;                                   \
    const char* kind() const override { return tag; }     \
  };

GAMEBUSH_DEFINE_ERROR(ParseError, "parse")
GAMEBUSH_DEFINE_ERROR(ValidationError, "validation")
GAMEBUSH_DEFINE_ERROR(UnknownClassError, "unknown-class")
GAMEBUSH_DEFINE_ERROR(SizeGuardError, "size-guard")
GAMEBUSH_DEFINE_ERROR(NoPlanError, "no-plan")
GAMEBUSH_DEFINE_ERROR(RecallError, "recall")
GAMEBUSH_DEFINE_ERROR(MismatchError, "mismatch")
GAMEBUSH_DEFINE_ERROR(MissingContinuationError, "missing-continuation")
GAMEBUSH_DEFINE_ERROR(DimensionError, "dimension")
GAMEBUSH_DEFINE_ERROR(PreconditionError, "precondition")

#undef GAMEBUSH_DEFINE_ERROR

}  // namespace gamebush

#endif  // GAMEBUSH_ERROR_H_
