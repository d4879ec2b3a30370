/*
 * Copyright 2026 The Fairway Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FAIRWAY_ERROR_HPP_
#define FAIRWAY_ERROR_HPP_

#include <exception>
#include <string>
#include <utility>

namespace fairway {

// Broad failure class; the CLI maps each one to a process exit code.
enum class ErrorKind {
  kConfig,      // bad arguments or malformed dataset/run configuration
  kData,        // the data cannot support the requested operation
  kDegenerate,  // a protected group is too small or single-class
  kIo,
};

class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string what)
      : kind_(kind), what_(std::move(what)) {}
  ErrorKind kind() const noexcept { return kind_; }
  const char* what() const noexcept override { return what_.c_str(); }

  // Adds context in front of the message, keeping the dynamic type, so a
  // handler can annotate and rethrow with a bare throw.
  void prepend(const std::string& context) { what_ = context + what_; }

 private:
  ErrorKind kind_;
  std::string what_;
};

#define FAIRWAY_DEFINE_ERROR(Name, Kind)                         \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(Kind, what) {} \
  };

FAIRWAY_DEFINE_ERROR(ConfigError, ErrorKind::kConfig)
FAIRWAY_DEFINE_ERROR(MissingColumn, ErrorKind::kConfig)
FAIRWAY_DEFINE_ERROR(UnknownAttribute, ErrorKind::kConfig)
FAIRWAY_DEFINE_ERROR(SpaceTooSmall, ErrorKind::kConfig)
FAIRWAY_DEFINE_ERROR(DataError, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(EmptyAfterFilter, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(NonBinaryProtected, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(TooFewRows, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(SingleClass, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(DimensionMismatch, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(LengthMismatch, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(EmptyInput, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(AttributeAbsent, ErrorKind::kData)
FAIRWAY_DEFINE_ERROR(DegenerateGroup, ErrorKind::kDegenerate)
FAIRWAY_DEFINE_ERROR(IoFailure, ErrorKind::kIo)

#undef FAIRWAY_DEFINE_ERROR

}  // namespace fairway

#endif  // FAIRWAY_ERROR_HPP_
