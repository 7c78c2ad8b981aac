/*
Copyright 2026 The Stereo SELD Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef SSELD_ERROR_H_
#define SSELD_ERROR_H_

#include <stdexcept>
#include <string>

namespace sseld {

enum class ErrorKind {
  kInvalidInput,
  kParse,
  kValidation,
  kConfiguration,
  kDecode,
  kIo,
};

inline const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "invalid input";
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kValidation:
      return "validation error";
    case ErrorKind::kConfiguration:
      return "configuration error";
    case ErrorKind::kDecode:
      return "decode error";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "error";
}

// All library failures are reported through this exception type. The kind
// lets front-ends map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failure tied to a 1-based line of some text input.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorKind::kParse,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace sseld

#endif  // SSELD_ERROR_H_
