/* Copyright 2026 The seqc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SEQC_ERROR_HPP
#define SEQC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seqc {

enum class ErrorCode {
  Syntax,
  Arity,
  EmptyChoice,
  InvalidAddress,
  UnboundVariable,
  UnknownConstant,
  TypeMismatch,
  DivisionByZero,
  Overflow,
  ConstantCycle,
  DepthExceeded,
  MoveLimit,
  NoMove,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::Arity: return "ArityError";
    case ErrorCode::EmptyChoice: return "EmptyChoice";
    case ErrorCode::InvalidAddress: return "InvalidAddress";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ConstantCycle: return "ConstantCycle";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::MoveLimit: return "MoveLimit";
    case ErrorCode::NoMove: return "NoMove";
  }
  return "Error";
}

/// Source position, 1-based. A zero line means "no position".
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// The single exception type thrown by the library. Parse errors carry a
/// position; evaluation and engine errors do not.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, SourcePos pos = {})
      : std::runtime_error(format(code, message, pos)),
        code_(code),
        detail_(std::move(message)),
        pos_(pos) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const SourcePos& pos() const noexcept { return pos_; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            SourcePos pos) {
    std::string out;
    if (pos.line != 0) {
      out += std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": ";
    }
    out += error_code_name(code);
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::string detail_;
  SourcePos pos_;
};

}  // namespace seqc

#endif  // SEQC_ERROR_HPP
