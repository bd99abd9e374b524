// Copyright 2026 The nbspectra Authors.
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

#ifndef NBSPECTRA_ERROR_HPP
#define NBSPECTRA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nbspectra {

enum class Errc {
  SelfLoop,
  DuplicateEdge,
  NodeOutOfRange,
  LengthMismatch,
  ShapeMismatch,
  DegreeTooSmall,
  BadParameter,
  EmptyCore,
  CountMismatch,
  DegenerateInput,
  IsolatedNode,
  DimensionCap,
  NoConvergence,
  InsufficientRealRitz,
  NotEnoughPositiveReals,
  DegenerateBilinearForm,
  RankDeficient,
  ParseError,
  IoError,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::NodeOutOfRange: return "NodeOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::BadParameter: return "BadParameter";
    case Errc::EmptyCore: return "EmptyCore";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::IsolatedNode: return "IsolatedNode";
    case Errc::DimensionCap: return "DimensionCap";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::InsufficientRealRitz: return "InsufficientRealRitz";
    case Errc::NotEnoughPositiveReals: return "NotEnoughPositiveReals";
    case Errc::DegenerateBilinearForm: return "DegenerateBilinearForm";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// True for failures of an iterative or numerical procedure, as opposed to
  /// bad input.
  bool is_numerical() const noexcept {
    switch (code_) {
      case Errc::NoConvergence:
      case Errc::InsufficientRealRitz:
      case Errc::DegenerateBilinearForm:
      case Errc::RankDeficient:
        return true;
      default:
        return false;
    }
  }

 private:
  Errc code_;
};

}  // namespace nbspectra

#endif  // NBSPECTRA_ERROR_HPP
