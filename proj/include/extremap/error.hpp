// Copyright 2026 The extremap Authors
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
#include <string_view>
#include <vector>

namespace extremap {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  ZeroMatrix,
  NotUnit,
  ShapeMismatch,
  NotExtremal,
  NotProjection,
  DimTooSmall,
  MultiInputSupport,
  InvalidCertificate,
  InvalidIsometry,
  InvalidFrame,
  DimensionObstruction,
  NotJordan,
  AssemblyError,
  OutsideDisc,
  NotBoundary,
  NotUnimodular,
  ZeroOutsideDisc,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when an output block receives contributions from more than one
// input block; carries the offending input block indices.
class MultiInputSupportError : public Error {
 public:
  MultiInputSupportError(int out_block, std::vector<int> blocks);

  int out_block() const noexcept { return out_block_; }
  const std::vector<int>& blocks() const noexcept { return blocks_; }

 private:
  int out_block_;
  std::vector<int> blocks_;
};

}  // namespace extremap
