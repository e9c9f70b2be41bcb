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

#include "extremap/error.hpp"

#include <sstream>

namespace extremap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotExtremal: return "NotExtremal";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::DimTooSmall: return "DimTooSmall";
    case ErrorCode::MultiInputSupport: return "MultiInputSupport";
    case ErrorCode::InvalidCertificate: return "InvalidCertificate";
    case ErrorCode::InvalidIsometry: return "InvalidIsometry";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::DimensionObstruction: return "DimensionObstruction";
    case ErrorCode::NotJordan: return "NotJordan";
    case ErrorCode::AssemblyError: return "AssemblyError";
    case ErrorCode::OutsideDisc: return "OutsideDisc";
    case ErrorCode::NotBoundary: return "NotBoundary";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::ZeroOutsideDisc: return "ZeroOutsideDisc";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string describe_blocks(int out_block, const std::vector<int>& blocks) {
  std::ostringstream os;
  os << "output block " << out_block << " receives input blocks";
  for (int b : blocks) os << ' ' << b;
  return os.str();
}

}  // namespace

MultiInputSupportError::MultiInputSupportError(int out_block,
                                               std::vector<int> blocks)
    : Error(ErrorCode::MultiInputSupport, describe_blocks(out_block, blocks)),
      out_block_(out_block),
      blocks_(std::move(blocks)) {}

}  // namespace extremap
