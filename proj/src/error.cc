/*
 * Copyright 2026 The pdrec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdrec/error.h"

namespace pdrec {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedXml:
      return "MalformedXml";
    case ErrorCode::kMissingActivity:
      return "MissingActivity";
    case ErrorCode::kMissingTimestamp:
      return "MissingTimestamp";
    case ErrorCode::kInvalidTimestamp:
      return "InvalidTimestamp";
    case ErrorCode::kEmptyLog:
      return "EmptyLog";
    case ErrorCode::kInvalidLog:
      return "InvalidLog";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kTooFewSamples:
      return "TooFewSamples";
    case ErrorCode::kNotEnabled:
      return "NotEnabled";
    case ErrorCode::kInvalidNet:
      return "InvalidNet";
    case ErrorCode::kUnsupportedAlgorithm:
      return "UnsupportedAlgorithm";
    case ErrorCode::kInvalidParameter:
      return "InvalidParameter";
    case ErrorCode::kDiscoveryFailure:
      return "DiscoveryFailure";
    case ErrorCode::kSchemaMismatch:
      return "SchemaMismatch";
    case ErrorCode::kNonFiniteInput:
      return "NonFiniteInput";
    case ErrorCode::kUnfittedModel:
      return "UnfittedModel";
    case ErrorCode::kAllZeroWeights:
      return "AllZeroWeights";
    case ErrorCode::kInvalidWeights:
      return "InvalidWeights";
    case ErrorCode::kInvalidMeasure:
      return "InvalidMeasure";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kInvalidBundle:
      return "InvalidBundle";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kNotFound:
      return "NotFound";
    case ErrorCode::kPayloadTooLarge:
      return "PayloadTooLarge";
    case ErrorCode::kBadRequest:
      return "BadRequest";
  }
  return "Unknown";
}

}  // namespace pdrec
