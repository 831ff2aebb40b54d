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

#ifndef PDREC_ERROR_H_
#define PDREC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdrec {

// Stable machine-readable failure codes. The names returned by
// ErrorCodeName() are part of the HTTP error contract; do not rename.
enum class ErrorCode {
  kMalformedXml,
  kMissingActivity,
  kMissingTimestamp,
  kInvalidTimestamp,
  kEmptyLog,
  kInvalidLog,
  kLengthMismatch,
  kTooFewSamples,
  kNotEnabled,
  kInvalidNet,
  kUnsupportedAlgorithm,
  kInvalidParameter,
  kDiscoveryFailure,
  kSchemaMismatch,
  kNonFiniteInput,
  kUnfittedModel,
  kAllZeroWeights,
  kInvalidWeights,
  kInvalidMeasure,
  kInvalidConfig,
  kInvalidBundle,
  kIoError,
  kNotFound,
  kPayloadTooLarge,
  kBadRequest,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return ErrorCodeName(code_); }

 private:
  ErrorCode code_;
};

}  // namespace pdrec

#endif  // PDREC_ERROR_H_
