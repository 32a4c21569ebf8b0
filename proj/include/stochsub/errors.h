// Copyright 2026 The Authors.
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

#ifndef STOCHSUB_ERRORS_H_
#define STOCHSUB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace stochsub {

enum class ErrorCode {
  kInput,
  kCapacity,
  kConditioning,
  kDegenerateBound,
  kConfiguration,
  kPolicy,
  kUnsupportedKind,
  kInternal,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline Error InputError(const std::string& m) {
  return Error(ErrorCode::kInput, m);
}
inline Error CapacityError(const std::string& m) {
  return Error(ErrorCode::kCapacity, m);
}
inline Error ConditioningError(const std::string& m) {
  return Error(ErrorCode::kConditioning, m);
}
inline Error DegenerateBoundError(const std::string& m) {
  return Error(ErrorCode::kDegenerateBound, m);
}
inline Error ConfigurationError(const std::string& m) {
  return Error(ErrorCode::kConfiguration, m);
}
inline Error PolicyError(const std::string& m) {
  return Error(ErrorCode::kPolicy, m);
}
inline Error UnsupportedKindError(const std::string& m) {
  return Error(ErrorCode::kUnsupportedKind, m);
}
inline Error InternalError(const std::string& m) {
  return Error(ErrorCode::kInternal, m);
}

}  // namespace stochsub

#endif  // STOCHSUB_ERRORS_H_
