// Copyright 2026 The Clarify Authors
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

#ifndef CLARIFY_ERROR_HPP_
#define CLARIFY_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace clarify {

// Broad failure classes. The CLI maps kIo/kFormat to exit code 2 and the
// rest to exit code 1.
enum class ErrorKind {
  kIo,
  kFormat,
  kValidation,
  kConfig,
  kIntegrity,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error IoError(const std::string& m) { return Error(ErrorKind::kIo, m); }
inline Error FormatError(const std::string& m) {
  return Error(ErrorKind::kFormat, m);
}
inline Error ValidationError(const std::string& m) {
  return Error(ErrorKind::kValidation, m);
}
inline Error ConfigError(const std::string& m) {
  return Error(ErrorKind::kConfig, m);
}
inline Error IntegrityError(const std::string& m) {
  return Error(ErrorKind::kIntegrity, m);
}

}  // namespace clarify

#endif  // CLARIFY_ERROR_HPP_
