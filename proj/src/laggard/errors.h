/*
 * Laggard
 * Copyright (c) The Laggard Authors.
 * All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */

#ifndef LAGGARD_ERRORS_H
#define LAGGARD_ERRORS_H

#include <stdexcept>
#include <string>

namespace laggard {

enum class ErrorKind {
  kDomain,
  kPole,
  kDivergence,
  kDegenerate,
  kInfiniteMoment,
  kEvaluation,
  kUnsupported,
  kConvergence,
  kInstability,
  kIO,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void Require(bool cond, const std::string& what) {
  if (!cond) Fail(ErrorKind::kDomain, what);
}

}  // namespace laggard

#endif  // LAGGARD_ERRORS_H
