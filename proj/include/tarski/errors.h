// Copyright 2026 The Tarski Solver Authors.
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

#ifndef TARSKI_ERRORS_H_
#define TARSKI_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tarski {

class TarskiError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
class UsageError : public TarskiError {
 public:
  using TarskiError::TarskiError;
};

// An oracle produced a value outside its lattice.
class InstanceCorruptError : public TarskiError {
 public:
  using TarskiError::TarskiError;
};

// Malformed or inconsistent instance document.
class FormatError : public TarskiError {
 public:
  using TarskiError::TarskiError;
};

// Lattice too large for exhaustive enumeration.
class SizeError : public TarskiError {
 public:
  using TarskiError::TarskiError;
};

class GenerationError : public TarskiError {
 public:
  using TarskiError::TarskiError;
};

// A solver reached a state its correctness argument rules out.
class InternalError : public TarskiError {
 public:
  using TarskiError::TarskiError;
};

}  // namespace tarski

#endif  // TARSKI_ERRORS_H_
