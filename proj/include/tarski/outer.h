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

// Three-dimensional solver: binary search on the outer box, one principle
// slice per round, each slice handled by an inner algorithm.

#ifndef TARSKI_OUTER_H_
#define TARSKI_OUTER_H_

#include <functional>

#include "tarski/inner3d.h"
#include "tarski/lattice.h"
#include "tarski/oracle.h"
#include "tarski/telemetry.h"

namespace tarski {

// Returns an Up point or Down point of f on the slice inside the box, or a
// violation of f.
using InnerAlgorithm =
    std::function<InnerOutcome(const Oracle&, const Box&, const Slice&)>;

struct OuterOptions {
  InnerAlgorithm inner;  // InnerSolve when empty
  SolveTelemetry* telemetry = nullptr;
  TraceSink trace;
  bool check_invariants = false;
};

// Requires k = 3. Keeps x in Up(f) and y in Down(f), halving the widest side
// of the box [x, y] each round, and finishes with a monotone path once every
// side has width at most one. Every inner outcome is re-checked against f;
// an inconsistent one raises InternalError.
Solution OuterSolve(const Oracle& f, const OuterOptions& options = {});

}  // namespace tarski

#endif  // TARSKI_OUTER_H_
