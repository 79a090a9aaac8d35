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

// Dimension reduction: a k-dimensional instance is solved by binary search
// over principle slices of its widest dimension, each slice being handed to
// a (k-1)-dimensional solver.

#ifndef TARSKI_KD_RECURSION_H_
#define TARSKI_KD_RECURSION_H_

#include <functional>
#include <string>

#include "tarski/lattice.h"
#include "tarski/oracle.h"
#include "tarski/telemetry.h"

namespace tarski {

// Solves a (k-1)-dimensional instance presented as a self-contained oracle.
using BaseSolver = std::function<Solution(const Oracle&)>;

struct DqyContext {
  SolveTelemetry* telemetry = nullptr;
  TraceSink trace;
  int level = 0;
};

// Requires k >= 2. Every child instance is the slice of the current box,
// clamped into the box and translated to start at (1, ..., 1); its queries
// are charged to f's root. Uses at most (q + 2)(ceil(log2 n) + 2) distinct
// queries when every child call uses at most q.
Solution DqySolve(const Oracle& f, const BaseSolver& base,
                  const DqyContext& ctx = {});

enum class SolveMode { kAuto, kDqyClassic, kFast };

// "auto", "dqy" or "fast"; UsageError otherwise.
SolveMode ParseSolveMode(const std::string& name);
std::string ToString(SolveMode mode);

struct SolveOptions {
  SolveTelemetry* telemetry = nullptr;
  TraceSink trace;
  bool check_invariants = false;
};

// kDqyClassic: dimension reduction down to one-dimensional bisection.
// kFast: dimension reduction down to the three-dimensional outer/inner
//   solver; UsageError for k < 3.
// kAuto: bisection for k = 1, kDqyClassic for k = 2, kFast otherwise.
Solution Solve(const Oracle& f, SolveMode mode, const SolveOptions& options = {});

}  // namespace tarski

#endif  // TARSKI_KD_RECURSION_H_
