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

// Per-solve measurements shared by the solvers and the benchmark harness.

#ifndef TARSKI_TELEMETRY_H_
#define TARSKI_TELEMETRY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tarski/lattice.h"

namespace tarski {

// Receives one human-readable record per algorithm event.
using TraceSink = std::function<void(const std::string&)>;

struct InnerCallRecord {
  int n = 0;  // widest side of the lattice the outer loop runs on
  Box box;    // outer box handed to the inner algorithm
  int fixed_dim = 0;
  int slice_value = 0;
  std::int64_t queries = 0;  // new distinct queries charged to this call
  std::string outcome;       // "up", "down" or "violation"
};

// One invocation of the dimension-reduction loop.
struct LevelRecord {
  int level = 0;  // 0 for the outermost call
  int k = 0;
  int n = 0;  // widest side of this invocation's lattice
  std::int64_t queries = 0;
  std::int64_t max_child = 0;  // largest distinct-query count of one child call
  int iterations = 0;          // child calls made

  // (q + 2) * (ceil(log2 n) + 2) with q = max_child.
  std::int64_t Bound() const;
};

struct SolveTelemetry {
  std::vector<InnerCallRecord> inner_calls;
  std::vector<LevelRecord> levels;
  int outer_iterations = 0;  // summed over all outer-loop runs
  // Iterations of the top-level algorithm (outer loop, or child calls of the
  // outermost dimension-reduction loop, or bisection steps in one dimension).
  int top_iterations = 0;
};

}  // namespace tarski

#endif  // TARSKI_TELEMETRY_H_
