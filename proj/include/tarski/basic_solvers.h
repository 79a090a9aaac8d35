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

#ifndef TARSKI_BASIC_SOLVERS_H_
#define TARSKI_BASIC_SOLVERS_H_

#include <cstdint>
#include <variant>

#include "tarski/instances.h"
#include "tarski/lattice.h"
#include "tarski/oracle.h"

namespace tarski {

// Follows a unit-step path upward from box.lo, always stepping in the
// lowest-index dimension where x_i < f(x)_i. Returns the fixed point where the
// path stops, a violation between consecutive path points, or
// Violation(x, box.hi) when the next step would leave the box.
//
// Requires box.lo in Up(f) and box.hi in Down(f). Uses at most
// sum_i (hi_i - lo_i) + 2 distinct queries; every call and every budget
// overrun is recorded in f.stats().
Solution UpsetPath(const Oracle& f, const Box& box);

// Distinct-query allowance of UpsetPath on `box`.
std::int64_t UpsetPathBudget(const Box& box);

using BisectResult = std::variant<Point, Violation>;

// Binary search on the segment from lo to hi (which differ only in `dim`)
// for a point x with x_dim = f(x)_dim. Requires lo_dim <= f(lo)_dim and
// f(hi)_dim <= hi_dim. Returns lo or hi directly when they already qualify;
// otherwise squeezes to an adjacent pair, which is a violation if neither
// end is level.
BisectResult BisectWitness(const Oracle& f, const Point& lo, const Point& hi,
                           int dim);

// ceil(log2(len)) + 2 with len clamped to at least 1.
std::int64_t BisectBudget(int len);

// Binary search on a one-dimensional lattice. The end points are treated as
// known up/down points and are only queried in the final squeeze.
Solution Solve1d(const Oracle& f);

// Lexicographically first fixed point, or the first violation of the
// unit-step scan. Throws SizeError above `cap` and InternalError if neither
// exists.
Solution BruteForce(const Oracle& f, std::int64_t cap = EnumerationCap());

// ceil(log2(n)) for n >= 1.
int CeilLog2(std::int64_t n);

}  // namespace tarski

#endif  // TARSKI_BASIC_SOLVERS_H_
