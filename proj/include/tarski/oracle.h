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

#ifndef TARSKI_ORACLE_H_
#define TARSKI_ORACLE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tarski/lattice.h"

namespace tarski {

// Bookkeeping owned by a root oracle and shared by all of its views.
struct QueryStats {
  // Every call to Query, cache hits included.
  std::int64_t raw_lookups = 0;
  // Distinct points in first-query order.
  std::vector<Point> trace;
  // Running 64-bit FNV-1a digest of `trace`.
  std::uint64_t trace_hash = 14695981039346656037ULL;

  // Monotone path instrumentation (see UpsetPath).
  std::int64_t path_calls = 0;
  std::int64_t path_budget_breaches = 0;

  std::int64_t distinct() const { return static_cast<std::int64_t>(trace.size()); }
};

// A function f : L -> L behind a memoizing, query-counting wrapper.
//
// Oracle is a cheap handle. Copies share the same cache and counters, and so
// do the views returned by Restrict, Permute and SubBox: a query through any
// view is charged to the root oracle exactly once per distinct root point.
// Single-writer: do not query one root from several threads.
class Oracle {
 public:
  using EvalFn = std::function<Point(const Point&)>;

  Oracle(Shape shape, EvalFn eval);

  const Shape& shape() const { return shape_; }
  int dims() const { return shape_.dims(); }

  // Throws UsageError for points outside the lattice and
  // InstanceCorruptError if the wrapped function leaves it.
  Point Query(const Point& x) const;
  Point operator()(const Point& x) const { return Query(x); }

  bool IsRoot() const { return view_ == nullptr; }
  // Maps a point of this view to the coordinates of the oracle it was built
  // from. Identity on a root oracle.
  Point ToParent(const Point& x) const;

  const QueryStats& stats() const;
  QueryStats& mutable_stats() const;
  std::int64_t distinct_queries() const { return stats().distinct(); }
  std::int64_t raw_lookups() const { return stats().raw_lookups; }
  std::uint64_t trace_hash() const { return stats().trace_hash; }

  // f_s: same lattice, but only points of the slice may be queried and fixed
  // coordinates of every image are overwritten with the slice values.
  Oracle Restrict(const Slice& s) const;

  // Coordinate permutation: view dimension i is dimension order[i] here.
  Oracle Permute(std::vector<int> order) const;

  // The (k-1)-dimensional instance on box ∩ {x_drop = box.lo[drop]}.
  // Requires box.lo[drop] == box.hi[drop]. Points are translated so the box
  // corner becomes (1, ..., 1) and images are clamped into the box.
  Oracle SubBox(const Box& box, int drop_dim) const;

 private:
  struct Root;
  struct View;

  Oracle(Shape shape, std::shared_ptr<Root> root, std::shared_ptr<const View> view);

  Shape shape_;
  std::shared_ptr<Root> root_;
  std::shared_ptr<const View> view_;
};

Oracle RestrictOracle(const Oracle& f, const Slice& s);

std::vector<DimFlow> Classify(const Oracle& f, const Point& x);

// x <= f(x); the least element always qualifies.
bool InUpSet(const Oracle& f, const Point& x);
// f(x) <= x; the greatest element always qualifies.
bool InDownSet(const Oracle& f, const Point& x);

// Requires x <= y (UsageError otherwise). Returns the pair iff
// f(x) is not <= f(y).
std::optional<Violation> ViolationCheck(const Oracle& f, const Point& x,
                                        const Point& y);

// Re-checks a solution against `f`: f(x) = x for a fixed point, and
// x <= y with f(x) not <= f(y) for a violation.
bool IsValidSolution(const Oracle& f, const Solution& s);

}  // namespace tarski

#endif  // TARSKI_ORACLE_H_
