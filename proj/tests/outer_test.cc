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

#include "tarski/outer.h"

#include <gtest/gtest.h>

#include <random>

#include "tarski/basic_solvers.h"
#include "tarski/errors.h"
#include "tarski/instances.h"

namespace tarski {
namespace {

const Shape kCube{8, 8, 8};

TEST(OuterSolveTest, HiddenPoint) {
  Oracle f = HiddenPoint(kCube, {5, 2, 7});
  EXPECT_EQ(OuterSolve(f), Solution(FixedPoint{{5, 2, 7}}));
  EXPECT_EQ(BruteForce(HiddenPoint(kCube, {5, 2, 7})), Solution(FixedPoint{{5, 2, 7}}));
}

TEST(OuterSolveTest, IdentityGolden) {
  Oracle f(kCube, [](const Point& x) { return x; });
  EXPECT_EQ(OuterSolve(f), Solution(FixedPoint{{7, 7, 7}}));
  EXPECT_EQ(f.distinct_queries(), 11);
  EXPECT_EQ(f.trace_hash(), 11404844738716436713ULL);
}

TEST(OuterSolveTest, RequiresThreeDimensions) {
  EXPECT_THROW(OuterSolve(HiddenPoint(Shape{4, 4}, {1, 2})), UsageError);
  EXPECT_THROW(OuterSolve(HiddenPoint(Shape{4, 4, 4, 4}, {1, 2, 3, 4})), UsageError);
}

TEST(OuterSolveTest, InvalidInnerOutcomeIsInternalError) {
  Oracle f = HiddenPoint(kCube, {5, 2, 7});
  OuterOptions opts;
  opts.inner = [](const Oracle&, const Box& box, const Slice&) -> InnerOutcome {
    return UpPoint{box.hi};
  };
  EXPECT_THROW(OuterSolve(f, opts), InternalError);
  // A valid Up point that is off the requested slice.
  opts.inner = [](const Oracle&, const Box& box, const Slice&) -> InnerOutcome {
    return UpPoint{box.lo};
  };
  EXPECT_THROW(OuterSolve(f, opts), InternalError);
}

TEST(OuterSolveTest, TelemetryAndLoopInvariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    Shape shape{n, 1 + static_cast<int>(rng() % n), 1 + static_cast<int>(rng() % n)};
    Oracle f = RandomMonotone(shape, trial, 1 + trial % 4);
    SolveTelemetry tel;
    OuterOptions opts;
    opts.telemetry = &tel;
    opts.check_invariants = true;
    Solution s = OuterSolve(f, opts);
    ASSERT_TRUE(IsValidSolution(RandomMonotone(shape, trial, 1 + trial % 4), s));
    EXPECT_LE(tel.outer_iterations, 3 * CeilLog2(n) + 3);
    EXPECT_EQ(tel.outer_iterations, static_cast<int>(tel.inner_calls.size()));
    std::int64_t sum = 0;
    for (const InnerCallRecord& r : tel.inner_calls) {
      EXPECT_TRUE(InUpSet(f, r.box.lo));
      EXPECT_TRUE(InDownSet(f, r.box.hi));
      EXPECT_LT(r.box.lo[r.fixed_dim], r.slice_value);
      EXPECT_LT(r.slice_value, r.box.hi[r.fixed_dim]);
      EXPECT_EQ(r.n, n);
      sum += r.queries;
    }
    EXPECT_LE(sum, f.distinct_queries());
    EXPECT_EQ(f.stats().path_budget_breaches, 0);
  }
}

TEST(OuterSolveTest, ViolatedInstances) {
  for (int seed = 0; seed < 200; ++seed) {
    InstanceSpec spec = InjectViolation(RandomMonotoneSpec(kCube, seed, 2), seed);
    Oracle f = BuildOracle(spec);
    Solution s = OuterSolve(f);
    EXPECT_TRUE(IsValidSolution(BuildOracle(spec), s)) << seed;
  }
}

TEST(OuterSolveTest, TraceRecordsSlices) {
  Oracle f = HiddenPoint(kCube, {5, 2, 7});
  std::vector<std::string> events;
  OuterOptions opts;
  opts.trace = [&](const std::string& e) {
    if (e.rfind("outer", 0) == 0) events.push_back(e);
  };
  OuterSolve(f, opts);
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(events.front(), "outer box=[(1,1,1)..(8,8,8)] dim=0 slice=4 -> up (4,2,7)");
  EXPECT_EQ(events.back().rfind("outer finish", 0), 0u);
}

}  // namespace
}  // namespace tarski
