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

#include "tarski/basic_solvers.h"

#include <gtest/gtest.h>

#include "tarski/errors.h"

namespace tarski {
namespace {

Oracle Table1d(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  return Oracle(Shape{n}, [images](const Point& x) { return Point{images[x[0] - 1]}; });
}

Oracle Identity(Shape shape) {
  return Oracle(std::move(shape), [](const Point& x) { return x; });
}

TEST(UpsetPathTest, WalksToHiddenPoint) {
  Oracle f = HiddenPoint(Shape{5}, {3});
  EXPECT_EQ(UpsetPath(f, Box::Whole(f.shape())), Solution(FixedPoint{{3}}));
  EXPECT_EQ(f.stats().trace, (std::vector<Point>{{1}, {5}, {2}, {3}}));
}

TEST(UpsetPathTest, FixedStart) {
  Oracle f = Identity(Shape{4, 4});
  EXPECT_EQ(UpsetPath(f, Box{{2, 3}, {4, 4}}), Solution(FixedPoint{{2, 3}}));
}

TEST(UpsetPathTest, AdjacentViolation) {
  Oracle f = Table1d({2, 1});
  EXPECT_EQ(UpsetPath(f, Box::Whole(f.shape())), Solution(Violation{{1}, {2}}));
}

TEST(UpsetPathTest, ExitThroughBoxTop) {
  // (1,1) wants to go up in dim 0, but the box is flat there.
  Oracle f(Shape{3, 3}, [](const Point& x) {
    return Point{x[1] < 3 ? 3 : 1, x[1]};
  });
  Solution s = UpsetPath(f, Box{{1, 1}, {1, 3}});
  EXPECT_EQ(s, Solution(Violation{{1, 1}, {1, 3}}));
  EXPECT_TRUE(IsValidSolution(f, s));
}

TEST(UpsetPathTest, Preconditions) {
  Oracle f = HiddenPoint(Shape{5}, {3});
  EXPECT_THROW(UpsetPath(f, Box{{4}, {5}}), UsageError);
  EXPECT_THROW(UpsetPath(f, Box{{1}, {2}}), UsageError);
  EXPECT_THROW(UpsetPath(f, Box{{3}, {2}}), UsageError);
}

TEST(UpsetPathTest, BudgetAndNoViolationOnMonotone) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Shape shape{5, 4, 6};
    Oracle f = RandomMonotone(shape, seed, 2);
    Solution s = UpsetPath(f, Box::Whole(shape));
    EXPECT_TRUE(IsFixedPoint(s)) << ToString(s);
    EXPECT_TRUE(IsValidSolution(f, s));
    EXPECT_LE(f.distinct_queries(), UpsetPathBudget(Box::Whole(shape)));
    EXPECT_EQ(f.stats().path_budget_breaches, 0);
  }
}

TEST(UpsetPathTest, ViolatedInstancesYieldValidSolutions) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Shape shape{3, 3, 3};
    Oracle f = BuildOracle(InjectViolation(RandomMonotoneSpec(shape, seed, 2), seed));
    Solution s = UpsetPath(f, Box::Whole(shape));
    EXPECT_TRUE(IsValidSolution(f, s)) << ToString(s);
    EXPECT_EQ(f.stats().path_budget_breaches, 0);
  }
}

TEST(BisectWitnessTest, FindsLevelPoint) {
  Oracle f = HiddenPoint(Shape{5, 5}, {3, 5});
  BisectResult r = BisectWitness(f, {1, 5}, {5, 5}, 0);
  EXPECT_EQ(r, BisectResult(Point{3, 5}));
}

TEST(BisectWitnessTest, ReturnsLevelStart) {
  Oracle f = Identity(Shape{9});
  EXPECT_EQ(BisectWitness(f, {2}, {8}, 0), BisectResult(Point{2}));
  EXPECT_EQ(f.distinct_queries(), 1);
}

TEST(BisectWitnessTest, AdjacentSqueeze) {
  Oracle f = Table1d({2, 3, 2, 3});
  BisectResult r = BisectWitness(f, {1}, {4}, 0);
  ASSERT_TRUE(std::holds_alternative<Violation>(r));
  EXPECT_EQ(std::get<Violation>(r), (Violation{{2}, {3}}));
  EXPECT_TRUE(IsValidSolution(f, std::get<Violation>(r)));
}

TEST(BisectWitnessTest, Preconditions) {
  Oracle f = HiddenPoint(Shape{5, 5}, {3, 3});
  EXPECT_THROW(BisectWitness(f, {1, 1}, {5, 2}, 0), UsageError);
  EXPECT_THROW(BisectWitness(f, {4, 1}, {5, 1}, 0), UsageError);
  EXPECT_THROW(BisectWitness(f, {1, 1}, {2, 1}, 0), UsageError);
}

TEST(BisectWitnessTest, Budget) {
  for (int n = 2; n <= 130; ++n) {
    for (int t = 1; t <= n; t += 7) {
      Oracle f = HiddenPoint(Shape{n}, {t});
      BisectResult r = BisectWitness(f, {1}, {n}, 0);
      EXPECT_EQ(r, BisectResult(Point{t}));
      EXPECT_LE(f.distinct_queries(), BisectBudget(n - 1)) << n << " " << t;
    }
  }
}

TEST(Solve1dTest, Examples) {
  Oracle id = Identity(Shape{7});
  EXPECT_EQ(Solve1d(id), Solution(FixedPoint{{4}}));
  EXPECT_EQ(id.distinct_queries(), 1);
  EXPECT_EQ(Solve1d(HiddenPoint(Shape{7}, {6})), Solution(FixedPoint{{6}}));
  EXPECT_EQ(Solve1d(Table1d({2, 1})), Solution(Violation{{1}, {2}}));
  EXPECT_EQ(Solve1d(Identity(Shape{1})), Solution(FixedPoint{{1}}));
  EXPECT_THROW(Solve1d(Identity(Shape{2, 2})), UsageError);
}

TEST(Solve1dTest, BudgetAndValidity) {
  for (int n = 1; n <= 200; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Oracle f = RandomMonotone(Shape{n}, seed, 1);
      Solution s = Solve1d(f);
      EXPECT_TRUE(IsFixedPoint(s));
      EXPECT_TRUE(IsValidSolution(f, s));
      EXPECT_LE(f.distinct_queries(), CeilLog2(n) + 2);
    }
  }
}

TEST(Solve1dTest, ArbitraryTablesGiveValidSolutions) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> images(n, 1);
    while (true) {
      Oracle f = Table1d(images);
      EXPECT_TRUE(IsValidSolution(f, Solve1d(f)));
      int i = 0;
      while (i < n && images[i] == n) images[i++] = 1;
      if (i == n) break;
      ++images[i];
    }
  }
}

TEST(BruteForceTest, Examples) {
  EXPECT_EQ(BruteForce(HiddenPoint(Shape{4, 3, 2}, {2, 3, 1})),
            Solution(FixedPoint{{2, 3, 1}}));
  EXPECT_EQ(BruteForce(Identity(Shape{3, 3})), Solution(FixedPoint{{1, 1}}));
  EXPECT_THROW(BruteForce(Identity(Shape{10, 10}), 50), SizeError);
}

TEST(BruteForceTest, ViolationWhenNoFixedPoint) {
  // f(x) = x + 1 wrapping around: no fixed point anywhere.
  Oracle f = Table1d({2, 3, 1});
  Solution s = BruteForce(f);
  ASSERT_FALSE(IsFixedPoint(s));
  EXPECT_TRUE(IsValidSolution(f, s));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Oracle g = BuildOracle(InjectViolation(HiddenPointSpec(Shape{3, 3}, {2, 2}), seed));
    EXPECT_TRUE(IsValidSolution(g, BruteForce(g)));
  }
}

TEST(CeilLog2Test, Values) {
  EXPECT_EQ(CeilLog2(1), 0);
  EXPECT_EQ(CeilLog2(2), 1);
  EXPECT_EQ(CeilLog2(3), 2);
  EXPECT_EQ(CeilLog2(16), 4);
  EXPECT_EQ(CeilLog2(1025), 11);
}

}  // namespace
}  // namespace tarski
