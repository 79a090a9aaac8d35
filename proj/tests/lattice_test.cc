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

#include <random>

#include <gtest/gtest.h>

#include "tarski/errors.h"
#include "tarski/lattice.h"
#include "tarski/oracle.h"

namespace tarski {
namespace {

Oracle Identity(Shape shape) {
  return Oracle(std::move(shape), [](const Point& x) { return x; });
}

// f(x)_i = x_i + sgn(t_i - x_i), written out independently of the library.
Oracle Hidden(Shape shape, Point t) {
  return Oracle(std::move(shape), [t](const Point& x) {
    Point out = x;
    for (int i = 0; i < x.dims(); ++i) out[i] += (t[i] > x[i]) - (t[i] < x[i]);
    return out;
  });
}

TEST(LeqTest, Componentwise) {
  EXPECT_TRUE(Leq({1, 2, 3}, {1, 3, 3}));
  EXPECT_FALSE(Leq({2, 1}, {1, 2}));
  EXPECT_FALSE(Leq({1, 2}, {2, 1}));
  EXPECT_TRUE(Leq({4, 4}, {4, 4}));
  EXPECT_THROW(Leq({1}, {1, 1}), UsageError);
}

TEST(ShapeTest, RejectsBadWidths) {
  EXPECT_THROW(Shape(std::vector<int>{}), UsageError);
  EXPECT_THROW(Shape({3, 0}), UsageError);
  EXPECT_THROW(CheckedPoint(Shape{2, 2}, {0, 1}), UsageError);
}

TEST(ShapeTest, IndexRoundTrip) {
  Shape s{3, 4, 2};
  for (std::int64_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s.IndexOf(s.PointAt(i)), i);
  }
  EXPECT_EQ(s.IndexOf({2, 1, 1}), 1);
  EXPECT_EQ(s.IndexOf({1, 2, 1}), 3);
}

TEST(ForEachPointTest, LexicographicOrder) {
  std::vector<Point> seen;
  ForEachPoint(Shape{2, 3}, [&](const Point& p) {
    seen.push_back(p);
    return true;
  });
  ASSERT_EQ(seen.size(), 6u);
  EXPECT_EQ(seen[0], (Point{1, 1}));
  EXPECT_EQ(seen[1], (Point{1, 2}));
  EXPECT_EQ(seen[3], (Point{2, 1}));
  EXPECT_EQ(seen[5], (Point{2, 3}));
}

TEST(ClassifyTest, HiddenPointFlows) {
  Oracle f = Hidden(Shape{3, 3}, {3, 3});
  EXPECT_EQ(Classify(f, {1, 1}),
            (std::vector<DimFlow>{DimFlow::kUp, DimFlow::kUp}));
  EXPECT_EQ(Classify(f, {3, 1}),
            (std::vector<DimFlow>{DimFlow::kLevel, DimFlow::kUp}));
  Oracle id = Identity(Shape{4, 1, 2});
  EXPECT_EQ(Classify(id, {2, 1, 2}), std::vector<DimFlow>(3, DimFlow::kLevel));
}

TEST(UpDownTest, CornersAndFixedPoints) {
  Oracle f = Hidden(Shape{5, 5, 5}, {2, 4, 1});
  EXPECT_TRUE(InUpSet(f, f.shape().Least()));
  EXPECT_TRUE(InDownSet(f, f.shape().Greatest()));
  EXPECT_TRUE(InUpSet(f, {2, 4, 1}));
  EXPECT_TRUE(InDownSet(f, {2, 4, 1}));
  ForEachPoint(f.shape(), [&](const Point& x) {
    EXPECT_EQ(InUpSet(f, x) && InDownSet(f, x), f(x) == x);
    return true;
  });
}

TEST(ViolationCheckTest, HandTable) {
  Oracle f(Shape{2, 2}, [](const Point& x) {
    if (x == Point{1, 1}) return Point{2, 2};
    if (x == Point{2, 1}) return Point{1, 2};
    return x;
  });
  auto v = ViolationCheck(f, {1, 1}, {2, 1});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->x, (Point{1, 1}));
  EXPECT_TRUE(IsValidSolution(f, *v));
  EXPECT_THROW(ViolationCheck(f, {2, 1}, {1, 1}), UsageError);
  EXPECT_FALSE(ViolationCheck(Identity(Shape{3}), {1}, {3}).has_value());
}

TEST(ViolationCheckTest, HiddenPointHasNone) {
  Oracle f = Hidden(Shape{3, 3, 2}, {2, 3, 1});
  ForEachPoint(f.shape(), [&](const Point& x) {
    ForEachPoint(f.shape(), [&](const Point& y) {
      if (Leq(x, y)) EXPECT_FALSE(ViolationCheck(f, x, y).has_value());
      return true;
    });
    return true;
  });
}

TEST(ProjectTest, Examples) {
  Slice s({std::nullopt, std::nullopt, 4});
  EXPECT_EQ(Project({2, 5, 7}, s), (Point{2, 5, 4}));
  EXPECT_EQ(Project({2, 5, 7}, Slice::Free(3)), (Point{2, 5, 7}));
  EXPECT_EQ(Project({1, 1}, Slice::Principle(2, 0, 3)), (Point{3, 1}));
  EXPECT_EQ(Project(Project({2, 5, 7}, s), s), Project({2, 5, 7}, s));
}

TEST(OracleTest, CountsDistinctQueries) {
  int evals = 0;
  Oracle f(Shape{4, 4}, [&](const Point& x) {
    ++evals;
    return x;
  });
  f({1, 1});
  f({1, 1});
  f({2, 3});
  Oracle copy = f;
  copy({2, 3});
  EXPECT_EQ(f.distinct_queries(), 2);
  EXPECT_EQ(f.raw_lookups(), 4);
  EXPECT_EQ(evals, 2);
  EXPECT_EQ(f.stats().trace, (std::vector<Point>{{1, 1}, {2, 3}}));
  EXPECT_THROW(f({5, 1}), UsageError);
}

TEST(OracleTest, TraceHashDependsOnOrder) {
  Oracle a = Identity(Shape{4, 4});
  Oracle b = Identity(Shape{4, 4});
  a({1, 2});
  a({2, 1});
  b({2, 1});
  b({1, 2});
  EXPECT_NE(a.trace_hash(), b.trace_hash());
  Oracle c = Identity(Shape{4, 4});
  c({1, 2});
  c({1, 2});
  c({2, 1});
  EXPECT_EQ(a.trace_hash(), c.trace_hash());
}

TEST(OracleTest, OutOfRangeImageIsCorrupt) {
  Oracle f(Shape{3}, [](const Point& x) { return Point{x[0] + 3}; });
  EXPECT_THROW(f({1}), InstanceCorruptError);
}

TEST(RestrictTest, OverwritesFixedCoordinatesAndSharesCounter) {
  Oracle f = Hidden(Shape{5, 5, 5}, {2, 4, 1});
  Slice s({std::nullopt, std::nullopt, 3});
  Oracle fs = RestrictOracle(f, s);
  ForEachPoint(Shape{5, 5}, [&](const Point& q) {
    Point x{q[0], q[1], 3};
    EXPECT_EQ(fs(x)[2], 3);
    EXPECT_EQ(fs(x)[0], f(x)[0]);
    return true;
  });
  EXPECT_EQ(f.distinct_queries(), 25);
  EXPECT_THROW(fs({1, 1, 2}), UsageError);
  Oracle free = f.Restrict(Slice::Free(3));
  EXPECT_EQ(free({1, 1, 1}), f({1, 1, 1}));
}

// A violation found inside a slice is a violation of the whole instance.
TEST(RestrictTest, SliceViolationLifts) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> table;
    Shape shape{3, 3, 3};
    for (std::int64_t i = 0; i < shape.size(); ++i) {
      table.push_back({static_cast<int>(rng() % 3) + 1,
                       static_cast<int>(rng() % 3) + 1,
                       static_cast<int>(rng() % 3) + 1});
    }
    Oracle f(shape, [&](const Point& x) { return table[shape.IndexOf(x)]; });
    int fixed = static_cast<int>(rng() % 3);
    Slice s = Slice::Principle(3, fixed, static_cast<int>(rng() % 3) + 1);
    Oracle fs = f.Restrict(s);
    ForEachPoint(shape, [&](const Point& x) {
      if (!s.Contains(x)) return true;
      ForEachPoint(shape, [&](const Point& y) {
        if (s.Contains(y) && Leq(x, y) && ViolationCheck(fs, x, y)) {
          EXPECT_TRUE(ViolationCheck(f, x, y).has_value());
        }
        return true;
      });
      return true;
    });
  }
}

TEST(PermuteTest, ReordersCoordinates) {
  Oracle f = Hidden(Shape{3, 5, 7}, {1, 2, 3});
  Oracle g = f.Permute({2, 0, 1});
  EXPECT_EQ(g.shape(), (Shape{7, 3, 5}));
  EXPECT_EQ(g.ToParent({4, 2, 5}), (Point{2, 5, 4}));
  // f(2,5,4) = (1,4,3), so g(4,2,5) = (3,1,4).
  EXPECT_EQ(g({4, 2, 5}), (Point{3, 1, 4}));
  EXPECT_EQ(f.distinct_queries(), 1);
  EXPECT_THROW(f.Permute({0, 0, 1}), UsageError);
}

TEST(SubBoxTest, TranslatesAndClamps) {
  Oracle f = Hidden(Shape{8, 8, 8}, {1, 8, 8});
  Box box{{3, 2, 5}, {3, 4, 8}};
  Oracle g = f.SubBox(box, 0);
  EXPECT_EQ(g.shape(), (Shape{3, 4}));
  EXPECT_EQ(g.ToParent({1, 1}), (Point{3, 2, 5}));
  // f(3,4,8) = (2,5,8); clamped to (4,8), translated to (3,4).
  EXPECT_EQ(g({3, 4}), (Point{3, 4}));
  EXPECT_EQ(g({1, 1}), (Point{2, 2}));
  EXPECT_THROW(f.SubBox(Box{{1, 1, 1}, {2, 2, 2}}, 0), UsageError);
}

}  // namespace
}  // namespace tarski
