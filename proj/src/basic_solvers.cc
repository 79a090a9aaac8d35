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

#include "tarski/errors.h"

namespace tarski {

int CeilLog2(std::int64_t n) {
  int bits = 0;
  while ((std::int64_t{1} << bits) < n) ++bits;
  return bits;
}

std::int64_t UpsetPathBudget(const Box& box) {
  std::int64_t total = 2;
  for (int i = 0; i < box.lo.dims(); ++i) total += box.width(i);
  return total;
}

Solution UpsetPath(const Oracle& f, const Box& box) {
  if (!f.shape().Contains(box.lo) || !f.shape().Contains(box.hi) ||
      !Leq(box.lo, box.hi)) {
    throw UsageError("path box " + ToString(box.lo) + ".." + ToString(box.hi) +
                     " is not a sub-instance");
  }
  QueryStats& stats = f.mutable_stats();
  const std::int64_t start = stats.distinct();
  ++stats.path_calls;

  Point x = box.lo;
  Point fx = f(x);
  if (!Leq(x, fx)) throw UsageError("path start " + ToString(x) + " is not in Up(f)");
  if (!InDownSet(f, box.hi)) {
    throw UsageError("path end " + ToString(box.hi) + " is not in Down(f)");
  }

  auto finish = [&](Solution s) {
    if (stats.distinct() - start > UpsetPathBudget(box)) ++stats.path_budget_breaches;
    return s;
  };

  while (true) {
    int dim = -1;
    for (int i = 0; i < x.dims(); ++i) {
      if (x[i] < fx[i]) {
        dim = i;
        break;
      }
    }
    if (dim < 0) return finish(FixedPoint{x});
    // f(hi)_dim <= hi_dim = x_dim < f(x)_dim.
    if (x[dim] == box.hi[dim]) return finish(Violation{x, box.hi});
    Point next = x.With(dim, x[dim] + 1);
    Point fnext = f(next);
    if (!Leq(next, fnext)) return finish(Violation{x, next});
    x = std::move(next);
    fx = std::move(fnext);
  }
}

std::int64_t BisectBudget(int len) { return CeilLog2(len < 1 ? 1 : len) + 2; }

BisectResult BisectWitness(const Oracle& f, const Point& lo, const Point& hi,
                           int dim) {
  if (lo.dims() != hi.dims() || dim < 0 || dim >= lo.dims()) {
    throw UsageError("bisection dimension out of range");
  }
  for (int i = 0; i < lo.dims(); ++i) {
    if (i != dim && lo[i] != hi[i]) {
      throw UsageError("bisection end points must differ only in the search dimension");
    }
  }
  if (lo[dim] > hi[dim]) throw UsageError("bisection end points out of order");

  const Point flo = f(lo);
  if (flo[dim] == lo[dim]) return lo;
  if (flo[dim] < lo[dim]) {
    throw UsageError("bisection start " + ToString(lo) + " flows down");
  }
  const Point fhi = f(hi);
  if (fhi[dim] == hi[dim]) return hi;
  if (fhi[dim] > hi[dim]) {
    throw UsageError("bisection end " + ToString(hi) + " flows up");
  }

  // Invariant: xl_dim < f(xl)_dim and f(xr)_dim < xr_dim.
  Point xl = lo;
  Point xr = hi;
  while (xr[dim] - xl[dim] > 1) {
    Point m = xl.With(dim, (xl[dim] + xr[dim]) / 2);
    const int fm = f(m)[dim];
    if (fm == m[dim]) return m;
    if (m[dim] < fm) {
      xl = std::move(m);
    } else {
      xr = std::move(m);
    }
  }
  // f(xl)_dim > xl_dim = xr_dim - 1 >= f(xr)_dim.
  return Violation{xl, xr};
}

Solution Solve1d(const Oracle& f) {
  if (f.dims() != 1) {
    throw UsageError("one-dimensional solver called on a " +
                     std::to_string(f.dims()) + "-dimensional lattice");
  }
  int lo = 1;
  int hi = f.shape().width(0);
  while (hi - lo > 1) {
    const int m = (lo + hi) / 2;
    const int fm = f(Point{m})[0];
    if (fm == m) return FixedPoint{Point{m}};
    if (m < fm) {
      lo = m;
    } else {
      hi = m;
    }
  }
  if (f(Point{lo})[0] == lo) return FixedPoint{Point{lo}};
  if (f(Point{hi})[0] == hi) return FixedPoint{Point{hi}};
  return Violation{Point{lo}, Point{hi}};
}

Solution BruteForce(const Oracle& f, std::int64_t cap) {
  if (f.shape().size() > cap) {
    throw SizeError("brute force refuses a lattice of " +
                    std::to_string(f.shape().size()) + " points (cap " +
                    std::to_string(cap) + ")");
  }
  std::optional<Point> fixed;
  ForEachPoint(f.shape(), [&](const Point& x) {
    if (f(x) == x) {
      fixed = x;
      return false;
    }
    return true;
  });
  if (fixed) return FixedPoint{*fixed};
  if (auto v = VerifyMonotone(f, cap)) return *v;
  throw InternalError("no fixed point and no violation: the oracle is not a function on its lattice");
}

}  // namespace tarski
