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

#include "tarski/kd_recursion.h"

#include <algorithm>
#include <sstream>
#include <variant>

#include "tarski/basic_solvers.h"
#include "tarski/errors.h"
#include "tarski/outer.h"

namespace tarski {

std::int64_t LevelRecord::Bound() const {
  return (max_child + 2) * (CeilLog2(std::max(n, 1)) + 2);
}

Solution DqySolve(const Oracle& f, const BaseSolver& base, const DqyContext& ctx) {
  const int k = f.dims();
  if (k < 2) throw UsageError("dimension reduction needs k >= 2");
  if (!base) throw UsageError("dimension reduction needs a base solver");

  int wide = 0;
  for (int i = 1; i < k; ++i) {
    if (f.shape().width(i) > f.shape().width(wide)) wide = i;
  }
  Oracle g = f;
  if (wide != 0) {
    std::vector<int> order{wide};
    for (int i = 0; i < k; ++i) {
      if (i != wide) order.push_back(i);
    }
    g = f.Permute(order);
  }
  // f itself may be a view, so only a permutation is undone on the way out.
  auto to_f = [&](const Point& p) { return wide != 0 ? g.ToParent(p) : p; };

  const std::int64_t start = f.distinct_queries();
  LevelRecord rec;
  rec.level = ctx.level;
  rec.k = k;
  rec.n = f.shape().max_width();

  const Point least = g.shape().Least();
  const Point greatest = g.shape().Greatest();
  Point x = least;
  Point y = greatest;

  auto finish = [&](const Solution& s) -> Solution {
    rec.queries = f.distinct_queries() - start;
    if (ctx.telemetry) ctx.telemetry->levels.push_back(rec);
    Solution out;
    if (const auto* fp = std::get_if<FixedPoint>(&s)) {
      out = FixedPoint{to_f(fp->x)};
    } else {
      const auto& v = std::get<Violation>(s);
      out = Violation{to_f(v.x), to_f(v.y)};
    }
    if (ctx.trace) {
      ctx.trace("dqy level=" + std::to_string(ctx.level) + " -> " + ToString(out));
    }
    return out;
  };

  // Either a final answer or a slice fixed point p of g.
  auto solve_slice = [&](int v) -> std::variant<Solution, Point> {
    const Point a = x.With(0, v);
    const Point b = y.With(0, v);
    if (a != x) {
      const Point fa = g(a);
      // f(a)_i < a_i = x_i <= f(x)_i.
      for (int i = 1; i < k; ++i) {
        if (fa[i] < a[i]) return Solution(Violation{x, a});
      }
    }
    if (b != y) {
      const Point fb = g(b);
      for (int i = 1; i < k; ++i) {
        if (fb[i] > b[i]) return Solution(Violation{b, y});
      }
    }
    const Oracle child = g.SubBox(Box{a, b}, 0);
    const std::int64_t before = f.distinct_queries();
    const Solution cs = base(child);
    rec.max_child = std::max(rec.max_child, f.distinct_queries() - before);
    ++rec.iterations;
    if (ctx.trace) {
      std::ostringstream os;
      os << "dqy level=" << ctx.level << " slice=" << v << " box=" << Box{a, b}
         << " child=" << ToString(cs);
      ctx.trace(os.str());
    }
    if (const auto* cv = std::get_if<Violation>(&cs)) {
      Violation m{child.ToParent(cv->x), child.ToParent(cv->y)};
      if (!IsValidSolution(g, m)) {
        throw InternalError("child solver returned an invalid violation");
      }
      return Solution(m);
    }
    const Point p = child.ToParent(std::get<FixedPoint>(cs).x);
    const Point fp = g(p);
    // The clamp only binds on the faces of the box.
    for (int i = 1; i < k; ++i) {
      if (fp[i] > p[i]) return Solution(Violation{p, b});
      if (fp[i] < p[i]) return Solution(Violation{a, p});
    }
    return p;
  };

  while (y[0] - x[0] >= 2) {
    auto r = solve_slice((x[0] + y[0]) / 2);
    if (auto* s = std::get_if<Solution>(&r)) return finish(*s);
    const Point p = std::get<Point>(r);
    const int fp0 = g(p)[0];
    if (fp0 == p[0]) return finish(FixedPoint{p});
    if (fp0 > p[0]) {
      x = p;
    } else {
      y = p;
    }
  }
  // The end slices have not been examined yet.
  if (x == least) {
    auto r = solve_slice(x[0]);
    if (auto* s = std::get_if<Solution>(&r)) return finish(*s);
    const Point p = std::get<Point>(r);
    const int fp0 = g(p)[0];
    if (fp0 == p[0]) return finish(FixedPoint{p});
    if (fp0 < p[0]) throw InternalError("slice point below the least element");
    x = p;
  }
  if (y == greatest) {
    auto r = solve_slice(y[0]);
    if (auto* s = std::get_if<Solution>(&r)) return finish(*s);
    const Point p = std::get<Point>(r);
    const int fp0 = g(p)[0];
    if (fp0 == p[0]) return finish(FixedPoint{p});
    if (fp0 > p[0]) throw InternalError("slice point above the greatest element");
    y = p;
  }
  // f(x)_0 > x_0 and f(y)_0 < y_0 = x_0 + 1.
  const Violation v{x, y};
  if (!IsValidSolution(g, v)) {
    throw InternalError("dimension reduction ended without a solution at " +
                        ToString(x) + " " + ToString(y));
  }
  return finish(v);
}

SolveMode ParseSolveMode(const std::string& name) {
  if (name == "auto") return SolveMode::kAuto;
  if (name == "dqy") return SolveMode::kDqyClassic;
  if (name == "fast") return SolveMode::kFast;
  throw UsageError("unknown solve mode '" + name + "' (expected auto, dqy or fast)");
}

std::string ToString(SolveMode mode) {
  switch (mode) {
    case SolveMode::kAuto:
      return "auto";
    case SolveMode::kDqyClassic:
      return "dqy";
    case SolveMode::kFast:
      return "fast";
  }
  return "?";
}

namespace {

struct Env {
  SolveTelemetry* telemetry;
  TraceSink trace;
  bool check_invariants;
};

BaseSolver ClassicBase(Env env, int level) {
  return [env, level](const Oracle& g) -> Solution {
    if (g.dims() == 1) return Solve1d(g);
    return DqySolve(g, ClassicBase(env, level + 1), {env.telemetry, env.trace, level});
  };
}

BaseSolver FastBase(Env env, int level) {
  return [env, level](const Oracle& g) -> Solution {
    if (g.dims() == 3) {
      return OuterSolve(g, OuterOptions{{}, env.telemetry, env.trace, env.check_invariants});
    }
    return DqySolve(g, FastBase(env, level + 1), {env.telemetry, env.trace, level});
  };
}

}  // namespace

Solution Solve(const Oracle& f, SolveMode mode, const SolveOptions& options) {
  const int k = f.dims();
  if (mode == SolveMode::kAuto) mode = k >= 3 ? SolveMode::kFast : SolveMode::kDqyClassic;
  if (mode == SolveMode::kFast && k < 3) {
    throw UsageError("fast mode needs k >= 3");
  }
  SolveTelemetry local;
  SolveTelemetry* tel = options.telemetry ? options.telemetry : &local;
  const Env env{tel, options.trace, options.check_invariants};

  if (k == 1) {
    const std::int64_t before = f.distinct_queries();
    Solution s = Solve1d(f);
    tel->top_iterations = static_cast<int>(f.distinct_queries() - before);
    return s;
  }
  if (mode == SolveMode::kFast && k == 3) {
    const int before = tel->outer_iterations;
    Solution s = OuterSolve(f, OuterOptions{{}, tel, env.trace, env.check_invariants});
    tel->top_iterations = tel->outer_iterations - before;
    return s;
  }
  BaseSolver base = mode == SolveMode::kFast ? FastBase(env, 1) : ClassicBase(env, 1);
  Solution s = DqySolve(f, base, {tel, env.trace, 0});
  // The outermost level finishes last.
  tel->top_iterations = tel->levels.back().iterations;
  return s;
}

}  // namespace tarski
