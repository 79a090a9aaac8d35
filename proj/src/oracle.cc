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

#include "tarski/oracle.h"

#include <algorithm>
#include <sstream>

#include "tarski/errors.h"

namespace tarski {

struct Oracle::Root {
  EvalFn eval;
  std::unordered_map<Point, Point, PointHash> cache;
  QueryStats stats;
};

struct Oracle::View {
  Oracle parent;
  std::function<Point(const Point&)> to_parent;
  // (view point, parent image) -> view image
  std::function<Point(const Point&, const Point&)> from_parent;
};

namespace {

void HashPoint(std::uint64_t& h, const Point& p) {
  for (int c : p.coords()) {
    auto v = static_cast<std::uint32_t>(c);
    for (int byte = 0; byte < 4; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 1099511628211ULL;
    }
  }
  // Point separator.
  h ^= 0xffu;
  h *= 1099511628211ULL;
}

}  // namespace

Oracle::Oracle(Shape shape, EvalFn eval)
    : shape_(std::move(shape)), root_(std::make_shared<Root>()) {
  root_->eval = std::move(eval);
}

Oracle::Oracle(Shape shape, std::shared_ptr<Root> root,
               std::shared_ptr<const View> view)
    : shape_(std::move(shape)), root_(std::move(root)), view_(std::move(view)) {}

Point Oracle::Query(const Point& x) const {
  if (!shape_.Contains(x)) {
    std::ostringstream os;
    os << "query " << x << " outside lattice " << shape_;
    throw UsageError(os.str());
  }
  if (view_) {
    Point px = view_->to_parent(x);
    return view_->from_parent(x, view_->parent.Query(px));
  }
  QueryStats& st = root_->stats;
  ++st.raw_lookups;
  if (auto it = root_->cache.find(x); it != root_->cache.end()) {
    return it->second;
  }
  Point fx = root_->eval(x);
  if (!shape_.Contains(fx)) {
    std::ostringstream os;
    os << "oracle maps " << x << " to " << fx << " outside lattice " << shape_;
    throw InstanceCorruptError(os.str());
  }
  root_->cache.emplace(x, fx);
  st.trace.push_back(x);
  HashPoint(st.trace_hash, x);
  return fx;
}

Point Oracle::ToParent(const Point& x) const {
  return view_ ? view_->to_parent(x) : x;
}

const QueryStats& Oracle::stats() const { return root_->stats; }

QueryStats& Oracle::mutable_stats() const { return root_->stats; }

Oracle Oracle::Restrict(const Slice& s) const {
  if (!s.IsValidFor(shape_)) throw UsageError("slice does not fit the lattice");
  auto view = std::make_shared<View>(View{
      *this,
      [s](const Point& x) {
        if (!s.Contains(x)) {
          throw UsageError("query " + ToString(x) + " is not on the slice");
        }
        return x;
      },
      [s](const Point&, const Point& fx) { return Project(fx, s); }});
  return Oracle(shape_, root_, std::move(view));
}

Oracle Oracle::Permute(std::vector<int> order) const {
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted[i] != i || static_cast<int>(order.size()) != dims()) {
      throw UsageError("not a permutation of the lattice dimensions");
    }
  }
  std::vector<int> widths(dims());
  for (int i = 0; i < dims(); ++i) widths[i] = shape_.width(order[i]);
  auto view = std::make_shared<View>(View{
      *this,
      [order](const Point& x) {
        Point p = x;
        for (int i = 0; i < x.dims(); ++i) p[order[i]] = x[i];
        return p;
      },
      [order](const Point& x, const Point& fx) {
        Point out = x;
        for (int i = 0; i < x.dims(); ++i) out[i] = fx[order[i]];
        return out;
      }});
  return Oracle(Shape(std::move(widths)), root_, std::move(view));
}

Oracle Oracle::SubBox(const Box& box, int drop_dim) const {
  if (dims() < 2) throw UsageError("cannot drop the only dimension");
  if (!shape_.Contains(box.lo) || !shape_.Contains(box.hi) ||
      !Leq(box.lo, box.hi) || box.lo[drop_dim] != box.hi[drop_dim]) {
    throw UsageError("sub-box must be flat in the dropped dimension");
  }
  std::vector<int> widths;
  for (int i = 0; i < dims(); ++i) {
    if (i != drop_dim) widths.push_back(box.width(i) + 1);
  }
  auto view = std::make_shared<View>(View{
      *this,
      [box, drop_dim](const Point& x) {
        Point p = box.lo;
        for (int i = 0, j = 0; i < p.dims(); ++i) {
          if (i == drop_dim) continue;
          p[i] = box.lo[i] + x[j++] - 1;
        }
        return p;
      },
      [box, drop_dim](const Point& x, const Point& fx) {
        Point out = x;
        for (int i = 0, j = 0; i < fx.dims(); ++i) {
          if (i == drop_dim) continue;
          out[j++] = std::clamp(fx[i], box.lo[i], box.hi[i]) - box.lo[i] + 1;
        }
        return out;
      }});
  return Oracle(Shape(std::move(widths)), root_, std::move(view));
}

Oracle RestrictOracle(const Oracle& f, const Slice& s) { return f.Restrict(s); }

std::vector<DimFlow> Classify(const Oracle& f, const Point& x) {
  return FlowsOf(x, f(x));
}

bool InUpSet(const Oracle& f, const Point& x) { return Leq(x, f(x)); }

bool InDownSet(const Oracle& f, const Point& x) { return Leq(f(x), x); }

std::optional<Violation> ViolationCheck(const Oracle& f, const Point& x,
                                        const Point& y) {
  if (!Leq(x, y)) {
    throw UsageError("violation check needs x <= y, got " + ToString(x) +
                     " and " + ToString(y));
  }
  if (Leq(f(x), f(y))) return std::nullopt;
  return Violation{x, y};
}

bool IsValidSolution(const Oracle& f, const Solution& s) {
  if (const auto* fp = std::get_if<FixedPoint>(&s)) {
    return f.shape().Contains(fp->x) && f(fp->x) == fp->x;
  }
  const auto& v = std::get<Violation>(s);
  if (!f.shape().Contains(v.x) || !f.shape().Contains(v.y)) return false;
  if (!Leq(v.x, v.y)) return false;
  return !Leq(f(v.x), f(v.y));
}

}  // namespace tarski
