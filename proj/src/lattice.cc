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

#include "tarski/lattice.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "tarski/errors.h"

namespace tarski {

Point Point::With(int dim, int value) const {
  Point out = *this;
  out.coords_[dim] = value;
  return out;
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << "(";
  for (int i = 0; i < p.dims(); ++i) {
    if (i > 0) os << ",";
    os << p[i];
  }
  return os << ")";
}

std::string ToString(const Point& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

std::size_t PointHash::operator()(const Point& p) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (int c : p.coords()) {
    h ^= static_cast<std::uint32_t>(c);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Shape::Shape(std::vector<int> widths) : widths_(std::move(widths)) {
  if (widths_.empty()) throw UsageError("shape needs at least one dimension");
  for (int w : widths_) {
    if (w < 1) throw UsageError("shape widths must be positive");
  }
}

int Shape::max_width() const {
  return *std::max_element(widths_.begin(), widths_.end());
}

std::int64_t Shape::size() const {
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t total = 1;
  for (int w : widths_) {
    if (total > kMax / w) return kMax;
    total *= w;
  }
  return total;
}

bool Shape::Contains(const Point& p) const {
  if (p.dims() != dims()) return false;
  for (int i = 0; i < dims(); ++i) {
    if (p[i] < 1 || p[i] > widths_[i]) return false;
  }
  return true;
}

Point Shape::Least() const { return Point(std::vector<int>(dims(), 1)); }

Point Shape::Greatest() const { return Point(widths_); }

std::int64_t Shape::IndexOf(const Point& p) const {
  std::int64_t index = 0;
  std::int64_t stride = 1;
  for (int i = 0; i < dims(); ++i) {
    index += static_cast<std::int64_t>(p[i] - 1) * stride;
    stride *= widths_[i];
  }
  return index;
}

Point Shape::PointAt(std::int64_t index) const {
  std::vector<int> coords(dims());
  for (int i = 0; i < dims(); ++i) {
    coords[i] = static_cast<int>(index % widths_[i]) + 1;
    index /= widths_[i];
  }
  return Point(std::move(coords));
}

std::ostream& operator<<(std::ostream& os, const Shape& s) {
  os << "[";
  for (int i = 0; i < s.dims(); ++i) {
    if (i > 0) os << "x";
    os << s.width(i);
  }
  return os << "]";
}

Point CheckedPoint(const Shape& shape, std::vector<int> coords) {
  Point p(std::move(coords));
  if (!shape.Contains(p)) {
    std::ostringstream os;
    os << "point " << p << " is outside lattice " << shape;
    throw UsageError(os.str());
  }
  return p;
}

bool Leq(const Point& x, const Point& y) {
  if (x.dims() != y.dims()) {
    throw UsageError("cannot compare points of different dimension");
  }
  for (int i = 0; i < x.dims(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

Box Box::Make(Point lo, Point hi) {
  if (!Leq(lo, hi)) {
    throw UsageError("box corners out of order: " + ToString(lo) + " vs " +
                     ToString(hi));
  }
  return Box{std::move(lo), std::move(hi)};
}

Box Box::Whole(const Shape& shape) {
  return Box{shape.Least(), shape.Greatest()};
}

std::int64_t Box::Volume() const {
  std::int64_t v = 1;
  for (int i = 0; i < lo.dims(); ++i) v *= hi[i] - lo[i] + 1;
  return v;
}

std::ostream& operator<<(std::ostream& os, const Box& b) {
  return os << "[" << b.lo << ".." << b.hi << "]";
}

Slice Slice::Free(int dims) {
  return Slice(std::vector<std::optional<int>>(dims));
}

Slice Slice::Principle(int dims, int fixed_dim, int value) {
  std::vector<std::optional<int>> entries(dims);
  entries.at(fixed_dim) = value;
  return Slice(std::move(entries));
}

bool Slice::IsPrinciple() const {
  return std::count_if(entries_.begin(), entries_.end(),
                       [](const auto& e) { return e.has_value(); }) == 1;
}

int Slice::FixedDim() const {
  if (!IsPrinciple()) throw UsageError("slice is not a principle slice");
  for (int i = 0; i < dims(); ++i) {
    if (entries_[i]) return i;
  }
  return -1;
}

bool Slice::IsValidFor(const Shape& shape) const {
  if (dims() != shape.dims()) return false;
  for (int i = 0; i < dims(); ++i) {
    if (entries_[i] && (*entries_[i] < 1 || *entries_[i] > shape.width(i))) {
      return false;
    }
  }
  return true;
}

bool Slice::Contains(const Point& p) const {
  if (p.dims() != dims()) return false;
  for (int i = 0; i < dims(); ++i) {
    if (entries_[i] && p[i] != *entries_[i]) return false;
  }
  return true;
}

Point Project(const Point& x, const Slice& s) {
  if (x.dims() != s.dims()) throw UsageError("slice/point dimension mismatch");
  Point out = x;
  for (int i = 0; i < s.dims(); ++i) {
    if (s.IsFixed(i)) out[i] = s.Value(i);
  }
  return out;
}

std::vector<DimFlow> FlowsOf(const Point& x, const Point& fx) {
  std::vector<DimFlow> flows(x.dims());
  for (int i = 0; i < x.dims(); ++i) {
    flows[i] = x[i] < fx[i]   ? DimFlow::kUp
               : x[i] > fx[i] ? DimFlow::kDown
                              : DimFlow::kLevel;
  }
  return flows;
}

bool IsFixedPoint(const Solution& s) {
  return std::holds_alternative<FixedPoint>(s);
}

std::string ToString(const Solution& s) {
  if (const auto* fp = std::get_if<FixedPoint>(&s)) {
    return "fixed_point " + ToString(fp->x);
  }
  const auto& v = std::get<Violation>(s);
  return "violation " + ToString(v.x) + " " + ToString(v.y);
}

void ForEachPoint(const Shape& shape,
                  const std::function<bool(const Point&)>& fn) {
  Point p = shape.Least();
  while (true) {
    if (!fn(p)) return;
    int dim = shape.dims() - 1;
    while (dim >= 0 && p[dim] == shape.width(dim)) {
      p[dim] = 1;
      --dim;
    }
    if (dim < 0) return;
    ++p[dim];
  }
}

}  // namespace tarski
