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

// Geometry of k-dimensional grid lattices with the componentwise order.
//
// Coordinates are 1-based and inclusive: a lattice of shape (n_1, ..., n_k)
// contains every integer vector x with 1 <= x_i <= n_i. Dimension indices in
// the API are 0-based (dimension "1" of the usual notation is index 0).

#ifndef TARSKI_LATTICE_H_
#define TARSKI_LATTICE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace tarski {

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<int> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<int> coords) : coords_(coords) {}

  int dims() const { return static_cast<int>(coords_.size()); }
  int operator[](int dim) const { return coords_[dim]; }
  int& operator[](int dim) { return coords_[dim]; }
  const std::vector<int>& coords() const { return coords_; }

  // Copy with one coordinate replaced.
  Point With(int dim, int value) const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<int> coords_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);
std::string ToString(const Point& p);

struct PointHash {
  std::size_t operator()(const Point& p) const;
};

class Shape {
 public:
  // Throws UsageError unless there is at least one dimension and every width
  // is positive.
  explicit Shape(std::vector<int> widths);
  Shape(std::initializer_list<int> widths)
      : Shape(std::vector<int>(widths)) {}

  int dims() const { return static_cast<int>(widths_.size()); }
  int width(int dim) const { return widths_[dim]; }
  const std::vector<int>& widths() const { return widths_; }
  // Widest side length.
  int max_width() const;
  // Number of lattice points; saturates at INT64_MAX.
  std::int64_t size() const;

  bool Contains(const Point& p) const;
  Point Least() const;
  Point Greatest() const;

  // Flat index with dimension 0 varying fastest.
  std::int64_t IndexOf(const Point& p) const;
  Point PointAt(std::int64_t index) const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> widths_;
};

std::ostream& operator<<(std::ostream& os, const Shape& s);

// Builds a point and checks it against `shape`; throws UsageError otherwise.
Point CheckedPoint(const Shape& shape, std::vector<int> coords);

// Componentwise x <= y. Throws UsageError on dimension mismatch.
bool Leq(const Point& x, const Point& y);

// Sub-instance {p : lo <= p <= hi}.
struct Box {
  Point lo;
  Point hi;

  // Throws UsageError unless lo <= hi.
  static Box Make(Point lo, Point hi);
  static Box Whole(const Shape& shape);

  bool Contains(const Point& p) const { return Leq(lo, p) && Leq(p, hi); }
  int width(int dim) const { return hi[dim] - lo[dim]; }
  std::int64_t Volume() const;

  friend bool operator==(const Box&, const Box&) = default;
};

std::ostream& operator<<(std::ostream& os, const Box& b);

class Slice {
 public:
  // All dimensions free.
  static Slice Free(int dims);
  // Exactly one dimension fixed.
  static Slice Principle(int dims, int fixed_dim, int value);
  explicit Slice(std::vector<std::optional<int>> entries)
      : entries_(std::move(entries)) {}

  int dims() const { return static_cast<int>(entries_.size()); }
  bool IsFixed(int dim) const { return entries_[dim].has_value(); }
  int Value(int dim) const { return *entries_[dim]; }
  const std::vector<std::optional<int>>& entries() const { return entries_; }

  bool IsPrinciple() const;
  // Index of the single fixed dimension; requires IsPrinciple().
  int FixedDim() const;
  // Dimension counts match and every fixed value lies within its width.
  bool IsValidFor(const Shape& shape) const;
  bool Contains(const Point& p) const;

  friend bool operator==(const Slice&, const Slice&) = default;

 private:
  std::vector<std::optional<int>> entries_;
};

// Overwrites the fixed coordinates of x with the slice values.
Point Project(const Point& x, const Slice& s);

enum class DimFlow { kDown, kLevel, kUp };

// Per-dimension trichotomy of f(x) against x.
std::vector<DimFlow> FlowsOf(const Point& x, const Point& fx);

// Solutions of the total search problem.
struct FixedPoint {
  Point x;
  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

// x <= y with f(x) not <= f(y).
struct Violation {
  Point x;
  Point y;
  friend bool operator==(const Violation&, const Violation&) = default;
};

using Solution = std::variant<FixedPoint, Violation>;

bool IsFixedPoint(const Solution& s);
std::string ToString(const Solution& s);

// Visits lattice points in lexicographic order (dimension 0 most
// significant). Stops early when `fn` returns false.
void ForEachPoint(const Shape& shape, const std::function<bool(const Point&)>& fn);

}  // namespace tarski

#endif  // TARSKI_LATTICE_H_
