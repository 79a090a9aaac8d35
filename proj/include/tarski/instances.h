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

// Instance generators, serialization and exhaustive certification.

#ifndef TARSKI_INSTANCES_H_
#define TARSKI_INSTANCES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tarski/lattice.h"
#include "tarski/oracle.h"

namespace tarski {

struct InstanceSpec;

struct TableKind {
  // Images flattened by Shape::IndexOf (dimension 0 fastest).
  std::vector<Point> images;
};

struct HiddenPointKind {
  Point target;
};

struct RandomMonotoneKind {
  std::uint64_t seed = 0;
  int term_count = 1;
};

struct LiftedKind {
  std::shared_ptr<const InstanceSpec> inner;
  int extra_width = 1;
};

struct ViolatedKind {
  std::shared_ptr<const InstanceSpec> base;
  std::uint64_t seed = 0;
};

struct InstanceSpec {
  Shape shape;
  std::variant<TableKind, HiddenPointKind, RandomMonotoneKind, LiftedKind,
               ViolatedKind>
      kind;

  // "table", "hidden", "random", "lifted" or "violated".
  std::string KindName() const;
};

bool operator==(const InstanceSpec& a, const InstanceSpec& b);

// Spec constructors. Each validates its arguments (UsageError).
InstanceSpec HiddenPointSpec(Shape shape, Point target);
InstanceSpec RandomMonotoneSpec(Shape shape, std::uint64_t seed, int term_count);
InstanceSpec LiftedSpec(InstanceSpec inner, int extra_width);
InstanceSpec TableSpec(Shape shape, std::vector<Point> images);
// Picks and confirms the override eagerly; throws GenerationError if no
// violation could be planted.
InstanceSpec InjectViolation(InstanceSpec base, std::uint64_t seed);

// The uncounted function behind a spec.
Oracle::EvalFn MakeEval(const InstanceSpec& spec);
Oracle BuildOracle(const InstanceSpec& spec);

// f(x)_i = x_i + sgn(t_i - x_i). Unique fixed point t.
Oracle HiddenPoint(const Shape& shape, const Point& t);

// g_i(x) = clamp(round(c_i + sum_j w_ij x_j), 1, n_i). Weights must be
// nonnegative; weights[i] has one entry per dimension.
Oracle AffineMonotone(const Shape& shape, std::vector<std::vector<double>> weights,
                      std::vector<double> offsets);

// Seeded AffineMonotone: every output coordinate draws `term_count` input
// terms (with replacement) plus an offset.
Oracle RandomMonotone(const Shape& shape, std::uint64_t seed, int term_count);

// f'(x) = (f(x_1..x_{k-1}), x_k). One query to `inner` per distinct query.
Oracle LiftDimension(const Oracle& inner, int extra_width);

// `base` everywhere except at p, where it returns `image`.
Oracle::EvalFn OverrideEval(Oracle::EvalFn base, Point p, Point image);

struct PlantedViolation {
  Point point;  // where the base function was overridden
  Point image;  // the new value there
  Violation pair;
};

// The override InjectViolation derives from (base, seed).
PlantedViolation PlanViolation(const InstanceSpec& base, std::uint64_t seed);

// Largest lattice the exhaustive routines accept. TARSKI_ENUM_CAP overrides
// the default of 2^20 points.
std::int64_t EnumerationCap();

// Checks f(x) <= f(x + e_i) over all points and unit steps. Returns the first
// failing pair in lexicographic order. SizeError above `cap`.
std::optional<Violation> VerifyMonotone(const Oracle& f,
                                        std::int64_t cap = EnumerationCap());

std::string InstanceToJson(const InstanceSpec& spec);
// FormatError naming the offending field on malformed input.
InstanceSpec InstanceFromJson(const std::string& text);
void SaveInstance(const InstanceSpec& spec, const std::string& path);
InstanceSpec LoadInstance(const std::string& path);

}  // namespace tarski

#endif  // TARSKI_INSTANCES_H_
