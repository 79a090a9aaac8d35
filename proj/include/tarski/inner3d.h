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

// Logarithmic inner algorithm for three-dimensional instances.
//
// Given a box L_{x,y} with x in Up(f), y in Down(f) and a principle slice s
// through it, InnerSolve finds a point of the slice that lies in Up(f) or
// Down(f) of the full instance, or an order-preservation violation.
//
// The step functions below work in normalized orientation: the slice fixes
// dimension index 2, and dimensions 0 and 1 are free. InnerSolve permutes
// other orientations into that form.

#ifndef TARSKI_INNER3D_H_
#define TARSKI_INNER3D_H_

#include <optional>
#include <string>
#include <variant>

#include "tarski/lattice.h"
#include "tarski/oracle.h"
#include "tarski/telemetry.h"

namespace tarski {

enum class WitnessKind { kDownSet, kUpSet };

// Top and bottom witnesses share their index-1 coordinate and search along
// index 0; right and left witnesses share index 0 and search along index 1.
enum class Boundary { kTop, kRight, kBottom, kLeft };

// Down set witness (d, b) = (first, second):
//   d_2 <= f(d)_2, b_2 <= f(b)_2, d_j <= f(d)_j, f(b)_j <= b_j, d_j <= b_j.
// Up set witness (a, u) = (first, second):
//   a_2 >= f(a)_2, u_2 >= f(u)_2, f(a)_j >= a_j, u_j >= f(u)_j, a_j <= u_j.
// Here j is the search dimension; the other free dimension is shared.
struct Witness {
  WitnessKind kind;
  Point first;
  Point second;
  Boundary boundary;

  int search_dim() const;
  int shared_dim() const;

  friend bool operator==(const Witness&, const Witness&) = default;
};

std::string ToString(const Witness& w);

// Box within the slice plus the two sides of the invariant. An absent
// witness means the corner itself is known to be in Up(f_s) (box.lo) or
// Down(f_s) (box.hi).
struct InnerState {
  Box box;
  std::optional<Witness> up_witness;
  std::optional<Witness> down_witness;

  friend bool operator==(const InnerState&, const InnerState&) = default;
};

std::string ToString(const InnerState& st);

struct UpPoint {
  Point p;
  friend bool operator==(const UpPoint&, const UpPoint&) = default;
};
struct DownPoint {
  Point p;
  friend bool operator==(const DownPoint&, const DownPoint&) = default;
};

// UpPoint: p <= f(p). DownPoint: f(p) <= p. A fixed point is an UpPoint.
using InnerOutcome = std::variant<UpPoint, DownPoint, Violation>;

std::string ToString(const InnerOutcome& o);
// Re-checks the outcome against f (UpPoint and DownPoint by definition,
// Violation as a violation).
bool IsValidOutcome(const Oracle& f, const InnerOutcome& o);

enum class StepKind { kContinue, kShrunk, kDone };

struct StepResult {
  StepKind kind;
  InnerState state;                     // for kContinue and kShrunk
  std::optional<InnerOutcome> outcome;  // for kDone
  std::string label;                    // e.g. "step2.case3a.iii"
};

// Slice-level results of witness resolution.
struct UpSlicePoint {
  Point p;
  friend bool operator==(const UpSlicePoint&, const UpSlicePoint&) = default;
};
struct DownSlicePoint {
  Point p;
  friend bool operator==(const DownSlicePoint&, const DownSlicePoint&) = default;
};

using DownWitnessResult = std::variant<UpPoint, Violation, DownSlicePoint>;
using UpWitnessResult = std::variant<DownPoint, Violation, UpSlicePoint>;

// How a segment or slice sub-box is searched for a slice fixed point:
// unit-step path following, or binary search.
enum class SliceSearch { kPath, kBisect };

// Projects outer_box onto s. Returns the initial state (both corners
// verified) or a violation between a corner of outer_box and its
// projection. Requires outer_box.lo in Up(f), outer_box.hi in Down(f) and a
// normalized principle slice whose value lies within the box.
std::variant<InnerState, InnerOutcome> InnerInit(const Oracle& f,
                                                 const Box& outer_box,
                                                 const Slice& s);

// Moves each witness so that it survives the coming halving.
StepResult Step1FixWitnesses(const Oracle& f, const InnerState& st);

// Case split on the midpoint of the box.
StepResult Step2Midpoint(const Oracle& f, const InnerState& st);

// Variants: 1 top edge (p_1 = b_1, p_1 < f(p)_1), 2 right edge
// (p_0 = b_0, p_0 < f(p)_0), 3 bottom edge (p_1 = a_1, p_1 > f(p)_1),
// 4 left edge (p_0 = a_0, p_0 > f(p)_0).
InnerOutcome SpecialCase(const Oracle& f, const InnerState& st, const Point& p,
                         int variant);

DownWitnessResult ResolveDownWitness(const Oracle& f, const Witness& w,
                                     SliceSearch search = SliceSearch::kPath);
// A point that turns out to be a full fixed point is returned as an
// UpSlicePoint.
UpWitnessResult ResolveUpWitness(const Oracle& f, const Witness& w,
                                 SliceSearch search = SliceSearch::kPath);

// Finds an outcome inside st.box using the invariant alone.
InnerOutcome ResolveInvariant(const Oracle& f, const InnerState& st,
                              SliceSearch search = SliceSearch::kPath);

// Throws InternalError unless st satisfies the invariant. Only queries
// points the algorithm has already evaluated.
void CheckInvariant(const Oracle& f, const InnerState& st);

struct InnerOptions {
  bool check_invariants = false;
  TraceSink trace;
};

// Any orientation of principle slice; requires a three-dimensional f.
InnerOutcome InnerSolve(const Oracle& f, const Box& outer_box, const Slice& s,
                        const InnerOptions& options = {});

}  // namespace tarski

#endif  // TARSKI_INNER3D_H_
