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

#include "tarski/inner3d.h"

#include <sstream>

#include "tarski/basic_solvers.h"
#include "tarski/errors.h"
#include "tarski/kd_recursion.h"

namespace tarski {
namespace {

constexpr int kSliceDim = 2;

Point MidPoint(const Box& box) {
  Point m = box.lo;
  for (int i = 0; i < kSliceDim; ++i) m[i] = (box.lo[i] + box.hi[i]) / 2;
  return m;
}

Slice NormalizedSlice(int value) { return Slice::Principle(3, kSliceDim, value); }

void RequireNormalized(const Box& box) {
  if (box.lo.dims() != 3 || box.hi.dims() != 3 || box.lo[kSliceDim] != box.hi[kSliceDim] ||
      !Leq(box.lo, box.hi)) {
    throw UsageError("inner state box must be a 3-D box flat in dimension 2");
  }
}

StepResult Continue(InnerState st, std::string label) {
  return StepResult{StepKind::kContinue, std::move(st), std::nullopt, std::move(label)};
}

StepResult Shrunk(InnerState st, std::string label) {
  return StepResult{StepKind::kShrunk, std::move(st), std::nullopt, std::move(label)};
}

StepResult Done(const InnerState& st, InnerOutcome o, std::string label) {
  return StepResult{StepKind::kDone, st, std::move(o), std::move(label)};
}

Boundary DownBoundary(int shared_dim) {
  return shared_dim == 1 ? Boundary::kTop : Boundary::kRight;
}

Boundary UpBoundary(int shared_dim) {
  return shared_dim == 1 ? Boundary::kBottom : Boundary::kLeft;
}

bool IsValidWitness(const Oracle& f, const Witness& w) {
  const int j = w.search_dim();
  const int e = w.shared_dim();
  const Point& p = w.first;
  const Point& q = w.second;
  if (p[e] != q[e] || p[kSliceDim] != q[kSliceDim] || p[j] > q[j]) return false;
  const Point fp = f(p);
  const Point fq = f(q);
  if (w.kind == WitnessKind::kDownSet) {
    return p[kSliceDim] <= fp[kSliceDim] && q[kSliceDim] <= fq[kSliceDim] &&
           p[j] <= fp[j] && fq[j] <= q[j];
  }
  return p[kSliceDim] >= fp[kSliceDim] && q[kSliceDim] >= fq[kSliceDim] &&
         fp[j] >= p[j] && q[j] >= fq[j];
}

// All points of a box with at most two values per free dimension.
std::vector<Point> SmallBoxPoints(const Box& box) {
  std::vector<Point> pts;
  for (int x0 = box.lo[0]; x0 <= box.hi[0]; ++x0) {
    for (int x1 = box.lo[1]; x1 <= box.hi[1]; ++x1) {
      pts.push_back(box.lo.With(0, x0).With(1, x1));
    }
  }
  return pts;
}

InnerOutcome FinishSmallBox(const Oracle& f, const InnerState& st) {
  std::vector<Point> pts = SmallBoxPoints(st.box);
  // Fixed points first; they are reported as Up points.
  for (const Point& p : pts) {
    if (f(p) == p) return UpPoint{p};
  }
  for (const Point& p : pts) {
    if (Leq(p, f(p))) return UpPoint{p};
  }
  for (const Point& p : pts) {
    if (Leq(f(p), p)) return DownPoint{p};
  }
  for (const Point& p : pts) {
    for (const Point& q : pts) {
      if (p != q && Leq(p, q)) {
        if (auto v = ViolationCheck(f, p, q)) return *v;
      }
    }
  }
  throw InternalError("no inner solution among the final points of " +
                      ToString(st));
}

// A fixed point of f_s inside L_{x,y}, where x in Up(f_s) and y in Down(f_s),
// or a violation.
std::variant<Point, Violation> SliceFixedPoint(const Oracle& f, const Point& x,
                                               const Point& y, SliceSearch search) {
  const Oracle fs = f.Restrict(NormalizedSlice(x[kSliceDim]));
  if (search == SliceSearch::kPath) {
    Solution s = UpsetPath(fs, Box{x, y});
    if (auto* v = std::get_if<Violation>(&s)) return *v;
    return std::get<FixedPoint>(s).x;
  }
  // Binary search on the clamped two-dimensional box.
  const Oracle view = fs.SubBox(Box{x, y}, kSliceDim);
  Solution s = DqySolve(view, [](const Oracle& g) { return Solve1d(g); });
  if (auto* v = std::get_if<Violation>(&s)) {
    Violation mapped{view.ToParent(v->x), view.ToParent(v->y)};
    if (!IsValidSolution(f, mapped)) {
      throw InternalError("slice search returned an invalid violation");
    }
    return mapped;
  }
  Point p = view.ToParent(std::get<FixedPoint>(s).x);
  const Point fp = f(p);
  for (int i = 0; i < kSliceDim; ++i) {
    // The clamp can only hold p in place at the box faces.
    if (fp[i] > p[i]) return Violation{p, y};
    if (fp[i] < p[i]) return Violation{x, p};
  }
  return p;
}

void Emit(const InnerOptions& opts, const std::string& label, const InnerState& st) {
  if (opts.trace) opts.trace("inner " + label + " " + ToString(st));
}

InnerOutcome MapOutcome(const Oracle& view, const InnerOutcome& o) {
  return std::visit(
      [&](const auto& v) -> InnerOutcome {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Violation>) {
          return Violation{view.ToParent(v.x), view.ToParent(v.y)};
        } else {
          return T{view.ToParent(v.p)};
        }
      },
      o);
}

InnerOutcome SolveNormalized(const Oracle& f, const Box& outer_box, const Slice& s,
                             const InnerOptions& opts) {
  auto init = InnerInit(f, outer_box, s);
  if (auto* o = std::get_if<InnerOutcome>(&init)) {
    if (opts.trace) opts.trace("inner init.violation " + ToString(*o));
    return *o;
  }
  InnerState st = std::get<InnerState>(init);
  Emit(opts, "init", st);

  auto thin = [&](const InnerState& state) {
    // A halving that cannot move a face of width one; finish by bisection.
    Emit(opts, "thin", state);
    return ResolveInvariant(f, state, SliceSearch::kBisect);
  };

  while (st.box.width(0) >= 2 || st.box.width(1) >= 2) {
    if (opts.check_invariants) CheckInvariant(f, st);
    StepResult r = Step1FixWitnesses(f, st);
    Emit(opts, r.label, r.state);
    if (r.kind == StepKind::kDone) return *r.outcome;
    if (r.kind == StepKind::kShrunk) {
      if (r.state.box == st.box) return thin(r.state);
      st = std::move(r.state);
      continue;
    }
    st = std::move(r.state);
    if (opts.check_invariants) CheckInvariant(f, st);
    r = Step2Midpoint(f, st);
    Emit(opts, r.label, r.state);
    if (r.kind == StepKind::kDone) return *r.outcome;
    if (r.state.box == st.box) return thin(r.state);
    st = std::move(r.state);
  }
  if (opts.check_invariants) CheckInvariant(f, st);
  Emit(opts, "final", st);
  return FinishSmallBox(f, st);
}

}  // namespace

int Witness::search_dim() const {
  return boundary == Boundary::kTop || boundary == Boundary::kBottom ? 0 : 1;
}

int Witness::shared_dim() const { return 1 - search_dim(); }

std::string ToString(const Witness& w) {
  static const char* kNames[] = {"top", "right", "bottom", "left"};
  std::ostringstream os;
  os << (w.kind == WitnessKind::kDownSet ? "dsw" : "usw") << "["
     << kNames[static_cast<int>(w.boundary)] << "](" << w.first << "," << w.second
     << ")";
  return os.str();
}

std::string ToString(const InnerState& st) {
  std::ostringstream os;
  os << "box=" << st.box << " up="
     << (st.up_witness ? ToString(*st.up_witness) : std::string("point"))
     << " down="
     << (st.down_witness ? ToString(*st.down_witness) : std::string("point"));
  return os.str();
}

std::string ToString(const InnerOutcome& o) {
  if (const auto* u = std::get_if<UpPoint>(&o)) return "up " + ToString(u->p);
  if (const auto* d = std::get_if<DownPoint>(&o)) return "down " + ToString(d->p);
  const auto& v = std::get<Violation>(o);
  return "violation " + ToString(v.x) + " " + ToString(v.y);
}

bool IsValidOutcome(const Oracle& f, const InnerOutcome& o) {
  if (const auto* u = std::get_if<UpPoint>(&o)) {
    return f.shape().Contains(u->p) && InUpSet(f, u->p);
  }
  if (const auto* d = std::get_if<DownPoint>(&o)) {
    return f.shape().Contains(d->p) && InDownSet(f, d->p);
  }
  return IsValidSolution(f, std::get<Violation>(o));
}

std::variant<InnerState, InnerOutcome> InnerInit(const Oracle& f,
                                                 const Box& outer_box,
                                                 const Slice& s) {
  if (f.dims() != 3) throw UsageError("inner algorithm needs a 3-D instance");
  if (!s.IsValidFor(f.shape()) || !s.IsPrinciple() || s.FixedDim() != kSliceDim) {
    throw UsageError("inner step functions need a slice fixing dimension 2");
  }
  const Point& lo = outer_box.lo;
  const Point& hi = outer_box.hi;
  if (!f.shape().Contains(lo) || !f.shape().Contains(hi) || !Leq(lo, hi)) {
    throw UsageError("inner box is not a sub-instance");
  }
  const int v = s.Value(kSliceDim);
  if (v < lo[kSliceDim] || v > hi[kSliceDim]) {
    throw UsageError("slice does not cut the inner box");
  }
  if (!InUpSet(f, lo)) throw UsageError("inner box corner " + ToString(lo) + " is not in Up(f)");
  if (!InDownSet(f, hi)) {
    throw UsageError("inner box corner " + ToString(hi) + " is not in Down(f)");
  }
  const Point a = Project(lo, s);
  const Point b = Project(hi, s);
  const Point fa = f(a);
  for (int i = 0; i < kSliceDim; ++i) {
    // f(a)_i < a_i = lo_i <= f(lo)_i.
    if (fa[i] < a[i]) return InnerOutcome(Violation{lo, a});
  }
  const Point fb = f(b);
  for (int i = 0; i < kSliceDim; ++i) {
    if (fb[i] > b[i]) return InnerOutcome(Violation{b, hi});
  }
  return InnerState{Box{a, b}, std::nullopt, std::nullopt};
}

StepResult Step1FixWitnesses(const Oracle& f, const InnerState& st) {
  RequireNormalized(st.box);
  InnerState cur = st;
  const Point a = st.box.lo;
  const Point b = st.box.hi;
  const Point m = MidPoint(st.box);
  std::string label = "step1";

  if (cur.down_witness) {
    const Witness w = *cur.down_witness;
    const int j = w.search_dim();
    const std::string tag = j == 0 ? "step1.case1" : "step1.case2";
    const Point& d = w.first;
    // top (j = 0) or right (j = 1)
    const Point anchor = b.With(j, m[j]);
    if (d[j] < m[j]) {
      const Point fa = f(anchor);
      if (anchor[kSliceDim] > fa[kSliceDim]) {
        return Done(st, Violation{d, anchor}, tag + "a");
      }
      if (anchor[j] > fa[j]) {
        return Shrunk(InnerState{Box{a, anchor}, cur.up_witness,
                                 Witness{WitnessKind::kDownSet, d, anchor, w.boundary}},
                      tag + "b");
      }
      cur.down_witness = Witness{WitnessKind::kDownSet, anchor, b, w.boundary};
      label = tag + "c";
    }
  }

  if (cur.up_witness) {
    const Witness w = *cur.up_witness;
    const int j = w.search_dim();
    const std::string tag = j == 0 ? "step1.case3" : "step1.case4";
    const Point& u = w.second;
    // bot (j = 0) or left (j = 1)
    const Point anchor = a.With(j, m[j]);
    if (m[j] < u[j]) {
      const Point fa = f(anchor);
      if (anchor[kSliceDim] < fa[kSliceDim]) {
        return Done(st, Violation{anchor, u}, tag + "a");
      }
      if (anchor[j] < fa[j]) {
        return Shrunk(InnerState{Box{anchor, b},
                                 Witness{WitnessKind::kUpSet, anchor, u, w.boundary},
                                 cur.down_witness},
                      tag + "b");
      }
      cur.up_witness = Witness{WitnessKind::kUpSet, a, anchor, w.boundary};
      label = label == "step1" ? tag + "c" : label + "," + tag.substr(6) + "c";
    }
  }
  return Continue(std::move(cur), label);
}

StepResult Step2Midpoint(const Oracle& f, const InnerState& st) {
  RequireNormalized(st.box);
  const Point& a = st.box.lo;
  const Point& b = st.box.hi;
  const Point mid = MidPoint(st.box);
  const Point fm = f(mid);

  if (mid[0] <= fm[0] && mid[1] <= fm[1]) {
    return Shrunk(InnerState{Box{mid, b}, std::nullopt, st.down_witness},
                  "step2.case1");
  }
  if (mid[0] >= fm[0] && mid[1] >= fm[1]) {
    return Shrunk(InnerState{Box{a, mid}, st.up_witness, std::nullopt},
                  "step2.case2");
  }
  // Case 3: weakly up in U = 0, strictly down in V = 1. Case 4 swaps them.
  const int up_dim = mid[0] <= fm[0] ? 0 : 1;
  const int down_dim = 1 - up_dim;
  const std::string tag = up_dim == 0 ? "step2.case3" : "step2.case4";

  if (mid[kSliceDim] <= fm[kSliceDim]) {
    // right (case 3) or top (case 4)
    const Point r = mid.With(up_dim, b[up_dim]);
    const Point fr = f(r);
    if (r[kSliceDim] > fr[kSliceDim]) return Done(st, Violation{mid, r}, tag + "a.i");
    if (r[up_dim] < fr[up_dim]) {
      return Done(st, SpecialCase(f, st, r, up_dim == 0 ? 2 : 1), tag + "a.ii");
    }
    return Shrunk(InnerState{Box{a, r}, st.up_witness,
                             Witness{WitnessKind::kDownSet, mid, r,
                                     DownBoundary(down_dim)}},
                  tag + "a.iii");
  }
  // bot (case 3) or left (case 4)
  const Point q = mid.With(down_dim, a[down_dim]);
  const Point fq = f(q);
  // f(mid)_2 < mid_2 = q_2 < f(q)_2 with q <= mid.
  if (q[kSliceDim] < fq[kSliceDim]) return Done(st, Violation{q, mid}, tag + "b.i");
  if (q[down_dim] > fq[down_dim]) {
    return Done(st, SpecialCase(f, st, q, down_dim == 1 ? 3 : 4), tag + "b.ii");
  }
  return Shrunk(InnerState{Box{q, b},
                           Witness{WitnessKind::kUpSet, q, mid, UpBoundary(up_dim)},
                           st.down_witness},
                tag + "b.iii");
}

InnerOutcome SpecialCase(const Oracle& f, const InnerState& st, const Point& p,
                         int variant) {
  if (variant < 1 || variant > 4) throw UsageError("special case variant must be 1..4");
  RequireNormalized(st.box);
  const bool down = variant <= 2;
  const int c = (variant == 1 || variant == 3) ? 1 : 0;
  const Point& a = st.box.lo;
  const Point& b = st.box.hi;
  const Point fp = f(p);

  if (down) {
    if (p[c] != b[c] || !(p[c] < fp[c]) || !st.box.Contains(p)) {
      throw UsageError("special case " + std::to_string(variant) +
                       " precondition fails at " + ToString(p));
    }
    // f(p)_c > p_c = b_c >= f(b)_c.
    if (!st.down_witness || st.down_witness->search_dim() == c) {
      return Violation{p, b};
    }
    const Witness& w = *st.down_witness;
    const Point& d = w.first;
    if (!Leq(p, d)) throw InternalError("special case point " + ToString(p) + " is above the witness");
    BisectResult r = BisectWitness(f, d, w.second, w.search_dim());
    if (auto* v = std::get_if<Violation>(&r)) return *v;
    const Point x = std::get<Point>(r);
    const Point fx = f(x);
    if (x[kSliceDim] > fx[kSliceDim]) return Violation{d, x};
    // f(p)_c > p_c = d_c = x_c >= f(x)_c.
    if (x[c] >= fx[c]) return Violation{p, x};
    return UpPoint{x};
  }

  if (p[c] != a[c] || !(p[c] > fp[c]) || !st.box.Contains(p)) {
    throw UsageError("special case " + std::to_string(variant) +
                     " precondition fails at " + ToString(p));
  }
  // f(p)_c < p_c = a_c <= f(a)_c.
  if (!st.up_witness || st.up_witness->search_dim() == c) return Violation{a, p};
  const Witness& w = *st.up_witness;
  const Point& u = w.second;
  if (!Leq(u, p)) throw InternalError("special case point " + ToString(p) + " is below the witness");
  BisectResult r = BisectWitness(f, w.first, u, w.search_dim());
  if (auto* v = std::get_if<Violation>(&r)) return *v;
  const Point x = std::get<Point>(r);
  const Point fx = f(x);
  // f(u)_2 <= u_2 = x_2 < f(x)_2 with x <= u.
  if (x[kSliceDim] < fx[kSliceDim]) return Violation{x, u};
  // f(x)_c >= x_c = u_c = p_c > f(p)_c.
  if (x[c] <= fx[c]) return Violation{x, p};
  return DownPoint{x};
}

namespace {

std::variant<Point, Violation> SegmentFixedPoint(const Oracle& f, const Witness& w,
                                                 const Point& lo, const Point& hi,
                                                 SliceSearch search) {
  const int j = w.search_dim();
  if (search == SliceSearch::kBisect) {
    BisectResult r = BisectWitness(f, lo, hi, j);
    if (auto* v = std::get_if<Violation>(&r)) return *v;
    return std::get<Point>(r);
  }
  std::vector<std::optional<int>> entries(3);
  for (int i = 0; i < 3; ++i) {
    if (i != j) entries[i] = lo[i];
  }
  Solution s = UpsetPath(f.Restrict(Slice(std::move(entries))), Box{lo, hi});
  if (auto* v = std::get_if<Violation>(&s)) return *v;
  return std::get<FixedPoint>(s).x;
}

}  // namespace

DownWitnessResult ResolveDownWitness(const Oracle& f, const Witness& w,
                                     SliceSearch search) {
  if (w.kind != WitnessKind::kDownSet || !IsValidWitness(f, w)) {
    throw UsageError("not a valid down set witness: " + ToString(w));
  }
  const Point& d = w.first;
  auto seg = SegmentFixedPoint(f, w, d, w.second, search);
  if (auto* v = std::get_if<Violation>(&seg)) return *v;
  const Point p = std::get<Point>(seg);
  const Point fp = f(p);
  const int e = w.shared_dim();
  if (p[e] > fp[e]) return DownSlicePoint{p};
  if (p[kSliceDim] <= fp[kSliceDim]) return UpPoint{p};
  // f(p)_2 < p_2 = d_2 <= f(d)_2.
  return Violation{d, p};
}

UpWitnessResult ResolveUpWitness(const Oracle& f, const Witness& w,
                                 SliceSearch search) {
  if (w.kind != WitnessKind::kUpSet || !IsValidWitness(f, w)) {
    throw UsageError("not a valid up set witness: " + ToString(w));
  }
  const Point& u = w.second;
  auto seg = SegmentFixedPoint(f, w, w.first, u, search);
  if (auto* v = std::get_if<Violation>(&seg)) return *v;
  const Point p = std::get<Point>(seg);
  const Point fp = f(p);
  const int e = w.shared_dim();
  if (p[e] < fp[e] || fp == p) return UpSlicePoint{p};
  if (p[kSliceDim] >= fp[kSliceDim]) return DownPoint{p};
  // f(p)_2 > p_2 = u_2 >= f(u)_2 with p <= u.
  return Violation{p, u};
}

InnerOutcome ResolveInvariant(const Oracle& f, const InnerState& st,
                              SliceSearch search) {
  RequireNormalized(st.box);
  Point x = st.box.lo;
  Point y = st.box.hi;
  if (st.up_witness) {
    UpWitnessResult r = ResolveUpWitness(f, *st.up_witness, search);
    if (auto* d = std::get_if<DownPoint>(&r)) return *d;
    if (auto* v = std::get_if<Violation>(&r)) return *v;
    x = std::get<UpSlicePoint>(r).p;
  }
  if (st.down_witness) {
    DownWitnessResult r = ResolveDownWitness(f, *st.down_witness, search);
    if (auto* u = std::get_if<UpPoint>(&r)) return *u;
    if (auto* v = std::get_if<Violation>(&r)) return *v;
    y = std::get<DownSlicePoint>(r).p;
  }
  if (!Leq(x, y)) {
    throw InternalError("invariant resolution produced " + ToString(x) +
                        " above " + ToString(y));
  }
  auto fixed = SliceFixedPoint(f, x, y, search);
  if (auto* v = std::get_if<Violation>(&fixed)) return *v;
  const Point p = std::get<Point>(fixed);
  if (p[kSliceDim] <= f(p)[kSliceDim]) return UpPoint{p};
  return DownPoint{p};
}

void CheckInvariant(const Oracle& f, const InnerState& st) {
  RequireNormalized(st.box);
  auto fail = [&](const std::string& why) {
    throw InternalError("inner invariant broken (" + why + "): " + ToString(st));
  };
  const Point& a = st.box.lo;
  const Point& b = st.box.hi;
  auto slice_leq = [](const Point& x, const Point& y) {
    return x[0] <= y[0] && x[1] <= y[1];
  };
  if (st.up_witness) {
    const Witness& w = *st.up_witness;
    if (w.kind != WitnessKind::kUpSet || w.first != a) fail("up witness must start at a");
    if (!Leq(w.second, b)) fail("up witness leaves the box");
    if (!IsValidWitness(f, w)) fail("up witness conditions");
  } else if (!slice_leq(a, f(a))) {
    fail("a is not in Up(f_s)");
  }
  if (st.down_witness) {
    const Witness& w = *st.down_witness;
    if (w.kind != WitnessKind::kDownSet || w.second != b) fail("down witness must end at b");
    if (!Leq(a, w.first)) fail("down witness leaves the box");
    if (!IsValidWitness(f, w)) fail("down witness conditions");
  } else if (!slice_leq(f(b), b)) {
    fail("b is not in Down(f_s)");
  }
  if (st.up_witness && st.down_witness &&
      !Leq(st.up_witness->second, st.down_witness->first)) {
    fail("u is not below d");
  }
}

InnerOutcome InnerSolve(const Oracle& f, const Box& outer_box, const Slice& s,
                        const InnerOptions& options) {
  if (f.dims() != 3) throw UsageError("inner algorithm needs a 3-D instance");
  if (!s.IsValidFor(f.shape()) || !s.IsPrinciple()) {
    throw UsageError("inner algorithm needs a principle slice of the lattice");
  }
  const int fixed = s.FixedDim();
  if (fixed == kSliceDim) return SolveNormalized(f, outer_box, s, options);

  std::vector<int> order;
  for (int i = 0; i < 3; ++i) {
    if (i != fixed) order.push_back(i);
  }
  order.push_back(fixed);
  const Oracle view = f.Permute(order);
  Box box{outer_box.lo, outer_box.hi};
  for (int i = 0; i < 3; ++i) {
    box.lo[i] = outer_box.lo[order[i]];
    box.hi[i] = outer_box.hi[order[i]];
  }
  InnerOutcome o = SolveNormalized(view, box, NormalizedSlice(s.Value(fixed)), options);
  return MapOutcome(view, o);
}

}  // namespace tarski
