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

#include "tarski/outer.h"

#include <sstream>

#include "tarski/basic_solvers.h"
#include "tarski/errors.h"

namespace tarski {

Solution OuterSolve(const Oracle& f, const OuterOptions& options) {
  if (f.dims() != 3) throw UsageError("outer algorithm needs a 3-D instance");
  InnerAlgorithm inner = options.inner;
  if (!inner) {
    InnerOptions io{options.check_invariants, options.trace};
    inner = [io](const Oracle& g, const Box& box, const Slice& s) {
      return InnerSolve(g, box, s, io);
    };
  }
  Point x = f.shape().Least();
  Point y = f.shape().Greatest();
  while (true) {
    int dim = -1;
    for (int i = 0; i < 3; ++i) {
      if (y[i] - x[i] >= 2 && (dim < 0 || y[i] - x[i] > y[dim] - x[dim])) dim = i;
    }
    if (dim < 0) break;
    const int s = (x[dim] + y[dim]) / 2;
    const Box box{x, y};
    const std::int64_t before = f.distinct_queries();
    const InnerOutcome o = inner(f, box, Slice::Principle(3, dim, s));

    bool ok = IsValidOutcome(f, o);
    std::string outcome = "violation";
    if (const auto* u = std::get_if<UpPoint>(&o)) {
      ok = ok && box.Contains(u->p) && u->p[dim] == s;
      outcome = "up";
    } else if (const auto* d = std::get_if<DownPoint>(&o)) {
      ok = ok && box.Contains(d->p) && d->p[dim] == s;
      outcome = "down";
    }
    if (!ok) {
      throw InternalError("inner algorithm returned an invalid outcome: " + ToString(o));
    }
    if (options.telemetry) {
      options.telemetry->inner_calls.push_back(InnerCallRecord{
          f.shape().max_width(), box, dim, s, f.distinct_queries() - before, outcome});
      ++options.telemetry->outer_iterations;
    }
    if (options.trace) {
      std::ostringstream os;
      os << "outer box=" << box << " dim=" << dim << " slice=" << s << " -> "
         << ToString(o);
      options.trace(os.str());
    }
    if (const auto* v = std::get_if<Violation>(&o)) return *v;
    if (const auto* u = std::get_if<UpPoint>(&o)) {
      x = u->p;
    } else {
      y = std::get<DownPoint>(o).p;
    }
  }
  if (options.trace) options.trace("outer finish box=" + ToString(x) + ".." + ToString(y));
  return UpsetPath(f, Box{x, y});
}

}  // namespace tarski
