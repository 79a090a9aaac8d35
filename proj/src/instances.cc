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

#include "tarski/instances.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "tarski/errors.h"

namespace tarski {
namespace {

using json = nlohmann::json;

constexpr int kMaxPlantAttempts = 64;

// std distributions are implementation-defined; these are not.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int Sign(int v) { return (v > 0) - (v < 0); }

Point HiddenImage(const Point& t, const Point& x) {
  Point out = x;
  for (int i = 0; i < x.dims(); ++i) out[i] += Sign(t[i] - x[i]);
  return out;
}

Oracle::EvalFn AffineEval(const Shape& shape,
                          std::vector<std::vector<double>> weights,
                          std::vector<double> offsets) {
  const int k = shape.dims();
  if (static_cast<int>(weights.size()) != k ||
      static_cast<int>(offsets.size()) != k) {
    throw UsageError("affine instance needs one weight row and offset per dimension");
  }
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != k) {
      throw UsageError("affine weight rows must have one entry per dimension");
    }
    for (double w : row) {
      if (!(w >= 0)) throw UsageError("affine weights must be nonnegative");
    }
  }
  return [shape, weights = std::move(weights),
          offsets = std::move(offsets)](const Point& x) {
    Point out = x;
    for (int i = 0; i < x.dims(); ++i) {
      double v = offsets[i];
      for (int j = 0; j < x.dims(); ++j) v += weights[i][j] * x[j];
      long r = std::lround(v);
      out[i] = static_cast<int>(std::clamp<long>(r, 1, shape.width(i)));
    }
    return out;
  };
}

Oracle::EvalFn RandomEval(const Shape& shape, std::uint64_t seed, int term_count) {
  const int k = shape.dims();
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> weights(k, std::vector<double>(k, 0.0));
  std::vector<double> offsets(k);
  for (int i = 0; i < k; ++i) {
    const double ni = shape.width(i);
    offsets[i] = (UniformUnit(rng) - 0.5) * ni;
    for (int t = 0; t < term_count; ++t) {
      int j = static_cast<int>(UniformBelow(rng, k));
      weights[i][j] += 2.0 * UniformUnit(rng) * ni / (shape.width(j) * term_count);
    }
  }
  return AffineEval(shape, std::move(weights), std::move(offsets));
}

void CheckDims(const Point& p, const Shape& shape, const char* what) {
  if (!shape.Contains(p)) {
    std::ostringstream os;
    os << what << " " << p << " is outside lattice " << shape;
    throw UsageError(os.str());
  }
}

}  // namespace

std::string InstanceSpec::KindName() const {
  switch (kind.index()) {
    case 0: return "table";
    case 1: return "hidden";
    case 2: return "random";
    case 3: return "lifted";
    default: return "violated";
  }
}

bool operator==(const InstanceSpec& a, const InstanceSpec& b) {
  if (!(a.shape == b.shape) || a.kind.index() != b.kind.index()) return false;
  return std::visit(
      [&](const auto& ka) -> bool {
        using K = std::decay_t<decltype(ka)>;
        const K& kb = std::get<K>(b.kind);
        if constexpr (std::is_same_v<K, TableKind>) {
          return ka.images == kb.images;
        } else if constexpr (std::is_same_v<K, HiddenPointKind>) {
          return ka.target == kb.target;
        } else if constexpr (std::is_same_v<K, RandomMonotoneKind>) {
          return ka.seed == kb.seed && ka.term_count == kb.term_count;
        } else if constexpr (std::is_same_v<K, LiftedKind>) {
          return ka.extra_width == kb.extra_width && *ka.inner == *kb.inner;
        } else {
          return ka.seed == kb.seed && *ka.base == *kb.base;
        }
      },
      a.kind);
}

InstanceSpec HiddenPointSpec(Shape shape, Point target) {
  CheckDims(target, shape, "hidden target");
  return InstanceSpec{std::move(shape), HiddenPointKind{std::move(target)}};
}

InstanceSpec RandomMonotoneSpec(Shape shape, std::uint64_t seed, int term_count) {
  if (term_count < 1) throw UsageError("term_count must be at least 1");
  return InstanceSpec{std::move(shape), RandomMonotoneKind{seed, term_count}};
}

InstanceSpec LiftedSpec(InstanceSpec inner, int extra_width) {
  if (extra_width < 1) throw UsageError("extra_width must be at least 1");
  std::vector<int> widths = inner.shape.widths();
  widths.push_back(extra_width);
  return InstanceSpec{
      Shape(std::move(widths)),
      LiftedKind{std::make_shared<const InstanceSpec>(std::move(inner)),
                 extra_width}};
}

InstanceSpec TableSpec(Shape shape, std::vector<Point> images) {
  if (static_cast<std::int64_t>(images.size()) != shape.size()) {
    throw UsageError("table length does not match the lattice size");
  }
  for (const Point& p : images) CheckDims(p, shape, "table image");
  return InstanceSpec{std::move(shape), TableKind{std::move(images)}};
}

InstanceSpec InjectViolation(InstanceSpec base, std::uint64_t seed) {
  PlanViolation(base, seed);
  Shape shape = base.shape;
  return InstanceSpec{
      std::move(shape),
      ViolatedKind{std::make_shared<const InstanceSpec>(std::move(base)), seed}};
}

PlantedViolation PlanViolation(const InstanceSpec& base, std::uint64_t seed) {
  const Shape& shape = base.shape;
  std::vector<int> open_dims;
  for (int i = 0; i < shape.dims(); ++i) {
    if (shape.width(i) >= 2) open_dims.push_back(i);
  }
  if (open_dims.empty()) {
    throw GenerationError("cannot plant a violation in a one-point lattice");
  }
  Oracle::EvalFn f = MakeEval(base);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxPlantAttempts; ++attempt) {
    Point p = shape.PointAt(
        static_cast<std::int64_t>(UniformBelow(rng, shape.size())));
    int i = open_dims[UniformBelow(rng, open_dims.size())];
    PlantedViolation plan;
    plan.point = p;
    if (p[i] > 1 && f(p.With(i, p[i] - 1))[i] > 1) {
      Point q = p.With(i, p[i] - 1);
      plan.image = f(p).With(i, f(q)[i] - 1);
      plan.pair = Violation{q, p};
    } else if (p[i] < shape.width(i) && f(p.With(i, p[i] + 1))[i] < shape.width(i)) {
      Point r = p.With(i, p[i] + 1);
      plan.image = f(p).With(i, f(r)[i] + 1);
      plan.pair = Violation{p, r};
    } else {
      continue;
    }
    Oracle check(shape, OverrideEval(f, plan.point, plan.image));
    if (IsValidSolution(check, plan.pair)) return plan;
  }
  throw GenerationError("no confirmed violation after " +
                        std::to_string(kMaxPlantAttempts) + " attempts");
}

Oracle::EvalFn OverrideEval(Oracle::EvalFn base, Point p, Point image) {
  return [base = std::move(base), p = std::move(p),
          image = std::move(image)](const Point& x) {
    return x == p ? image : base(x);
  };
}

Oracle::EvalFn MakeEval(const InstanceSpec& spec) {
  return std::visit(
      [&](const auto& k) -> Oracle::EvalFn {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TableKind>) {
          return [shape = spec.shape, images = k.images](const Point& x) {
            return images[shape.IndexOf(x)];
          };
        } else if constexpr (std::is_same_v<K, HiddenPointKind>) {
          return [t = k.target](const Point& x) { return HiddenImage(t, x); };
        } else if constexpr (std::is_same_v<K, RandomMonotoneKind>) {
          return RandomEval(spec.shape, k.seed, k.term_count);
        } else if constexpr (std::is_same_v<K, LiftedKind>) {
          return [inner = MakeEval(*k.inner)](const Point& x) {
            std::vector<int> head(x.coords().begin(), x.coords().end() - 1);
            std::vector<int> out = inner(Point(std::move(head))).coords();
            out.push_back(x[x.dims() - 1]);
            return Point(std::move(out));
          };
        } else {
          PlantedViolation plan = PlanViolation(*k.base, k.seed);
          return OverrideEval(MakeEval(*k.base), plan.point, plan.image);
        }
      },
      spec.kind);
}

Oracle BuildOracle(const InstanceSpec& spec) {
  return Oracle(spec.shape, MakeEval(spec));
}

Oracle HiddenPoint(const Shape& shape, const Point& t) {
  return BuildOracle(HiddenPointSpec(shape, t));
}

Oracle AffineMonotone(const Shape& shape, std::vector<std::vector<double>> weights,
                      std::vector<double> offsets) {
  return Oracle(shape, AffineEval(shape, std::move(weights), std::move(offsets)));
}

Oracle RandomMonotone(const Shape& shape, std::uint64_t seed, int term_count) {
  return BuildOracle(RandomMonotoneSpec(shape, seed, term_count));
}

Oracle LiftDimension(const Oracle& inner, int extra_width) {
  if (extra_width < 1) throw UsageError("extra_width must be at least 1");
  std::vector<int> widths = inner.shape().widths();
  widths.push_back(extra_width);
  return Oracle(Shape(std::move(widths)), [inner](const Point& x) {
    std::vector<int> head(x.coords().begin(), x.coords().end() - 1);
    std::vector<int> out = inner(Point(std::move(head))).coords();
    out.push_back(x[x.dims() - 1]);
    return Point(std::move(out));
  });
}

std::int64_t EnumerationCap() {
  if (const char* env = std::getenv("TARSKI_ENUM_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::int64_t{1} << 20;
}

std::optional<Violation> VerifyMonotone(const Oracle& f, std::int64_t cap) {
  const Shape& shape = f.shape();
  if (shape.size() > cap) {
    throw SizeError("lattice has " + std::to_string(shape.size()) +
                    " points, enumeration cap is " + std::to_string(cap));
  }
  std::optional<Violation> found;
  ForEachPoint(shape, [&](const Point& x) {
    for (int i = 0; i < shape.dims(); ++i) {
      if (x[i] == shape.width(i)) continue;
      if (auto v = ViolationCheck(f, x, x.With(i, x[i] + 1))) {
        found = v;
        return false;
      }
    }
    return true;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json PointJson(const Point& p) { return json(p.coords()); }

[[noreturn]] void Bad(const std::string& field, const std::string& why) {
  throw FormatError("instance field '" + field + "': " + why);
}

const json& Field(const json& doc, const std::string& field,
                  const std::string& path) {
  auto it = doc.find(field);
  if (it == doc.end()) Bad(path + field, "missing");
  return *it;
}

std::vector<int> IntList(const json& v, const std::string& field) {
  if (!v.is_array()) Bad(field, "expected a list of integers");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) Bad(field, "expected a list of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::uint64_t Unsigned(const json& v, const std::string& field) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    Bad(field, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

json ToJson(const InstanceSpec& spec) {
  json doc;
  doc["shape"] = spec.shape.widths();
  doc["kind"] = spec.KindName();
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TableKind>) {
          json table = json::array();
          for (const Point& p : k.images) table.push_back(PointJson(p));
          doc["table"] = std::move(table);
        } else if constexpr (std::is_same_v<K, HiddenPointKind>) {
          doc["target"] = PointJson(k.target);
        } else if constexpr (std::is_same_v<K, RandomMonotoneKind>) {
          doc["seed"] = k.seed;
          doc["term_count"] = k.term_count;
        } else if constexpr (std::is_same_v<K, LiftedKind>) {
          doc["inner"] = ToJson(*k.inner);
          doc["extra_width"] = k.extra_width;
        } else {
          doc["inner"] = ToJson(*k.base);
          doc["seed"] = k.seed;
        }
      },
      spec.kind);
  return doc;
}

InstanceSpec FromJson(const json& doc, const std::string& path) {
  if (!doc.is_object()) Bad(path.empty() ? "<root>" : path, "expected an object");
  std::vector<int> widths = IntList(Field(doc, "shape", path), path + "shape");
  if (widths.empty()) Bad(path + "shape", "needs at least one dimension");
  for (int w : widths) {
    if (w < 1) Bad(path + "shape", "widths must be positive");
  }
  Shape shape(widths);
  const json& kind_json = Field(doc, "kind", path);
  if (!kind_json.is_string()) Bad(path + "kind", "expected a string");
  const std::string kind = kind_json.get<std::string>();

  auto point_in = [&](const json& v, const std::string& field) {
    Point p(IntList(v, field));
    if (!shape.Contains(p)) Bad(field, ToString(p) + " is outside the lattice");
    return p;
  };

  if (kind == "table") {
    const json& table = Field(doc, "table", path);
    if (!table.is_array()) Bad(path + "table", "expected a list of points");
    if (static_cast<std::int64_t>(table.size()) != shape.size()) {
      Bad(path + "table", "has " + std::to_string(table.size()) +
                              " entries, lattice has " +
                              std::to_string(shape.size()) + " points");
    }
    std::vector<Point> images;
    for (std::size_t i = 0; i < table.size(); ++i) {
      images.push_back(
          point_in(table[i], path + "table[" + std::to_string(i) + "]"));
    }
    return InstanceSpec{shape, TableKind{std::move(images)}};
  } else if (kind == "hidden") {
    return InstanceSpec{shape, HiddenPointKind{point_in(
                                   Field(doc, "target", path), path + "target")}};
  } else if (kind == "random") {
    std::uint64_t seed = Unsigned(Field(doc, "seed", path), path + "seed");
    const json& terms = Field(doc, "term_count", path);
    if (!terms.is_number_integer() || terms.get<std::int64_t>() < 1) {
      Bad(path + "term_count", "expected a positive integer");
    }
    return InstanceSpec{shape, RandomMonotoneKind{seed, terms.get<int>()}};
  } else if (kind == "lifted") {
    InstanceSpec inner = FromJson(Field(doc, "inner", path), path + "inner.");
    const json& extra = Field(doc, "extra_width", path);
    if (!extra.is_number_integer() || extra.get<std::int64_t>() < 1) {
      Bad(path + "extra_width", "expected a positive integer");
    }
    InstanceSpec spec = LiftedSpec(std::move(inner), extra.get<int>());
    if (!(spec.shape == shape)) {
      Bad(path + "shape", "does not match inner shape plus extra_width");
    }
    return spec;
  } else if (kind == "violated") {
    InstanceSpec base = FromJson(Field(doc, "inner", path), path + "inner.");
    if (!(base.shape == shape)) Bad(path + "shape", "does not match inner shape");
    std::uint64_t seed = Unsigned(Field(doc, "seed", path), path + "seed");
    return InstanceSpec{
        shape,
        ViolatedKind{std::make_shared<const InstanceSpec>(std::move(base)), seed}};
  }
  Bad(path + "kind", "unknown kind '" + kind + "'");
}

}  // namespace

std::string InstanceToJson(const InstanceSpec& spec) {
  return ToJson(spec).dump(2) + "\n";
}

InstanceSpec InstanceFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("instance document is not valid JSON: ") +
                      e.what());
  }
  return FromJson(doc, "");
}

void SaveInstance(const InstanceSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << InstanceToJson(spec);
  if (!out) throw UsageError("failed writing " + path);
}

InstanceSpec LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return InstanceFromJson(buf.str());
}

}  // namespace tarski
