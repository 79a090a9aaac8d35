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

#include "tarski/cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "tarski/basic_solvers.h"
#include "tarski/errors.h"
#include "tarski/kd_recursion.h"

namespace tarski {
namespace {

using nlohmann::json;

std::string Hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<int> ParseIntList(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw UsageError(flag + " expects a comma-separated list of integers, got '" +
                       text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(flag + " must not be empty");
  return out;
}

std::vector<std::string> ParseWordList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json PointJson(const Point& p) { return p.coords(); }

json SolutionJson(const Solution& s) {
  if (const auto* fp = std::get_if<FixedPoint>(&s)) {
    return {{"type", "fixed_point"}, {"point", PointJson(fp->x)}};
  }
  const auto& v = std::get<Violation>(s);
  return {{"type", "violation"}, {"x", PointJson(v.x)}, {"y", PointJson(v.y)}};
}

[[noreturn]] void BadReport(const std::string& field, const std::string& why) {
  throw FormatError("report field '" + field + "': " + why);
}

Point PointFromJson(const json& doc, const std::string& path, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) BadReport(path + key, "missing");
  if (!it->is_array() || it->empty()) BadReport(path + key, "expected a list of integers");
  std::vector<int> coords;
  for (const json& e : *it) {
    if (!e.is_number_integer()) BadReport(path + key, "expected a list of integers");
    coords.push_back(e.get<int>());
  }
  return Point(std::move(coords));
}

std::string ReadFile(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + what + " '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int CheckedSize(const Point& p, const Shape& shape) {
  if (p.dims() != shape.dims()) {
    throw UsageError("solution point " + ToString(p) + " has " +
                     std::to_string(p.dims()) + " coordinates, the instance has " +
                     std::to_string(shape.dims()));
  }
  return p.dims();
}

// splitmix64 finalizer.
std::uint64_t Mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int FitExponent(const std::string& algo, int k) {
  if (algo == "fast" || (algo == "auto" && k >= 3)) return k - 1;
  return k;
}

BenchRow RunCell(const BenchConfig& config, int k, int n, int trial,
                 const std::string& algo) {
  const std::uint64_t cell_seed = BenchCellSeed(config.seed, k, n, trial);
  const InstanceSpec spec = BenchInstance(config.generator, k, n, cell_seed);
  Oracle f = BuildOracle(spec);
  SolveTelemetry tel;
  const auto start = std::chrono::steady_clock::now();
  Solution s;
  int iterations = 0;
  if (algo == "brute") {
    s = BruteForce(f);
    iterations = static_cast<int>(f.distinct_queries());
  } else {
    SolveOptions opts;
    opts.telemetry = &tel;
    s = Solve(f, ParseSolveMode(algo), opts);
    iterations = tel.top_iterations;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!IsValidSolution(BuildOracle(spec), s)) {
    throw InternalError("bench cell k=" + std::to_string(k) + " n=" + std::to_string(n) +
                        " algo=" + algo + " produced an invalid solution");
  }
  BenchRow row;
  row.k = k;
  row.n = n;
  row.algo = algo;
  row.generator = config.generator;
  row.seed = cell_seed;
  row.distinct_queries = f.distinct_queries();
  row.iterations = iterations;
  row.wall_time = wall;
  row.trace_hash = f.trace_hash();
  row.budget_ok = f.stats().path_budget_breaches == 0;
  for (const LevelRecord& r : tel.levels) {
    row.level_bound = std::max(row.level_bound, r.Bound());
    row.budget_ok = row.budget_ok && r.queries <= r.Bound();
  }
  return row;
}

void ValidateBench(const BenchConfig& c) {
  if (c.trials < 1) throw UsageError("--trials must be at least 1");
  if (c.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (c.generator != "hidden" && c.generator != "random") {
    throw UsageError("--generator must be hidden or random");
  }
  if (c.dims.empty() || c.widths.empty() || c.algos.empty()) {
    throw UsageError("bench needs at least one dimension, width and algorithm");
  }
  for (int k : c.dims) {
    if (k < 1) throw UsageError("--dims entries must be at least 1");
  }
  for (int n : c.widths) {
    if (n < 1) throw UsageError("--widths entries must be at least 1");
  }
  for (const std::string& a : c.algos) {
    if (a != "brute") ParseSolveMode(a);
    if (a == "fast") {
      for (int k : c.dims) {
        if (k < 3) throw UsageError("--algos fast needs every --dims entry >= 3");
      }
    }
  }
}

// Subcommand implementations.

struct GenArgs {
  std::string kind;
  std::string shape;
  std::string target;
  std::uint64_t seed = 0;
  int terms = 2;
  std::string base;
  int extra = 0;
  std::string table;
  std::string out;
};

InstanceSpec BuildGenSpec(const GenArgs& a, const std::map<std::string, bool>& given) {
  auto need = [&](const std::string& flag) {
    if (!given.at(flag)) throw UsageError("--kind " + a.kind + " requires --" + flag);
  };
  auto forbid = [&](std::initializer_list<const char*> flags) {
    for (const char* flag : flags) {
      if (given.at(flag)) {
        throw UsageError("--" + std::string(flag) + " does not apply to --kind " + a.kind);
      }
    }
  };
  if (a.kind == "hidden") {
    need("shape");
    need("target");
    forbid({"seed", "terms", "base", "extra", "table"});
    return HiddenPointSpec(Shape(ParseIntList(a.shape, "--shape")),
                           Point(ParseIntList(a.target, "--target")));
  }
  if (a.kind == "random") {
    need("shape");
    forbid({"target", "base", "extra", "table"});
    return RandomMonotoneSpec(Shape(ParseIntList(a.shape, "--shape")), a.seed, a.terms);
  }
  if (a.kind == "table") {
    need("shape");
    need("table");
    forbid({"target", "seed", "terms", "base", "extra"});
    json doc;
    doc["kind"] = "table";
    doc["shape"] = ParseIntList(a.shape, "--shape");
    try {
      doc["table"] = json::parse(a.table);
    } catch (const json::exception&) {
      throw UsageError("--table expects a JSON list of image points");
    }
    return InstanceFromJson(doc.dump());
  }
  if (a.kind == "lifted") {
    need("base");
    need("extra");
    forbid({"shape", "target", "seed", "terms", "table"});
    return LiftedSpec(LoadInstance(a.base), a.extra);
  }
  if (a.kind == "violated") {
    need("base");
    forbid({"shape", "target", "terms", "extra", "table"});
    return InjectViolation(LoadInstance(a.base), a.seed);
  }
  throw UsageError("--kind must be one of hidden, random, table, lifted, violated");
}

}  // namespace

SolveReport RunSolve(const InstanceSpec& spec, const std::string& algo,
                     std::uint64_t seed, const TraceSink& trace) {
  Oracle f = BuildOracle(spec);
  SolveReport r;
  r.algo = algo;
  r.instance_kind = spec.KindName();
  r.shape = spec.shape.widths();
  r.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  if (algo == "brute") {
    r.solution = BruteForce(f);
    r.iterations = static_cast<int>(f.distinct_queries());
  } else {
    SolveTelemetry tel;
    SolveOptions opts;
    opts.telemetry = &tel;
    opts.trace = trace;
    r.solution = Solve(f, ParseSolveMode(algo), opts);
    r.iterations = tel.top_iterations;
  }
  r.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.distinct_queries = f.distinct_queries();
  r.raw_lookups = f.raw_lookups();
  r.trace_hash = f.trace_hash();
  r.verified = VerifySolution(spec, r.solution).ok;
  return r;
}

std::string ReportToJson(const SolveReport& r) {
  json j;
  j["algo"] = r.algo;
  j["instance_kind"] = r.instance_kind;
  j["shape"] = r.shape;
  j["seed"] = r.seed;
  j["solution"] = SolutionJson(r.solution);
  j["distinct_queries"] = r.distinct_queries;
  j["raw_lookups"] = r.raw_lookups;
  j["iterations"] = r.iterations;
  j["wall_time"] = r.wall_time;
  j["trace_hash"] = Hex64(r.trace_hash);
  j["verified"] = r.verified;
  return j.dump(2) + "\n";
}

std::string ReportToText(const SolveReport& r) {
  std::ostringstream os;
  os << "algo: " << r.algo << "\n"
     << "instance: " << r.instance_kind << " " << Shape(r.shape) << "\n"
     << "solution: " << ToString(r.solution) << "\n"
     << "distinct_queries: " << r.distinct_queries << "\n"
     << "raw_lookups: " << r.raw_lookups << "\n"
     << "iterations: " << r.iterations << "\n"
     << "wall_time: " << Fixed6(r.wall_time) << "\n"
     << "trace_hash: " << Hex64(r.trace_hash) << "\n"
     << "verified: " << (r.verified ? "yes" : "no") << "\n";
  return os.str();
}

SolveReport ReportFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception&) {
    throw FormatError("report document is not valid JSON");
  }
  if (!doc.is_object()) throw FormatError("report document must be a JSON object");
  SolveReport r;
  auto sol = doc.find("solution");
  if (sol == doc.end() || !sol->is_object()) BadReport("solution", "missing");
  auto type = sol->find("type");
  if (type == sol->end() || !type->is_string()) BadReport("solution.type", "missing");
  if (*type == "fixed_point") {
    r.solution = FixedPoint{PointFromJson(*sol, "solution.", "point")};
  } else if (*type == "violation") {
    r.solution = Violation{PointFromJson(*sol, "solution.", "x"),
                           PointFromJson(*sol, "solution.", "y")};
  } else {
    BadReport("solution.type", "expected fixed_point or violation");
  }
  if (auto it = doc.find("shape"); it != doc.end()) {
    std::vector<int> widths;
    if (!it->is_array()) BadReport("shape", "expected a list of integers");
    for (const json& e : *it) {
      if (!e.is_number_integer()) BadReport("shape", "expected a list of integers");
      widths.push_back(e.get<int>());
    }
    r.shape = std::move(widths);
  }
  if (auto it = doc.find("algo"); it != doc.end() && it->is_string()) r.algo = *it;
  return r;
}

VerifyResult VerifySolution(const InstanceSpec& spec, const Solution& s) {
  const Shape& shape = spec.shape;
  Oracle f = BuildOracle(spec);
  auto outside = [&](const Point& p) {
    return VerifyResult{false, "point " + ToString(p) + " is outside the lattice " +
                                   [&] { std::ostringstream os; os << shape; return os.str(); }()};
  };
  if (const auto* fp = std::get_if<FixedPoint>(&s)) {
    CheckedSize(fp->x, shape);
    if (!shape.Contains(fp->x)) return outside(fp->x);
    const Point fx = f(fp->x);
    if (fx == fp->x) return {true, "fixed point: f(x) = x at " + ToString(fp->x)};
    return {false, "not a fixed point: f" + ToString(fp->x) + " = " + ToString(fx)};
  }
  const auto& v = std::get<Violation>(s);
  CheckedSize(v.x, shape);
  CheckedSize(v.y, shape);
  if (!shape.Contains(v.x)) return outside(v.x);
  if (!shape.Contains(v.y)) return outside(v.y);
  if (!Leq(v.x, v.y)) {
    return {false, "violation precondition x <= y fails for x = " + ToString(v.x) +
                       ", y = " + ToString(v.y)};
  }
  const Point fx = f(v.x);
  const Point fy = f(v.y);
  if (Leq(fx, fy)) {
    return {false, "not a violation: f(x) = " + ToString(fx) + " <= f(y) = " + ToString(fy)};
  }
  return {true, "violation: x = " + ToString(v.x) + " <= y = " + ToString(v.y) +
                    " but f(x) = " + ToString(fx) + " is not <= f(y) = " + ToString(fy)};
}

std::uint64_t BenchCellSeed(std::uint64_t seed, int k, int n, int trial) {
  std::uint64_t h = Mix(seed);
  h = Mix(h ^ static_cast<std::uint64_t>(k));
  h = Mix(h ^ static_cast<std::uint64_t>(n));
  return Mix(h ^ static_cast<std::uint64_t>(trial));
}

InstanceSpec BenchInstance(const std::string& generator, int k, int n,
                           std::uint64_t cell_seed) {
  const Shape shape(std::vector<int>(k, n));
  if (generator == "hidden") {
    std::mt19937_64 rng(cell_seed);
    std::vector<int> t(k);
    for (int& c : t) c = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    return HiddenPointSpec(shape, Point(std::move(t)));
  }
  if (generator == "random") return RandomMonotoneSpec(shape, cell_seed, 2 * k);
  throw UsageError("unknown generator '" + generator + "'");
}

std::vector<BenchRow> RunBench(const BenchConfig& config) {
  ValidateBench(config);
  struct Cell {
    int k, n, trial;
    std::string algo;
  };
  std::vector<Cell> cells;
  for (int k : config.dims) {
    for (int n : config.widths) {
      for (int trial = 0; trial < config.trials; ++trial) {
        for (const std::string& algo : config.algos) cells.push_back({k, n, trial, algo});
      }
    }
  }
  std::vector<BenchRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const Cell& c = cells[i];
        rows[i] = RunCell(config, c.k, c.n, c.trial, c.algo);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = cells.size();
      }
    }
  };
  const int threads = std::min<int>(config.jobs, static_cast<int>(cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.k, a.n, a.algo, a.generator, a.seed) <
           std::tie(b.k, b.n, b.algo, b.generator, b.seed);
  });
  return rows;
}

std::string BenchToCsv(const std::vector<BenchRow>& rows, bool timing) {
  std::ostringstream os;
  os << "k,n,algo,generator,seed,distinct_queries,iterations,wall_time,trace_hash,"
        "level_bound,budget_ok\n";
  struct Fit {
    int exponent = 0;
    double max_ratio = 0;
    double sum = 0;
    int count = 0;
  };
  std::map<std::pair<int, std::string>, Fit> fits;
  for (const BenchRow& r : rows) {
    os << r.k << ',' << r.n << ',' << r.algo << ',' << r.generator << ',' << r.seed << ','
       << r.distinct_queries << ',' << r.iterations << ','
       << Fixed6(timing ? r.wall_time : 0.0) << ',' << Hex64(r.trace_hash) << ','
       << r.level_bound << ',' << (r.budget_ok ? 1 : 0) << '\n';
    if (r.n < 2) continue;
    Fit& fit = fits[{r.k, r.algo}];
    fit.exponent = FitExponent(r.algo, r.k);
    const double ratio = r.distinct_queries / std::pow(std::log2(r.n), fit.exponent);
    fit.max_ratio = std::max(fit.max_ratio, ratio);
    fit.sum += ratio;
    ++fit.count;
  }
  os << "# summary,k,algo,exponent,max_ratio,mean_ratio\n";
  for (const auto& [key, fit] : fits) {
    os << "# summary," << key.first << ',' << key.second << ',' << fit.exponent << ','
       << Fixed6(fit.max_ratio) << ',' << Fixed6(fit.sum / fit.count) << '\n';
  }
  return os.str();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tarski fixed point solvers: generate, solve, verify, benchmark"};
  app.name("tarski");
  app.require_subcommand(1);

  GenArgs gen;
  std::map<std::string, CLI::Option*> gen_opts;
  CLI::App* gen_cmd = app.add_subcommand("gen", "write an instance file");
  gen_cmd->add_option("--kind", gen.kind, "hidden, random, table, lifted or violated")
      ->required();
  gen_opts["shape"] = gen_cmd->add_option("--shape", gen.shape, "widths, e.g. 8,8,8");
  gen_opts["target"] = gen_cmd->add_option("--target", gen.target, "hidden fixed point");
  gen_opts["seed"] = gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_opts["terms"] = gen_cmd->add_option("--terms", gen.terms, "random: term count");
  gen_opts["base"] = gen_cmd->add_option("--base", gen.base, "base instance file");
  gen_opts["extra"] = gen_cmd->add_option("--extra", gen.extra, "lifted: new width");
  gen_opts["table"] = gen_cmd->add_option("--table", gen.table, "JSON list of images");
  gen_cmd->add_option("--out", gen.out, "output file (default: stdout)");

  std::string instance_path, report_path, algo = "auto", format = "json";
  std::uint64_t solve_seed = 0;
  bool trace = false;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance and report");
  solve_cmd->add_option("instance", instance_path, "instance file")->required();
  solve_cmd->add_option("--algo", algo, "auto, dqy, fast or brute")
      ->check(CLI::IsMember({"auto", "dqy", "fast", "brute"}));
  solve_cmd->add_option("--seed", solve_seed, "recorded in the report");
  solve_cmd->add_flag("--trace", trace, "stream algorithm events to stderr");
  solve_cmd->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a solve report");
  verify_cmd->add_option("instance", instance_path, "instance file")->required();
  verify_cmd->add_option("report", report_path, "JSON report from solve")->required();

  BenchConfig bench;
  std::string dims_s = "3", widths_s = "8", algos_s = "dqy,fast", bench_out;
  bool no_timing = false;
  CLI::App* bench_cmd = app.add_subcommand("bench", "query-count sweep as CSV");
  bench_cmd->add_option("--dims", dims_s, "dimensions, e.g. 3,4");
  bench_cmd->add_option("--widths", widths_s, "side lengths, e.g. 8,16,32");
  bench_cmd->add_option("--algos", algos_s, "subset of auto,dqy,fast,brute");
  bench_cmd->add_option("--trials", bench.trials, "instances per (k, n)");
  bench_cmd->add_option("--seed", bench.seed, "base seed");
  bench_cmd->add_option("--generator", bench.generator, "hidden or random");
  bench_cmd->add_option("--jobs", bench.jobs, "worker threads");
  bench_cmd->add_flag("--no-timing", no_timing, "write 0 for every wall_time");
  bench_cmd->add_option("--out", bench_out, "CSV file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) {
      std::map<std::string, bool> given;
      for (const auto& [name, opt] : gen_opts) given[name] = opt->count() > 0;
      InstanceSpec spec = BuildGenSpec(gen, given);
      if (gen.out.empty()) {
        out << InstanceToJson(spec) << "\n";
      } else {
        SaveInstance(spec, gen.out);
      }
      return kExitOk;
    }
    if (*solve_cmd) {
      InstanceSpec spec = LoadInstance(instance_path);
      TraceSink sink;
      if (trace) sink = [&err](const std::string& e) { err << e << "\n"; };
      SolveReport r = RunSolve(spec, algo, solve_seed, sink);
      out << (format == "json" ? ReportToJson(r) : ReportToText(r));
      if (!r.verified) {
        err << "tarski: solution failed verification: "
            << VerifySolution(spec, r.solution).message << "\n";
        return kExitInvalid;
      }
      return kExitOk;
    }
    if (*verify_cmd) {
      InstanceSpec spec = LoadInstance(instance_path);
      SolveReport r = ReportFromJson(ReadFile(report_path, "report"));
      if (!r.shape.empty() && r.shape != spec.shape.widths()) {
        std::ostringstream os;
        os << "report shape " << Point(r.shape) << " does not match instance shape "
           << spec.shape;
        throw UsageError(os.str());
      }
      VerifyResult v = VerifySolution(spec, r.solution);
      out << (v.ok ? "PASS " : "FAIL ") << v.message << "\n";
      return v.ok ? kExitOk : kExitInvalid;
    }
    if (*bench_cmd) {
      bench.dims = ParseIntList(dims_s, "--dims");
      bench.widths = ParseIntList(widths_s, "--widths");
      bench.algos = ParseWordList(algos_s);
      const std::string csv = BenchToCsv(RunBench(bench), !no_timing);
      if (bench_out.empty()) {
        out << csv;
      } else {
        std::ofstream file(bench_out);
        if (!file) throw UsageError("cannot write '" + bench_out + "'");
        file << csv;
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "tarski: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "tarski: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace tarski
