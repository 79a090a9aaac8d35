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

// The `tarski` command line: gen, solve, verify and bench.

#ifndef TARSKI_CLI_H_
#define TARSKI_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tarski/instances.h"
#include "tarski/lattice.h"
#include "tarski/telemetry.h"

namespace tarski {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // a solution failed verification
inline constexpr int kExitUsage = 2;
inline constexpr int kExitError = 3;    // bad files, size caps, internal errors

struct SolveReport {
  std::string algo;
  std::string instance_kind;
  std::vector<int> shape;  // empty when a report omits it
  std::uint64_t seed = 0;
  Solution solution;
  std::int64_t distinct_queries = 0;
  std::int64_t raw_lookups = 0;
  int iterations = 0;
  double wall_time = 0;  // seconds
  std::uint64_t trace_hash = 0;
  bool verified = false;
};

// "auto", "dqy", "fast" or "brute". The seed is recorded in the report; all
// algorithms are deterministic. `verified` is filled in from a fresh oracle.
SolveReport RunSolve(const InstanceSpec& spec, const std::string& algo,
                     std::uint64_t seed, const TraceSink& trace = {});

std::string ReportToJson(const SolveReport& r);
std::string ReportToText(const SolveReport& r);
// Reads the fields a report needs for verification; FormatError otherwise.
SolveReport ReportFromJson(const std::string& text);

struct VerifyResult {
  bool ok = false;
  std::string message;
};

// Re-checks the solution against a fresh oracle for `spec`. UsageError when
// the solution's points do not have the instance's dimension.
VerifyResult VerifySolution(const InstanceSpec& spec, const Solution& s);

struct BenchConfig {
  std::vector<int> dims{3};
  std::vector<int> widths{8};
  std::vector<std::string> algos{"dqy", "fast"};
  int trials = 10;
  std::uint64_t seed = 1;
  std::string generator = "hidden";  // or "random"
  int jobs = 1;
};

struct BenchRow {
  int k = 0;
  int n = 0;
  std::string algo;
  std::string generator;
  std::uint64_t seed = 0;  // instance seed of this cell
  std::int64_t distinct_queries = 0;
  int iterations = 0;
  double wall_time = 0;
  std::uint64_t trace_hash = 0;
  // Largest (q + 2)(ceil(log2 n) + 2) over the reduction levels, 0 if none.
  std::int64_t level_bound = 0;
  // Every reduction level and every monotone path stayed in budget.
  bool budget_ok = true;
};

// The instance a bench cell solves.
InstanceSpec BenchInstance(const std::string& generator, int k, int n,
                           std::uint64_t cell_seed);
std::uint64_t BenchCellSeed(std::uint64_t seed, int k, int n, int trial);

// Rows sorted by (k, n, algo, generator, seed), independent of `jobs`.
std::vector<BenchRow> RunBench(const BenchConfig& config);

// Header, one line per row, then '#' summary lines with the largest and mean
// queries / (log2 n)^e per (k, algo), e = k - 1 for fast and k otherwise.
// With timing off every wall_time is written as 0.
std::string BenchToCsv(const std::vector<BenchRow>& rows, bool timing);

// Entry point behind the `tarski` executable.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tarski

#endif  // TARSKI_CLI_H_
