// Copyright 2026 The remccl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Timing harness: min/avg/max runtimes per (algorithm, image, workers),
// per-phase medians, and speedup against the 1-worker run of the same
// algorithm.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "remccl/imageio.hpp"
#include "remccl/labeling.hpp"
#include "remccl/parallel.hpp"
#include "remccl/raster.hpp"

namespace remccl {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when two benchmarked runs that must agree produce different output.
class OutputMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { kCclRemSP, kARemSP, kPARemSP };

/// "cclremsp", "aremsp", "paremsp". Throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm algo);

/// Runs one pipeline; `workers` and `sequential_relabel` only affect
/// kPARemSP.
LabelResult run_algorithm(Algorithm algo, const BinaryImage& image,
                          std::size_t workers = 1,
                          bool sequential_relabel = false);

/// FNV-1a over the label values (little-endian 32-bit words) plus the size.
std::uint64_t hash_labels(const LabelGrid& labels);

struct BenchImage {
  std::string id;
  BinaryImage image;
  std::size_t bytes = 0;  // file size, or width * height for generators
};

/// Accepts "gen:<generator spec>" (see parse_generator_spec) or a PBM/PGM
/// path. Throws ConfigError if the id cannot be resolved.
BenchImage load_bench_image(std::string_view id, PnmOptions pnm = {},
                            double level = 0.5);

struct BenchConfig {
  std::vector<std::string> algorithms;
  std::vector<std::string> images;
  std::vector<std::size_t> workers{1};
  std::size_t reps = 5;  // at least 5
  std::size_t warmup = 1;
  bool sequential_relabel = false;
  PnmOptions pnm;
  double level = 0.5;
};

struct BenchReport {
  std::string algorithm;
  std::string image;
  std::size_t bytes = 0;
  std::size_t workers = 1;
  std::vector<double> rep_ms;
  double min_ms = 0;
  double avg_ms = 0;
  double max_ms = 0;
  double median_ms = 0;
  PhaseTimes phases;  // per-phase medians over the reps
  double speedup = 1;              // total time, t(1) / t(W)
  double local_speedup = 1;        // scan phase only
  double local_merge_speedup = 1;  // scan + boundary merge + flatten
  Label components = 0;
  std::uint64_t output_hash = 0;
};

/// Sequential algorithms are measured once at workers = 1; kPARemSP at every
/// requested count plus 1 for the speedup baseline. Every rep of every
/// worker count must hash identically (OutputMismatch otherwise), and all
/// algorithms must agree as partitions on each image.
std::vector<BenchReport> run_bench(const BenchConfig& config);

/// Same, with images already loaded; config.images is ignored.
std::vector<BenchReport> run_bench(const BenchConfig& config,
                                   std::span<const BenchImage> images);

/// Columns: algo,image,bytes,workers,rep1_ms..repN_ms,min_ms,avg_ms,max_ms,
/// scan_ms,merge_ms,flatten_ms,relabel_ms,speedup. N is the largest rep count
/// among the reports; shorter rows leave the extra rep cells empty.
/// Throws std::invalid_argument for an empty list.
std::string emit_csv(std::span<const BenchReport> reports);

/// Sequential comparison: per algorithm, min/avg/max over images of each
/// image's median runtime.
struct SequentialSummary {
  std::string algorithm;
  std::size_t images = 0;
  double min_ms = 0;
  double avg_ms = 0;
  double max_ms = 0;
};

std::vector<SequentialSummary> compare_sequential(
    std::span<const Algorithm> algorithms, std::span<const BenchImage> images,
    std::size_t reps, std::size_t warmup = 1);

/// Columns: algo,images,min_ms,avg_ms,max_ms.
std::string emit_sequential_csv(std::span<const SequentialSummary> rows);

}  // namespace remccl
