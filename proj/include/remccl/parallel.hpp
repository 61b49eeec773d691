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

// Chunked parallel labeling (PARemSP).
//
// The image is split row-wise into chunks aligned to row pairs. Each worker
// runs the two-line scan over its chunk with labels starting after
// firstRow * width, so no two chunks share a label. The first row of every
// chunk but the first is then merged against the row above it with the
// lock-based merger(), and a single flatten + relabel finishes the job.
//
// Output is bitwise identical to label_aremsp() for every worker count.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "remccl/labeling.hpp"
#include "remccl/raster.hpp"
#include "remccl/scan.hpp"
#include "remccl/unionfind.hpp"

namespace remccl {

struct Chunk {
  RowRange rows;
  Label label_base = 0;  // chunk labels fall in (label_base, label_base + rows * width]

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

struct ChunkPartition {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Chunk> chunks;

  [[nodiscard]] std::size_t workers() const noexcept { return chunks.size(); }
};

/// Splits floor(height / 2) row pairs over at most `workers` chunks.
///
/// The worker count is capped at max(1, pairs). Pairs are spread as evenly
/// as possible, with the first (pairs mod workers) chunks taking one extra
/// pair; an odd trailing row always belongs to the last chunk. Throws
/// std::invalid_argument when any argument is 0.
ChunkPartition partition_rows(std::size_t height, std::size_t workers,
                              std::size_t width);

/// Merges the first row of chunk `chunk_index` (>= 1) with the row above it.
void merge_boundary_row(const LabelGrid& labels, EquivalenceTable& table,
                        LockTable& locks, const ChunkPartition& part,
                        std::size_t chunk_index);

/// Runs merge_boundary_row() for every chunk boundary from the calling thread.
void boundary_merge(const BinaryImage& image, const LabelGrid& labels,
                    EquivalenceTable& table, LockTable& locks,
                    const ChunkPartition& part);

struct ParallelOptions {
  std::size_t workers = 1;
  /// Run the final relabel on one thread instead of per-chunk stripes.
  bool sequential_relabel = false;
  /// Nonzero: workers yield at random points to perturb scheduling.
  std::uint64_t jitter_seed = 0;
};

/// Throws std::invalid_argument for workers == 0 or an empty image.
LabelResult label_paremsp(const BinaryImage& image,
                          const ParallelOptions& options);

inline LabelResult label_paremsp(const BinaryImage& image,
                                 std::size_t workers) {
  return label_paremsp(image, ParallelOptions{.workers = workers});
}

}  // namespace remccl
