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

#include "remccl/parallel.hpp"

#include <algorithm>
#include <array>
#include <barrier>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "remccl/prng.hpp"

namespace remccl {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

// Random yields to shake up thread interleavings in tests.
class Jitter {
 public:
  Jitter(std::uint64_t seed, std::size_t worker)
      : enabled_(seed != 0), rng_(seed * 0x100000001B3ULL + worker) {}

  void phase_start() {
    if (!enabled_) return;
    for (auto n = rng_.next_below(4); n > 0; --n) std::this_thread::yield();
  }

  void maybe_yield() {
    if (enabled_ && rng_.next_below(16) == 0) std::this_thread::yield();
  }

 private:
  bool enabled_;
  Xorshift64Star rng_;
};

PairRange pairs_of(const Chunk& chunk) {
  return PairRange{chunk.rows.first / 2, pair_slots(chunk.rows.last)};
}

void merge_row(const LabelGrid& labels, EquivalenceTable& table,
               LockTable& locks, std::size_t row, Jitter* jitter) {
  const std::size_t width = labels.width();
  const Label* cur = labels.row(row);
  const Label* up = labels.row(row - 1);
  for (std::size_t x = 0; x < width; ++x) {
    const Label e = cur[x];
    if (e == 0) continue;
    if (jitter != nullptr) jitter->maybe_yield();
    if (up[x] != 0) {
      merger(table, locks, e, up[x]);
    } else {
      if (x > 0 && up[x - 1] != 0) merger(table, locks, e, up[x - 1]);
      if (x + 1 < width && up[x + 1] != 0) merger(table, locks, e, up[x + 1]);
    }
  }
}

void check_partition(const LabelGrid& labels, const ChunkPartition& part) {
  if (labels.width() != part.width || labels.height() != part.height) {
    throw std::invalid_argument("partition does not match label grid");
  }
}

}  // namespace

ChunkPartition partition_rows(std::size_t height, std::size_t workers,
                              std::size_t width) {
  if (height == 0 || workers == 0 || width == 0) {
    throw std::invalid_argument("partition_rows: height, workers and width "
                                "must be positive");
  }
  const std::size_t pairs = height / 2;
  const std::size_t n = std::min(workers, std::max<std::size_t>(1, pairs));
  const std::size_t per = pairs / n;
  const std::size_t extra = pairs % n;

  ChunkPartition part{width, height, {}};
  part.chunks.reserve(n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rows = 2 * (per + (i < extra ? 1 : 0));
    const std::size_t last = (i + 1 == n) ? height : row + rows;
    part.chunks.push_back(Chunk{RowRange{row, last},
                                static_cast<Label>(row * width)});
    row = last;
  }
  return part;
}

void merge_boundary_row(const LabelGrid& labels, EquivalenceTable& table,
                        LockTable& locks, const ChunkPartition& part,
                        std::size_t chunk_index) {
  check_partition(labels, part);
  if (chunk_index == 0 || chunk_index >= part.chunks.size()) {
    throw std::out_of_range("merge_boundary_row: chunk index " +
                            std::to_string(chunk_index));
  }
  merge_row(labels, table, locks, part.chunks[chunk_index].rows.first,
            nullptr);
}

void boundary_merge(const BinaryImage& image, const LabelGrid& labels,
                    EquivalenceTable& table, LockTable& locks,
                    const ChunkPartition& part) {
  if (image.width() != labels.width() || image.height() != labels.height()) {
    throw std::invalid_argument("boundary_merge: image and labels differ");
  }
  for (std::size_t i = 1; i < part.chunks.size(); ++i) {
    merge_boundary_row(labels, table, locks, part, i);
  }
}

LabelResult label_paremsp(const BinaryImage& image,
                          const ParallelOptions& options) {
  if (options.workers == 0) {
    throw std::invalid_argument("label_paremsp: workers must be >= 1");
  }
  if (image.empty()) {
    throw std::invalid_argument("labeling: image has zero pixels");
  }

  const ChunkPartition part =
      partition_rows(image.height(), options.workers, image.width());
  const std::size_t n = part.workers();
  const Label max_label = static_cast<Label>(image.size());

  LabelResult out;
  out.labels = LabelGrid(image.width(), image.height());
  EquivalenceTable table(image.size());

  // Phase boundaries: start, scan done, merge done, flatten done, relabel done.
  std::array<Clock::time_point, 5> stamps{};
  stamps[0] = Clock::now();

  if (n == 1) {
    scan_aremsp(image, out.labels, table, pairs_of(part.chunks[0]), 1);
    stamps[1] = stamps[2] = Clock::now();
    out.components = table.flatten(max_label);
    stamps[3] = Clock::now();
    relabel(out.labels, table);
    stamps[4] = Clock::now();
  } else {
    LockTable locks(image.size());
    std::size_t phase = 1;
    std::barrier sync(static_cast<std::ptrdiff_t>(n), [&]() noexcept {
      stamps[phase++] = Clock::now();
    });

    auto work = [&](std::size_t i) {
      Jitter jitter(options.jitter_seed, i);
      const Chunk& chunk = part.chunks[i];

      jitter.phase_start();
      scan_aremsp(image, out.labels, table, pairs_of(chunk),
                  chunk.label_base + 1);
      sync.arrive_and_wait();

      jitter.phase_start();
      if (i > 0) {
        merge_row(out.labels, table, locks, chunk.rows.first,
                  options.jitter_seed != 0 ? &jitter : nullptr);
      }
      sync.arrive_and_wait();

      if (i == 0) out.components = table.flatten(max_label);
      sync.arrive_and_wait();

      jitter.phase_start();
      if (!options.sequential_relabel) {
        relabel_rows(out.labels, table, chunk.rows.first, chunk.rows.last);
      } else if (i == 0) {
        relabel(out.labels, table);
      }
      sync.arrive_and_wait();
    };

    {
      std::vector<std::jthread> threads;
      threads.reserve(n - 1);
      for (std::size_t i = 1; i < n; ++i) threads.emplace_back(work, i);
      work(0);
    }
  }

  out.phases.scan_ms = ms_between(stamps[0], stamps[1]);
  out.phases.merge_ms = ms_between(stamps[1], stamps[2]);
  out.phases.flatten_ms = ms_between(stamps[2], stamps[3]);
  out.phases.relabel_ms = ms_between(stamps[3], stamps[4]);
  return out;
}

}  // namespace remccl
