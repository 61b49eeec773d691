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

// First-pass kernels. Both assign provisional labels to the foreground
// pixels of a row range and record equivalences in an EquivalenceTable.
//
// Rows outside the scanned range read as background, as do columns outside
// the image. That makes a range scan independent of its neighbours, which is
// what the chunked parallel pass relies on; cross-range adjacencies are left
// to the caller.

#pragma once

#include <cstddef>

#include "remccl/raster.hpp"
#include "remccl/unionfind.hpp"

namespace remccl {

/// Half-open range of rows [first, last).
struct RowRange {
  std::size_t first = 0;
  std::size_t last = 0;

  friend bool operator==(const RowRange&, const RowRange&) = default;
};

/// Half-open range of row pairs [first, last). Pair k covers rows 2k and
/// 2k + 1; for an odd height the last pair holds a single row.
struct PairRange {
  std::size_t first = 0;
  std::size_t last = 0;

  friend bool operator==(const PairRange&, const PairRange&) = default;
};

/// Number of row pairs including a trailing single row.
[[nodiscard]] constexpr std::size_t pair_slots(std::size_t height) noexcept {
  return (height + 1) / 2;
}

/// One-line decision-tree scan (neighbours a, b, c, d).
///
/// Allocates labels starting at `next` and returns the first unused label.
/// The caller guarantees slots [next, next + pixels in range) are free.
Label scan_cclremsp(const BinaryImage& image, LabelGrid& labels,
                    EquivalenceTable& table, RowRange rows, Label next);

/// Same as above, allocating from table.count() and advancing it.
Label scan_cclremsp(const BinaryImage& image, LabelGrid& labels,
                    EquivalenceTable& table, RowRange rows);

/// Two-line, two-pixel scan (neighbours a, b, c, d, f with e over g).
///
/// Allocates labels starting at `next` and returns the first unused label.
Label scan_aremsp(const BinaryImage& image, LabelGrid& labels,
                  EquivalenceTable& table, PairRange pairs, Label next);

/// Same as above, allocating from table.count() and advancing it.
Label scan_aremsp(const BinaryImage& image, LabelGrid& labels,
                  EquivalenceTable& table, PairRange pairs);

}  // namespace remccl
