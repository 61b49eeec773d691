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

#pragma once

#include <cstddef>

#include "remccl/raster.hpp"
#include "remccl/unionfind.hpp"

namespace remccl {

/// Wall-clock milliseconds spent in each pipeline phase.
struct PhaseTimes {
  double scan_ms = 0;
  double merge_ms = 0;  // boundary merge; zero for sequential pipelines
  double flatten_ms = 0;
  double relabel_ms = 0;

  [[nodiscard]] double total_ms() const noexcept {
    return scan_ms + merge_ms + flatten_ms + relabel_ms;
  }
};

struct LabelResult {
  LabelGrid labels;
  Label components = 0;
  PhaseTimes phases;
};

/// Replaces every positive label l by table.parent(l). Run after flatten.
void relabel(LabelGrid& labels, const EquivalenceTable& table);

/// Relabels rows [first, last) only.
void relabel_rows(LabelGrid& labels, const EquivalenceTable& table,
                  std::size_t first, std::size_t last);

/// Decision-tree scan, flatten, relabel. Labels are numbered by first pixel
/// in raster order. Throws std::invalid_argument for an empty image.
LabelResult label_cclremsp(const BinaryImage& image);

/// Two-line scan, flatten, relabel. Labels are numbered by first pixel in
/// row-pair order (column-major inside each pair of rows).
LabelResult label_aremsp(const BinaryImage& image);

}  // namespace remccl
