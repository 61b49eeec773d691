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

// Reference labeling by breadth-first flood fill and helpers for comparing
// labelings as partitions. Slow and simple on purpose; it shares no code
// with the union-find pipelines.

#pragma once

#include "remccl/raster.hpp"

namespace remccl {

struct OracleResult {
  LabelGrid labels;
  Label components = 0;
};

/// 8-connected flood fill. Components are numbered 1..C in raster order of
/// their first pixel, so the result is already canonical.
OracleResult flood_fill_label(const BinaryImage& image);

/// Renumbers positive labels 1, 2, ... by first raster-order occurrence.
/// Background stays 0. Idempotent.
LabelGrid canonicalize(const LabelGrid& labels);

/// True iff both grids induce the same partition (same canonical form).
/// Throws std::invalid_argument if the dimensions differ.
bool partitions_equal(const LabelGrid& a, const LabelGrid& b);

/// True iff the positive labels present are exactly {1..components}.
bool labels_are_consecutive(const LabelGrid& labels, Label components);

}  // namespace remccl
