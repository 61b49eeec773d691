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

#include "remccl/labeling.hpp"

#include <chrono>
#include <stdexcept>

#include "remccl/scan.hpp"

namespace remccl {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

void require_nonempty(const BinaryImage& image) {
  if (image.empty()) {
    throw std::invalid_argument("labeling: image has zero pixels");
  }
}

template <typename Scan>
LabelResult run_pipeline(const BinaryImage& image, Scan&& scan) {
  require_nonempty(image);
  LabelResult out;
  out.labels = LabelGrid(image.width(), image.height());
  EquivalenceTable table(image.size());

  const auto t0 = Clock::now();
  scan(out.labels, table);
  const auto t1 = Clock::now();
  out.components = table.flatten(table.count() - 1);
  const auto t2 = Clock::now();
  relabel(out.labels, table);
  const auto t3 = Clock::now();

  out.phases.scan_ms = ms_between(t0, t1);
  out.phases.flatten_ms = ms_between(t1, t2);
  out.phases.relabel_ms = ms_between(t2, t3);
  return out;
}

}  // namespace

void relabel_rows(LabelGrid& labels, const EquivalenceTable& table,
                  std::size_t first, std::size_t last) {
  const Label* p = table.data();
  const std::size_t width = labels.width();
  for (std::size_t y = first; y < last; ++y) {
    Label* row = labels.row(y);
    for (std::size_t x = 0; x < width; ++x) {
      row[x] = p[row[x]];  // p[0] == 0 keeps background
    }
  }
}

void relabel(LabelGrid& labels, const EquivalenceTable& table) {
  relabel_rows(labels, table, 0, labels.height());
}

LabelResult label_cclremsp(const BinaryImage& image) {
  return run_pipeline(image, [&](LabelGrid& labels, EquivalenceTable& table) {
    scan_cclremsp(image, labels, table, RowRange{0, image.height()});
  });
}

LabelResult label_aremsp(const BinaryImage& image) {
  return run_pipeline(image, [&](LabelGrid& labels, EquivalenceTable& table) {
    scan_aremsp(image, labels, table, PairRange{0, pair_slots(image.height())});
  });
}

}  // namespace remccl
