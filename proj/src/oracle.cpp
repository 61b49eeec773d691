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

#include "remccl/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <utility>
#include <vector>

namespace remccl {

OracleResult flood_fill_label(const BinaryImage& image) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  OracleResult out{LabelGrid(w, h), 0};

  std::deque<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (image(r, c) == 0 || out.labels(r, c) != 0) continue;
      const Label id = ++out.components;
      out.labels(r, c) = id;
      queue.emplace_back(r, c);
      while (!queue.empty()) {
        const auto [y, x] = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dy == 0 && dx == 0) continue;
            // Unsigned wrap-around puts out-of-range neighbours past w / h.
            const std::size_t ny = y + static_cast<std::size_t>(dy);
            const std::size_t nx = x + static_cast<std::size_t>(dx);
            if (ny >= h || nx >= w) continue;
            if (image(ny, nx) == 0 || out.labels(ny, nx) != 0) continue;
            out.labels(ny, nx) = id;
            queue.emplace_back(ny, nx);
          }
        }
      }
    }
  }
  return out;
}

LabelGrid canonicalize(const LabelGrid& labels) {
  LabelGrid out(labels.width(), labels.height());
  auto src = labels.data();
  auto dst = out.data();
  Label max_label = 0;
  for (Label v : src) max_label = std::max(max_label, v);
  std::vector<Label> remap(static_cast<std::size_t>(max_label) + 1, 0);
  Label next = 1;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Label v = src[i];
    if (v == 0) continue;
    if (remap[v] == 0) remap[v] = next++;
    dst[i] = remap[v];
  }
  return out;
}

bool partitions_equal(const LabelGrid& a, const LabelGrid& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("partitions_equal: dimension mismatch");
  }
  return canonicalize(a) == canonicalize(b);
}

bool labels_are_consecutive(const LabelGrid& labels, Label components) {
  std::vector<bool> seen(static_cast<std::size_t>(components) + 1, false);
  for (Label v : labels.data()) {
    if (v == 0) continue;
    if (v > components) return false;
    seen[v] = true;
  }
  for (Label i = 1; i <= components; ++i) {
    if (!seen[i]) return false;
  }
  return true;
}

}  // namespace remccl
