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

// Shared test helpers. Nothing here calls into the union-find code under
// test, so it can serve as an independent reference.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "remccl/imageio.hpp"
#include "remccl/raster.hpp"
#include "remccl/unionfind.hpp"

namespace remccl::testing {

/// Textbook union-find (union by size, path halving) used as the reference
/// partition.
class ReferenceSets {
 public:
  explicit ReferenceSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Table whose slots 1..n hold `parents` (0 = unassigned); count = n + 1.
inline EquivalenceTable table_from(std::initializer_list<Label> parents) {
  EquivalenceTable t(parents.size());
  Label i = 1;
  for (Label v : parents) t.slots()[i++] = v;
  t.advance_count(static_cast<Label>(parents.size() + 1));
  return t;
}

/// Slots 1..capacity as a vector, for comparisons.
inline std::vector<Label> parents_of(const EquivalenceTable& t) {
  auto s = t.slots();
  return {s.begin() + 1, s.end()};
}

inline BinaryImage image_from_rows(std::initializer_list<std::string> rows) {
  const std::size_t h = rows.size();
  const std::size_t w = h == 0 ? 0 : rows.begin()->size();
  std::vector<std::uint8_t> px;
  for (const auto& r : rows) {
    for (char ch : r) px.push_back(ch == '1' ? 1 : 0);
  }
  return BinaryImage(w, h, std::move(px));
}

inline BinaryImage random_image(std::size_t w, std::size_t h, double density,
                                std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::kRandom;
  spec.width = w;
  spec.height = h;
  spec.density = density;
  spec.seed = seed;
  return generate(spec);
}

/// Pixel positions in the two-line scan order: pair by pair, column by
/// column, upper pixel before lower.
inline std::vector<std::size_t> pair_scan_order(std::size_t w, std::size_t h) {
  std::vector<std::size_t> order;
  order.reserve(w * h);
  for (std::size_t y = 0; y < h; y += 2) {
    for (std::size_t x = 0; x < w; ++x) {
      order.push_back(y * w + x);
      if (y + 1 < h) order.push_back((y + 1) * w + x);
    }
  }
  return order;
}

inline std::vector<std::size_t> raster_order(std::size_t w, std::size_t h) {
  std::vector<std::size_t> order(w * h);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

/// Renumbers labels 1..C by first occurrence along `order`.
inline LabelGrid canonical_in_order(const LabelGrid& labels,
                                    const std::vector<std::size_t>& order) {
  LabelGrid out(labels.width(), labels.height());
  std::vector<Label> remap;
  Label next = 1;
  for (std::size_t i : order) {
    const Label v = labels.data()[i];
    if (v == 0) continue;
    if (remap.size() <= v) remap.resize(v + 1, 0);
    if (remap[v] == 0) remap[v] = next++;
    out.data()[i] = remap[v];
  }
  return out;
}

/// New labels appear in increasing order 1, 2, 3, ... along `order`.
inline bool first_touch_increasing(const LabelGrid& labels,
                                   const std::vector<std::size_t>& order,
                                   Label first = 1) {
  Label max_seen = first - 1;
  for (std::size_t i : order) {
    const Label v = labels.data()[i];
    if (v == 0 || v <= max_seen) continue;
    if (v != max_seen + 1) return false;
    max_seen = v;
  }
  return true;
}

}  // namespace remccl::testing
