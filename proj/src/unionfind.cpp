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

#include "remccl/unionfind.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

namespace remccl {

namespace {

Label checked_capacity(std::size_t capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("equivalence table: capacity must be >= 1");
  }
  // count() may reach capacity + 1.
  if (capacity >= std::numeric_limits<Label>::max()) {
    throw std::invalid_argument("equivalence table: capacity " +
                                std::to_string(capacity) +
                                " exceeds the label range");
  }
  return static_cast<Label>(capacity);
}

void require_assigned(const EquivalenceTable& t, Label x, const char* what) {
  if (!t.assigned(x)) {
    throw std::invalid_argument(std::string(what) + ": label " +
                                std::to_string(x) + " is not assigned");
  }
}

}  // namespace

EquivalenceTable::EquivalenceTable(std::size_t capacity)
    : capacity_(checked_capacity(capacity)),
      parent_(static_cast<std::size_t>(capacity_) + 1, 0) {}

void EquivalenceTable::advance_count(Label next) {
  if (next < count_ || next > capacity_ + 1) {
    throw std::invalid_argument("equivalence table: counter " +
                                std::to_string(next) + " out of range");
  }
  count_ = next;
}

Label EquivalenceTable::find_root(Label i) const {
  require_assigned(*this, i, "find_root");
  while (parent_[i] != i) i = parent_[i];
  return i;
}

Label EquivalenceTable::merge(Label x, Label y) {
  require_assigned(*this, x, "merge");
  require_assigned(*this, y, "merge");
  return detail::rem_merge(parent_.data(), x, y);
}

Label EquivalenceTable::flatten(Label max_label) {
  const Label last = std::min(max_label, capacity_);
  Label* p = parent_.data();
  Label k = 1;
  for (Label i = 1; i <= last; ++i) {
    if (p[i] == 0) continue;
    if (p[i] < i) {
      p[i] = p[p[i]];
    } else {
      p[i] = k++;
    }
  }
  return k - 1;
}

LockTable::LockTable(std::size_t capacity)
    : shards_(std::min(capacity + 1, kMaxShards)),
      locks_(std::make_unique<std::mutex[]>(shards_)) {}

Label merger(EquivalenceTable& table, LockTable& locks, Label x, Label y) {
  Label* p = table.data();
  const auto load = [p](Label i) {
    return std::atomic_ref<Label>(p[i]).load(std::memory_order_acquire);
  };
  const auto store = [p](Label i, Label v) {
    std::atomic_ref<Label>(p[i]).store(v, std::memory_order_release);
  };
  for (Label v : {x, y}) {
    if (v == 0 || v > table.capacity() || load(v) == 0) {
      throw std::invalid_argument("merger: label " + std::to_string(v) +
                                  " is not assigned");
    }
  }

  Label rx = x;
  Label ry = y;
  for (;;) {
    const Label px = load(rx);
    const Label py = load(ry);
    if (px == py) break;
    if (px > py) {
      if (rx == px) {
        bool success = false;
        {
          std::lock_guard guard(locks.lock_for(rx));
          if (load(rx) == rx) {
            store(rx, py);
            success = true;
          }
        }
        if (success) break;
        // rx stopped being a root; start over from the same position.
        continue;
      }
      // Splice: py < px < rx, so the store keeps p[rx] < rx.
      store(rx, py);
      rx = px;
    } else {
      if (ry == py) {
        bool success = false;
        {
          std::lock_guard guard(locks.lock_for(ry));
          if (load(ry) == ry) {
            store(ry, px);
            success = true;
          }
        }
        if (success) break;
        continue;
      }
      store(ry, px);
      ry = py;
    }
  }
  return load(rx);
}

}  // namespace remccl
