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

// Rem's union-find with splicing over a flat parent array.
//
// Labels are 1-based; slot 0 is reserved for background and unassigned
// slots hold 0. Every assigned label i satisfies 1 <= p[i] <= i, so the root
// of a tree is always the smallest label in it.

#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "remccl/raster.hpp"

namespace remccl {

class CapacityExhausted : public std::length_error {
 public:
  using std::length_error::length_error;
};

namespace detail {

/// Sequential Rem merge with splicing. Both labels must be assigned.
/// Returns p[root_x] at loop exit, which is in the united class but is not
/// necessarily its root.
inline Label rem_merge(Label* p, Label x, Label y) noexcept {
  Label rx = x;
  Label ry = y;
  while (p[rx] != p[ry]) {
    if (p[rx] > p[ry]) {
      if (rx == p[rx]) {
        p[rx] = p[ry];
        return p[rx];
      }
      const Label z = p[rx];
      p[rx] = p[ry];
      rx = z;
    } else {
      if (ry == p[ry]) {
        p[ry] = p[rx];
        return p[rx];
      }
      const Label z = p[ry];
      p[ry] = p[rx];
      ry = z;
    }
  }
  return p[rx];
}

}  // namespace detail

/// Parent array of Rem's forest plus the next-label counter.
class EquivalenceTable {
 public:
  /// Throws std::invalid_argument if capacity is 0 or does not fit a Label.
  explicit EquivalenceTable(std::size_t capacity);

  [[nodiscard]] Label capacity() const noexcept { return capacity_; }
  /// Next unused provisional label.
  [[nodiscard]] Label count() const noexcept { return count_; }

  /// Allocates label count() and makes it a singleton root.
  Label new_label() {
    if (count_ > capacity_) {
      throw CapacityExhausted("equivalence table: all " +
                              std::to_string(capacity_) + " labels in use");
    }
    parent_[count_] = count_;
    return count_++;
  }

  /// Moves the counter forward after kernels allocated labels directly.
  void advance_count(Label next);

  [[nodiscard]] bool assigned(Label i) const noexcept {
    return i >= 1 && i <= capacity_ && parent_[i] != 0;
  }

  [[nodiscard]] Label parent(Label i) const { return parent_.at(i); }

  /// Follows parents to the root without modifying the table.
  [[nodiscard]] Label find_root(Label i) const;

  /// Rem's splicing union. Throws std::invalid_argument for an unassigned
  /// label. Single-threaded.
  Label merge(Label x, Label y);

  /// Resolves every assigned label in 1..max_label to a consecutive class id
  /// in increasing-root order, skipping unassigned slots. Returns the number
  /// of classes. Single-threaded; call after all merges.
  Label flatten(Label max_label);

  /// Slot view including the reserved slot 0.
  [[nodiscard]] std::span<const Label> slots() const noexcept {
    return parent_;
  }
  [[nodiscard]] std::span<Label> slots() noexcept { return parent_; }

  /// Raw parent pointer for the scan kernels.
  [[nodiscard]] Label* data() noexcept { return parent_.data(); }
  [[nodiscard]] const Label* data() const noexcept { return parent_.data(); }

 private:
  Label capacity_;
  Label count_ = 1;
  std::vector<Label> parent_;
};

/// Mutexes guarding root re-parenting in merger().
///
/// When capacity + 1 <= kMaxShards there is one lock per label slot.
/// Otherwise label i maps to lock (i mod kMaxShards); the protocol
/// re-verifies root-ness under the lock, so sharing a lock between slots
/// only adds contention.
class LockTable {
 public:
  static constexpr std::size_t kMaxShards = 65536;

  explicit LockTable(std::size_t capacity);

  [[nodiscard]] std::size_t shard_count() const noexcept { return shards_; }
  [[nodiscard]] std::size_t shard_of(Label i) const noexcept {
    return i % shards_;
  }
  [[nodiscard]] std::mutex& lock_for(Label i) noexcept {
    return locks_[shard_of(i)];
  }

 private:
  std::size_t shards_;
  std::unique_ptr<std::mutex[]> locks_;
};

/// Concurrent Rem union. Safe to call from many threads on the same table
/// as long as nobody calls new_label(), merge() or flatten() concurrently.
/// Slot reads and writes go through std::atomic_ref; a root is re-parented
/// only while holding its lock and after re-checking that it is still a
/// root.
Label merger(EquivalenceTable& table, LockTable& locks, Label x, Label y);

}  // namespace remccl
