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

#include <doctest.h>

#include <vector>

#include "remccl/labeling.hpp"
#include "remccl/oracle.hpp"
#include "remccl/parallel.hpp"
#include "support.hpp"

using remccl::BinaryImage;
using remccl::Chunk;
using remccl::EquivalenceTable;
using remccl::Label;
using remccl::LabelGrid;
using remccl::LockTable;
using remccl::ParallelOptions;
using remccl::partition_rows;
using remccl::RowRange;
using remccl::testing::image_from_rows;
using remccl::testing::parents_of;
using remccl::testing::random_image;

namespace {

// Chunks scanned one after another on this thread, each from its own base.
struct ChunkScan {
  remccl::ChunkPartition part;
  LabelGrid labels;
  EquivalenceTable table;
};

ChunkScan scan_chunks(const BinaryImage& img, std::size_t workers) {
  ChunkScan s{partition_rows(img.height(), workers, img.width()),
              LabelGrid(img.width(), img.height()), EquivalenceTable(img.size())};
  for (const Chunk& c : s.part.chunks) {
    remccl::scan_aremsp(img, s.labels, s.table,
                        remccl::PairRange{c.rows.first / 2,
                                          remccl::pair_slots(c.rows.last)},
                        c.label_base + 1);
  }
  return s;
}

LabelGrid roots(const ChunkScan& s) {
  LabelGrid out(s.labels.width(), s.labels.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Label v = s.labels.data()[i];
    out.data()[i] = v == 0 ? 0 : s.table.find_root(v);
  }
  return out;
}

}  // namespace

TEST_CASE("partition_rows examples") {
  SUBCASE("even split") {
    const auto p = partition_rows(8, 2, 4);
    REQUIRE(p.workers() == 2);
    CHECK(p.chunks[0] == Chunk{RowRange{0, 4}, 0});
    CHECK(p.chunks[1] == Chunk{RowRange{4, 8}, 16});
  }
  SUBCASE("workers capped at the pair count") {
    const auto p = partition_rows(6, 4, 3);
    CHECK(p.workers() == 3);
  }
  SUBCASE("odd trailing row joins the last chunk") {
    const auto p = partition_rows(7, 2, 2);
    REQUIRE(p.workers() == 2);
    CHECK(p.chunks[0].rows.first == 0);
    CHECK(p.chunks[0].rows.last == 4);
    CHECK(p.chunks[1].rows.first == 4);
    CHECK(p.chunks[1].rows.last == 7);
  }
  SUBCASE("single row") {
    const auto p = partition_rows(1, 8, 5);
    REQUIRE(p.workers() == 1);
    CHECK(p.chunks[0] == Chunk{RowRange{0, 1}, 0});
  }
  SUBCASE("zero arguments") {
    CHECK_THROWS_AS(partition_rows(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(partition_rows(1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(partition_rows(1, 1, 0), std::invalid_argument);
  }
}

TEST_CASE("property: partitions cover rows with increasing bases") {
  for (std::size_t h = 1; h <= 40; ++h) {
    for (std::size_t w : {1u, 3u}) {
      for (std::size_t n = 1; n <= 9; ++n) {
        const auto p = partition_rows(h, n, w);
        REQUIRE(p.workers() == std::min(n, std::max<std::size_t>(1, h / 2)));
        std::size_t row = 0;
        std::size_t min_pairs = h, max_pairs = 0;
        for (std::size_t i = 0; i < p.workers(); ++i) {
          const auto& c = p.chunks[i];
          REQUIRE(c.rows.first == row);
          REQUIRE(c.rows.last > c.rows.first);
          REQUIRE(c.label_base == c.rows.first * w);
          if (i + 1 < p.workers()) REQUIRE((c.rows.last - c.rows.first) % 2 == 0);
          const std::size_t pairs = (c.rows.last - c.rows.first) / 2;
          min_pairs = std::min(min_pairs, pairs);
          max_pairs = std::max(max_pairs, pairs);
          row = c.rows.last;
        }
        REQUIRE(row == h);
        REQUIRE(max_pairs - min_pairs <= 1);
      }
    }
  }
}

TEST_CASE("boundary merge examples") {
  SUBCASE("vertical bar across the boundary") {
    const auto img = image_from_rows(
        {"010", "010", "010", "010", "010", "010", "010", "010"});
    auto s = scan_chunks(img, 2);
    CHECK(s.table.find_root(s.labels(4, 1)) != s.table.find_root(s.labels(3, 1)));
    LockTable locks(img.size());
    remccl::boundary_merge(img, s.labels, s.table, locks, s.part);
    CHECK(remccl::partitions_equal(roots(s), remccl::flood_fill_label(img).labels));
  }
  SUBCASE("background boundary row leaves the table alone") {
    const auto img = image_from_rows({"11", "11", "00", "11"});
    auto s = scan_chunks(img, 2);
    const auto before = parents_of(s.table);
    LockTable locks(img.size());
    remccl::boundary_merge(img, s.labels, s.table, locks, s.part);
    CHECK(parents_of(s.table) == before);
  }
  SUBCASE("diagonal contact through a") {
    const auto img = image_from_rows({"0000", "1000", "0100", "0000"});
    auto s = scan_chunks(img, 2);
    LockTable locks(img.size());
    remccl::boundary_merge(img, s.labels, s.table, locks, s.part);
    CHECK(s.table.find_root(s.labels(2, 1)) == s.table.find_root(s.labels(1, 0)));
    CHECK(remccl::partitions_equal(roots(s), remccl::flood_fill_label(img).labels));
  }
  SUBCASE("diagonal contact through c") {
    const auto img = image_from_rows({"0000", "0010", "0100", "0000"});
    auto s = scan_chunks(img, 2);
    LockTable locks(img.size());
    remccl::boundary_merge(img, s.labels, s.table, locks, s.part);
    CHECK(remccl::partitions_equal(roots(s), remccl::flood_fill_label(img).labels));
  }
  SUBCASE("chunk 0 has no boundary row") {
    const auto img = image_from_rows({"1", "1", "1", "1"});
    auto s = scan_chunks(img, 2);
    LockTable locks(img.size());
    CHECK_THROWS_AS(
        remccl::merge_boundary_row(s.labels, s.table, locks, s.part, 0),
        std::out_of_range);
  }
}

TEST_CASE("label_paremsp examples") {
  SUBCASE("one worker equals the sequential pipeline") {
    const auto img = random_image(50, 37, 0.5, 9);
    const auto seq = remccl::label_aremsp(img);
    const auto par = remccl::label_paremsp(img, 1);
    CHECK(par.labels == seq.labels);
    CHECK(par.components == seq.components);
  }
  SUBCASE("64x64 across worker counts") {
    const auto img = random_image(64, 64, 0.5, 64);
    const auto seq = remccl::label_aremsp(img);
    const auto o = remccl::flood_fill_label(img);
    for (std::size_t w : {2u, 3u, 4u, 8u}) {
      CAPTURE(w);
      const auto par = remccl::label_paremsp(img, w);
      CHECK(par.labels == seq.labels);
      CHECK(par.components == o.components);
    }
  }
  SUBCASE("all foreground") {
    const BinaryImage img(16, 16, std::vector<std::uint8_t>(256, 1));
    CHECK(remccl::label_paremsp(img, 4).components == 1);
  }
  SUBCASE("zero workers") {
    CHECK_THROWS_AS(remccl::label_paremsp(BinaryImage(2, 2), 0),
                    std::invalid_argument);
  }
  SUBCASE("empty image") {
    CHECK_THROWS_AS(remccl::label_paremsp(BinaryImage(), 2),
                    std::invalid_argument);
  }
}

TEST_CASE("property: parallel output equals sequential, any schedule") {
  std::uint64_t seed = 1;
  for (std::size_t w : {1u, 5u, 31u, 100u}) {
    for (std::size_t h : {1u, 2u, 3u, 9u, 40u, 101u}) {
      for (double d : {0.1, 0.5, 0.9}) {
        const auto img = random_image(w, h, d, seed++);
        const auto seq = remccl::label_aremsp(img);
        for (std::size_t n : {2u, 3u, 4u, 7u}) {
          ParallelOptions opt;
          opt.workers = n;
          opt.jitter_seed = seed;
          opt.sequential_relabel = (seed % 2) == 0;
          const auto par = remccl::label_paremsp(img, opt);
          REQUIRE(par.labels == seq.labels);
          REQUIRE(par.components == seq.components);
        }
      }
    }
  }
}

TEST_CASE("phase times from the parallel pipeline") {
  const auto r = remccl::label_paremsp(random_image(300, 300, 0.5, 1), 3);
  CHECK(r.phases.scan_ms >= 0);
  CHECK(r.phases.merge_ms >= 0);
  CHECK(r.phases.flatten_ms >= 0);
  CHECK(r.phases.relabel_ms >= 0);
}
