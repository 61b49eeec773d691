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

#include "remccl/scan.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace remccl {

namespace {

using detail::rem_merge;

void check_geometry(const BinaryImage& image, const LabelGrid& labels,
                    RowRange rows) {
  if (labels.width() != image.width() || labels.height() != image.height()) {
    throw std::invalid_argument("scan: label grid and image sizes differ");
  }
  if (rows.first > rows.last || rows.last > image.height()) {
    throw std::out_of_range("scan: row range [" + std::to_string(rows.first) +
                            ", " + std::to_string(rows.last) +
                            ") outside image of height " +
                            std::to_string(image.height()));
  }
}

void check_room(const EquivalenceTable& table, Label next, std::size_t pixels) {
  if (next == 0 || static_cast<std::size_t>(next) + pixels >
                       static_cast<std::size_t>(table.capacity()) + 1) {
    throw CapacityExhausted("scan: " + std::to_string(pixels) +
                            " pixels starting at label " +
                            std::to_string(next) + " overflow capacity " +
                            std::to_string(table.capacity()));
  }
}

inline Label fresh(Label* p, Label& next) noexcept {
  p[next] = next;
  return next++;
}

// --- one-line decision tree ------------------------------------------------

struct LineRows {
  const std::uint8_t* up;  // row above, or all-background
  const std::uint8_t* cur;
  const Label* lup;
  Label* lcur;
};

// Neighbours: a = up[c-1], b = up[c], c = up[c+1], d = cur[c-1].
template <bool kLeft, bool kRight>
inline void ccl_step(const LineRows& r, std::size_t x, Label* p, Label& next) {
  if (!r.cur[x]) return;
  if (r.up[x]) {
    r.lcur[x] = p[r.lup[x]];  // copy(b)
    return;
  }
  if (kRight && r.up[x + 1]) {
    if (kLeft && r.up[x - 1]) {
      r.lcur[x] = rem_merge(p, r.lup[x + 1], r.lup[x - 1]);  // copy(c, a)
    } else if (kLeft && r.cur[x - 1]) {
      r.lcur[x] = rem_merge(p, r.lup[x + 1], r.lcur[x - 1]);  // copy(c, d)
    } else {
      r.lcur[x] = p[r.lup[x + 1]];  // copy(c)
    }
    return;
  }
  if (kLeft && r.up[x - 1]) {
    r.lcur[x] = p[r.lup[x - 1]];  // copy(a)
  } else if (kLeft && r.cur[x - 1]) {
    r.lcur[x] = p[r.lcur[x - 1]];  // copy(d)
  } else {
    r.lcur[x] = fresh(p, next);
  }
}

// --- two-line, two-pixel mask ---------------------------------------------

struct PairRows {
  const std::uint8_t* up;    // row above the pair, or all-background
  const std::uint8_t* cur;   // row of e
  const std::uint8_t* down;  // row of g, or all-background
  const Label* lup;
  Label* lcur;
  Label* ldown;
};

// Neighbours: a = up[x-1], b = up[x], c = up[x+1], d = cur[x-1],
// f = down[x-1]; e = cur[x] sits over g = down[x].
template <bool kLeft, bool kRight>
inline void aremsp_step(const PairRows& r, std::size_t x, Label* p,
                        Label& next) {
  const bool g = r.down[x] != 0;
  if (r.cur[x]) {
    Label& e = r.lcur[x];
    if (!(kLeft && r.cur[x - 1])) {
      if (r.up[x]) {
        e = r.lup[x];
        if (kLeft && r.down[x - 1]) rem_merge(p, e, r.ldown[x - 1]);
      } else if (kLeft && r.down[x - 1]) {
        e = r.ldown[x - 1];
        if (r.up[x - 1]) rem_merge(p, e, r.lup[x - 1]);
        if (kRight && r.up[x + 1]) rem_merge(p, e, r.lup[x + 1]);
      } else if (kLeft && r.up[x - 1]) {
        e = r.lup[x - 1];
        if (kRight && r.up[x + 1]) rem_merge(p, e, r.lup[x + 1]);
      } else if (kRight && r.up[x + 1]) {
        e = r.lup[x + 1];
      } else {
        e = fresh(p, next);
      }
    } else {
      e = r.lcur[x - 1];
      if (!r.up[x] && kRight && r.up[x + 1]) rem_merge(p, e, r.lup[x + 1]);
    }
    if (g) r.ldown[x] = e;
  } else if (g) {
    if (kLeft && r.cur[x - 1]) {
      r.ldown[x] = r.lcur[x - 1];
    } else if (kLeft && r.down[x - 1]) {
      r.ldown[x] = r.ldown[x - 1];
    } else {
      r.ldown[x] = fresh(p, next);
    }
  }
}

// Runs Step over one row with the column-border cases peeled off.
template <template <bool, bool> class Dispatch, typename Rows>
inline void sweep(const Rows& rows, std::size_t width, Label* p, Label& next) {
  if (width == 1) {
    Dispatch<false, false>::run(rows, 0, p, next);
    return;
  }
  Dispatch<false, true>::run(rows, 0, p, next);
  for (std::size_t x = 1; x + 1 < width; ++x) {
    Dispatch<true, true>::run(rows, x, p, next);
  }
  Dispatch<true, false>::run(rows, width - 1, p, next);
}

template <bool kLeft, bool kRight>
struct CclDispatch {
  static void run(const LineRows& r, std::size_t x, Label* p, Label& next) {
    ccl_step<kLeft, kRight>(r, x, p, next);
  }
};

template <bool kLeft, bool kRight>
struct AremDispatch {
  static void run(const PairRows& r, std::size_t x, Label* p, Label& next) {
    aremsp_step<kLeft, kRight>(r, x, p, next);
  }
};

}  // namespace

Label scan_cclremsp(const BinaryImage& image, LabelGrid& labels,
                    EquivalenceTable& table, RowRange rows, Label next) {
  check_geometry(image, labels, rows);
  const std::size_t width = image.width();
  check_room(table, next, (rows.last - rows.first) * width);
  if (rows.first == rows.last || width == 0) return next;

  const std::vector<std::uint8_t> background(width, 0);
  Label* p = table.data();
  for (std::size_t y = rows.first; y < rows.last; ++y) {
    const bool has_up = y > rows.first;
    const LineRows r{
        has_up ? image.row(y - 1) : background.data(),
        image.row(y),
        has_up ? labels.row(y - 1) : nullptr,
        labels.row(y),
    };
    sweep<CclDispatch>(r, width, p, next);
  }
  return next;
}

Label scan_cclremsp(const BinaryImage& image, LabelGrid& labels,
                    EquivalenceTable& table, RowRange rows) {
  const Label next = scan_cclremsp(image, labels, table, rows, table.count());
  table.advance_count(next);
  return next;
}

Label scan_aremsp(const BinaryImage& image, LabelGrid& labels,
                  EquivalenceTable& table, PairRange pairs, Label next) {
  if (pairs.first > pairs.last || pairs.last > pair_slots(image.height())) {
    throw std::out_of_range("scan: pair range [" + std::to_string(pairs.first) +
                            ", " + std::to_string(pairs.last) +
                            ") outside image of height " +
                            std::to_string(image.height()));
  }
  const RowRange rows{2 * pairs.first,
                      std::min(2 * pairs.last, image.height())};
  check_geometry(image, labels, rows);
  const std::size_t width = image.width();
  check_room(table, next, (rows.last - rows.first) * width);
  if (rows.first == rows.last || width == 0) return next;

  const std::vector<std::uint8_t> background(width, 0);
  Label* p = table.data();
  for (std::size_t y = rows.first; y < rows.last; y += 2) {
    const bool has_up = y > rows.first;
    const bool has_down = y + 1 < rows.last;
    const PairRows r{
        has_up ? image.row(y - 1) : background.data(),
        image.row(y),
        has_down ? image.row(y + 1) : background.data(),
        has_up ? labels.row(y - 1) : nullptr,
        labels.row(y),
        has_down ? labels.row(y + 1) : nullptr,
    };
    sweep<AremDispatch>(r, width, p, next);
  }
  return next;
}

Label scan_aremsp(const BinaryImage& image, LabelGrid& labels,
                  EquivalenceTable& table, PairRange pairs) {
  const Label next = scan_aremsp(image, labels, table, pairs, table.count());
  table.advance_count(next);
  return next;
}

}  // namespace remccl
