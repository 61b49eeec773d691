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

// Netpbm input (PBM P1/P4, PGM P2/P5), label map output (16-bit PGM, CSV),
// and synthetic image generators.
//
// Polarity: in PBM a 1 bit is black. Objects are white (1) in BinaryImage,
// so PBM bits are inverted on read and write unless told otherwise.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "remccl/raster.hpp"

namespace remccl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset)
      : std::runtime_error(message + " at byte " + std::to_string(offset)),
        message_(std::move(message)),
        offset_(offset) {}

  /// Description without the offset suffix.
  [[nodiscard]] const std::string& message() const noexcept {
    return message_;
  }
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::string message_;
  std::size_t offset_;
};

class FormatOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrayImage {
  Raster<std::uint16_t> pixels;
  std::uint16_t maxval = 255;
};

using PnmImage = std::variant<BinaryImage, GrayImage>;

struct PnmOptions {
  bool invert_pbm = true;
};

/// Decodes a PBM or PGM byte stream. Throws ParseError with the offending
/// byte offset for a bad magic, header, or truncated/invalid raster.
PnmImage read_pnm(std::string_view bytes, PnmOptions options = {});

/// Reads a whole file and decodes it. ParseError messages carry the path.
PnmImage read_pnm_file(const std::filesystem::path& path,
                       PnmOptions options = {});

/// pixel -> 1 iff gray > level * maxval. Throws std::invalid_argument for a
/// level outside [0, 1].
BinaryImage threshold(const GrayImage& gray, double level = 0.5);

/// Passes a BinaryImage through, thresholds a GrayImage.
BinaryImage to_binary(const PnmImage& image, double level = 0.5);

/// Raw PBM (P4), rows packed MSB first and padded to a byte.
std::string write_pbm(const BinaryImage& image, bool invert = true);

enum class LabelFormat { kPgm16, kCsv };

/// kPgm16: "P5 <w> <h> 65535\n" then big-endian 16-bit labels.
/// kCsv: one line per row, labels separated by commas.
/// Throws FormatOverflow when a label exceeds 65535 in kPgm16.
std::string write_labels(const LabelGrid& labels, LabelFormat format);

enum class GeneratorKind { kRandom, kCheckerboard, kStripes, kBlocks };

/// Synthetic images:
///   random        pixel (y, x) in raster order is 1 iff the next
///                 Xorshift64Star(seed).next_unit() < density
///   checkerboard  1 iff (x + y) is even
///   stripes       horizontal bands: 1 iff 2 * (y mod period) < period
///   blocks        block x block squares separated by one background line:
///                 1 iff y mod (block + 1) < block and x mod (block + 1) < block
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kRandom;
  std::size_t width = 0;
  std::size_t height = 0;
  double density = 0.5;
  std::uint64_t seed = 1;
  std::size_t period = 2;
  std::size_t block = 4;
};

/// Throws std::invalid_argument for zero dimensions, density outside [0, 1],
/// or a zero period/block size.
BinaryImage generate(const GeneratorSpec& spec);

/// Parses "kind:WxH[:param[:seed]]", e.g. "random:512x512:0.3:7",
/// "checkerboard:64x64", "stripes:64x64:4", "blocks:64x64:3".
/// Throws std::invalid_argument on malformed input.
GeneratorSpec parse_generator_spec(std::string_view text);

}  // namespace remccl
