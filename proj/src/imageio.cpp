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

#include "remccl/imageio.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <vector>

#include "remccl/prng.hpp"

namespace remccl {

namespace {

bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' ||
         ch == '\f';
}

bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  [[nodiscard]] std::size_t pos() const { return pos_; }
  [[nodiscard]] std::size_t remaining() const { return bytes_.size() - pos_; }
  [[nodiscard]] bool at_end() const { return pos_ >= bytes_.size(); }

  void skip_space_and_comments() {
    while (!at_end()) {
      const char ch = bytes_[pos_];
      if (is_space(ch)) {
        ++pos_;
      } else if (ch == '#') {
        while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else {
        return;
      }
    }
  }

  // Header integer in [lo, hi], preceded by optional whitespace/comments.
  std::uint64_t header_int(const char* what, std::uint64_t lo,
                           std::uint64_t hi) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    if (at_end() || !is_digit(bytes_[pos_])) {
      throw ParseError(std::string("expected ") + what, start);
    }
    std::uint64_t value = 0;
    const char* first = bytes_.data() + pos_;
    const char* last = first;
    while (last != bytes_.data() + bytes_.size() && is_digit(*last)) ++last;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || value < lo || value > hi) {
      throw ParseError(std::string("invalid ") + what, start);
    }
    pos_ += static_cast<std::size_t>(last - first);
    return value;
  }

  // Single whitespace byte separating the header from a binary raster.
  void raster_separator() {
    if (at_end() || !is_space(bytes_[pos_])) {
      throw ParseError("expected whitespace before raster", pos_);
    }
    ++pos_;
  }

  std::uint8_t byte() {
    if (at_end()) throw ParseError("truncated raster", pos_);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }

  char peek() const { return bytes_[pos_]; }
  void advance() { ++pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

constexpr std::uint64_t kMaxDimension = 1u << 30;
// Every pixel must be able to hold its own provisional label.
constexpr std::uint64_t kMaxPixels = std::numeric_limits<Label>::max() - 1;

void check_pixel_count(std::uint64_t width, std::uint64_t height,
                       std::size_t header_end) {
  if (width * height > kMaxPixels) {
    throw ParseError("image of " + std::to_string(width) + "x" +
                         std::to_string(height) + " pixels is too large",
                     header_end);
  }
}

BinaryImage read_pbm(Reader& in, bool ascii, bool invert) {
  const auto width = in.header_int("width", 1, kMaxDimension);
  const auto height = in.header_int("height", 1, kMaxDimension);
  check_pixel_count(width, height, in.pos());
  std::vector<std::uint8_t> pixels(width * height);
  const std::uint8_t flip = invert ? 1 : 0;

  if (ascii) {
    for (auto& px : pixels) {
      in.skip_space_and_comments();
      if (in.at_end()) throw ParseError("truncated raster", in.pos());
      const char ch = in.peek();
      if (ch != '0' && ch != '1') {
        throw ParseError("invalid PBM sample", in.pos());
      }
      px = static_cast<std::uint8_t>((ch - '0') ^ flip);
      in.advance();
    }
  } else {
    in.raster_separator();
    const std::size_t stride = (width + 7) / 8;
    if (in.remaining() < stride * height) {
      throw ParseError("truncated raster", in.pos() + in.remaining());
    }
    for (std::size_t y = 0; y < height; ++y) {
      std::uint8_t bits = 0;
      for (std::size_t x = 0; x < width; ++x) {
        if (x % 8 == 0) bits = in.byte();
        const auto bit = static_cast<std::uint8_t>((bits >> (7 - x % 8)) & 1);
        pixels[y * width + x] = bit ^ flip;
      }
    }
  }
  return BinaryImage(width, height, std::move(pixels));
}

GrayImage read_pgm(Reader& in, bool ascii) {
  const auto width = in.header_int("width", 1, kMaxDimension);
  const auto height = in.header_int("height", 1, kMaxDimension);
  const auto maxval = in.header_int("maxval", 1, 65535);
  check_pixel_count(width, height, in.pos());
  std::vector<std::uint16_t> pixels(width * height);

  if (ascii) {
    for (auto& px : pixels) {
      px = static_cast<std::uint16_t>(in.header_int("PGM sample", 0, maxval));
    }
  } else {
    in.raster_separator();
    const std::size_t bytes_per = maxval < 256 ? 1 : 2;
    if (in.remaining() < bytes_per * pixels.size()) {
      throw ParseError("truncated raster", in.pos() + in.remaining());
    }
    for (auto& px : pixels) {
      const std::size_t at = in.pos();
      std::uint32_t v = in.byte();
      if (bytes_per == 2) v = (v << 8) | in.byte();
      if (v > maxval) throw ParseError("PGM sample exceeds maxval", at);
      px = static_cast<std::uint16_t>(v);
    }
  }
  return GrayImage{Raster<std::uint16_t>(width, height, std::move(pixels)),
                   static_cast<std::uint16_t>(maxval)};
}

std::size_t parse_size(std::string_view text, const char* what) {
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("generator: invalid ") + what +
                                " '" + std::string(text) + "'");
  }
  return v;
}

double parse_double(std::string_view text, const char* what) {
  // std::from_chars for double is missing from older libstdc++.
  std::istringstream in{std::string(text)};
  double v = 0;
  in >> v;
  if (!in || in.peek() != std::char_traits<char>::eof()) {
    throw std::invalid_argument(std::string("generator: invalid ") + what +
                                " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

PnmImage read_pnm(std::string_view bytes, PnmOptions options) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw ParseError("not a PBM/PGM file (bad magic)", 0);
  }
  Reader in(bytes);
  in.advance();
  in.advance();
  switch (bytes[1]) {
    case '1': return read_pbm(in, true, options.invert_pbm);
    case '4': return read_pbm(in, false, options.invert_pbm);
    case '2': return read_pgm(in, true);
    case '5': return read_pgm(in, false);
    default:
      throw ParseError(
          std::string("unsupported magic 'P") + bytes[1] + "'", 0);
  }
}

PnmImage read_pnm_file(const std::filesystem::path& path, PnmOptions options) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error(path.string() + ": cannot open");
  }
  const std::string bytes((std::istreambuf_iterator<char>(file)),
                          std::istreambuf_iterator<char>());
  try {
    return read_pnm(bytes, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.offset());
  }
}

BinaryImage threshold(const GrayImage& gray, double level) {
  if (!(level >= 0.0 && level <= 1.0)) {
    throw std::invalid_argument("threshold: level must be in [0, 1]");
  }
  const double cut = level * gray.maxval;
  const auto src = gray.pixels.data();
  std::vector<std::uint8_t> bits(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    bits[i] = src[i] > cut ? 1 : 0;
  }
  return BinaryImage(gray.pixels.width(), gray.pixels.height(),
                     std::move(bits));
}

BinaryImage to_binary(const PnmImage& image, double level) {
  if (const auto* bin = std::get_if<BinaryImage>(&image)) return *bin;
  return threshold(std::get<GrayImage>(image), level);
}

std::string write_pbm(const BinaryImage& image, bool invert) {
  std::string out = "P4\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n";
  const std::uint8_t flip = invert ? 1 : 0;
  for (std::size_t y = 0; y < image.height(); ++y) {
    std::uint8_t bits = 0;
    for (std::size_t x = 0; x < image.width(); ++x) {
      bits |= static_cast<std::uint8_t>((image(y, x) ^ flip) << (7 - x % 8));
      if (x % 8 == 7 || x + 1 == image.width()) {
        out.push_back(static_cast<char>(bits));
        bits = 0;
      }
    }
  }
  return out;
}

std::string write_labels(const LabelGrid& labels, LabelFormat format) {
  std::string out;
  if (format == LabelFormat::kPgm16) {
    for (Label v : labels.data()) {
      if (v > 65535) {
        throw FormatOverflow("pgm16: label " + std::to_string(v) +
                             " exceeds maxval 65535");
      }
    }
    out = "P5 " + std::to_string(labels.width()) + " " +
          std::to_string(labels.height()) + " 65535\n";
    out.reserve(out.size() + 2 * labels.size());
    for (Label v : labels.data()) {
      out.push_back(static_cast<char>((v >> 8) & 0xFF));
      out.push_back(static_cast<char>(v & 0xFF));
    }
    return out;
  }
  for (std::size_t y = 0; y < labels.height(); ++y) {
    const Label* row = labels.row(y);
    for (std::size_t x = 0; x < labels.width(); ++x) {
      if (x > 0) out.push_back(',');
      out += std::to_string(row[x]);
    }
    out.push_back('\n');
  }
  return out;
}

BinaryImage generate(const GeneratorSpec& spec) {
  if (spec.width == 0 || spec.height == 0) {
    throw std::invalid_argument("generate: dimensions must be >= 1");
  }
  BinaryImage image(spec.width, spec.height);
  switch (spec.kind) {
    case GeneratorKind::kRandom: {
      if (!(spec.density >= 0.0 && spec.density <= 1.0)) {
        throw std::invalid_argument("generate: density must be in [0, 1]");
      }
      Xorshift64Star rng(spec.seed);
      for (auto& px : image.data()) px = rng.next_unit() < spec.density;
      break;
    }
    case GeneratorKind::kCheckerboard:
      for (std::size_t y = 0; y < spec.height; ++y) {
        for (std::size_t x = 0; x < spec.width; ++x) {
          image(y, x) = (x + y) % 2 == 0;
        }
      }
      break;
    case GeneratorKind::kStripes:
      if (spec.period == 0) {
        throw std::invalid_argument("generate: stripe period must be >= 1");
      }
      for (std::size_t y = 0; y < spec.height; ++y) {
        const std::uint8_t v = 2 * (y % spec.period) < spec.period;
        for (std::size_t x = 0; x < spec.width; ++x) image(y, x) = v;
      }
      break;
    case GeneratorKind::kBlocks: {
      if (spec.block == 0) {
        throw std::invalid_argument("generate: block size must be >= 1");
      }
      const std::size_t cell = spec.block + 1;
      for (std::size_t y = 0; y < spec.height; ++y) {
        for (std::size_t x = 0; x < spec.width; ++x) {
          image(y, x) = y % cell < spec.block && x % cell < spec.block;
        }
      }
      break;
    }
  }
  return image;
}

GeneratorSpec parse_generator_spec(std::string_view text) {
  std::vector<std::string_view> parts;
  for (std::size_t start = 0;;) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 2) {
    throw std::invalid_argument("generator: expected kind:WxH in '" +
                                std::string(text) + "'");
  }

  GeneratorSpec spec;
  const std::string_view kind = parts[0];
  std::size_t max_parts = 2;
  if (kind == "random") {
    spec.kind = GeneratorKind::kRandom;
    max_parts = 4;
  } else if (kind == "checkerboard") {
    spec.kind = GeneratorKind::kCheckerboard;
  } else if (kind == "stripes") {
    spec.kind = GeneratorKind::kStripes;
    max_parts = 3;
  } else if (kind == "blocks") {
    spec.kind = GeneratorKind::kBlocks;
    max_parts = 3;
  } else {
    throw std::invalid_argument("generator: unknown kind '" +
                                std::string(kind) + "'");
  }
  if (parts.size() > max_parts) {
    throw std::invalid_argument("generator: too many fields in '" +
                                std::string(text) + "'");
  }

  const std::string_view dims = parts[1];
  const std::size_t x = dims.find('x');
  if (x == std::string_view::npos) {
    throw std::invalid_argument("generator: expected WxH, got '" +
                                std::string(dims) + "'");
  }
  spec.width = parse_size(dims.substr(0, x), "width");
  spec.height = parse_size(dims.substr(x + 1), "height");

  if (parts.size() >= 3) {
    switch (spec.kind) {
      case GeneratorKind::kRandom:
        spec.density = parse_double(parts[2], "density");
        break;
      case GeneratorKind::kStripes:
        spec.period = parse_size(parts[2], "period");
        break;
      case GeneratorKind::kBlocks:
        spec.block = parse_size(parts[2], "block size");
        break;
      case GeneratorKind::kCheckerboard:
        break;
    }
  }
  if (parts.size() == 4) spec.seed = parse_size(parts[3], "seed");
  return spec;
}

}  // namespace remccl
