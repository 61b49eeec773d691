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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace remccl {

/// Provisional or final component label. 0 is background.
using Label = std::uint32_t;

/// Row-major width x height grid of T. Base for the image and label rasters.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;
  Raster(std::size_t width, std::size_t height)
      : width_(width), height_(height), data_(width * height, T{}) {}
  Raster(std::size_t width, std::size_t height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != width_ * height_) {
      throw std::invalid_argument("raster: data length " +
                                  std::to_string(data_.size()) +
                                  " does not match " + std::to_string(width_) +
                                  "x" + std::to_string(height_));
    }
  }

  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] std::size_t height() const noexcept { return height_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  [[nodiscard]] T operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * width_ + col];
  }
  [[nodiscard]] T& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * width_ + col];
  }

  [[nodiscard]] const T* row(std::size_t r) const noexcept {
    return data_.data() + r * width_;
  }
  [[nodiscard]] T* row(std::size_t r) noexcept {
    return data_.data() + r * width_;
  }

  [[nodiscard]] std::span<const T> data() const noexcept { return data_; }
  [[nodiscard]] std::span<T> data() noexcept { return data_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

/// Binary image: 1 = object (foreground, white), 0 = background.
class BinaryImage : public Raster<std::uint8_t> {
 public:
  BinaryImage() = default;
  BinaryImage(std::size_t width, std::size_t height)
      : Raster(width, height) {}
  BinaryImage(std::size_t width, std::size_t height,
              std::vector<std::uint8_t> pixels)
      : Raster(width, height, std::move(pixels)) {
    for (auto v : data()) {
      if (v > 1) throw std::invalid_argument("binary image: pixel value > 1");
    }
  }

  [[nodiscard]] std::size_t foreground_count() const noexcept {
    std::size_t n = 0;
    for (auto v : data()) n += v;
    return n;
  }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;
};

/// Component labels; 0 = background, 1..C = component id.
class LabelGrid : public Raster<Label> {
 public:
  using Raster::Raster;

  friend bool operator==(const LabelGrid&, const LabelGrid&) = default;
};

}  // namespace remccl
