// Copyright 2026 The docseg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DOCSEG_IMAGE_HPP
#define DOCSEG_IMAGE_HPP

#include <cstdint>
#include <cstddef>
#include <vector>

namespace docseg {

/// Row-major 8-bit grayscale raster, intensities in [0,255].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::uint8_t& at(int row, int col) {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::size_t size() const { return pixels.size(); }

    static GrayImage filled(int width, int height, std::uint8_t value) {
        GrayImage img;
        img.width = width;
        img.height = height;
        img.pixels.assign(static_cast<std::size_t>(width) * height, value);
        return img;
    }
};

/// Row-major bitmap: 1 = black ink, 0 = white background.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::uint8_t& at(int row, int col) {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::size_t size() const { return pixels.size(); }

    static BinaryImage blank(int width, int height) {
        BinaryImage img;
        img.width = width;
        img.height = height;
        img.pixels.assign(static_cast<std::size_t>(width) * height, 0);
        return img;
    }

    bool operator==(const BinaryImage&) const = default;
};

/// Inclusive pixel rectangle.
struct Box {
    int row_min = 0;
    int row_max = 0;
    int col_min = 0;
    int col_max = 0;

    int row_extent() const { return row_max - row_min + 1; }
    int col_extent() const { return col_max - col_min + 1; }
    long long area() const {
        return static_cast<long long>(row_extent()) * col_extent();
    }
    bool operator==(const Box&) const = default;
};

template <class ImgA, class ImgB>
bool same_dims(const ImgA& a, const ImgB& b) {
    return a.width == b.width && a.height == b.height;
}

} // namespace docseg

#endif
