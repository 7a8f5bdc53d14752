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

#ifndef DOCSEG_PNM_HPP
#define DOCSEG_PNM_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "docseg/image.hpp"

namespace docseg {

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decode a PGM (P2/P5, maxval 255) or PBM (P1/P4) file. PBM black bits
/// become intensity 0, white bits 255.
GrayImage decode_image(std::span<const std::uint8_t> bytes);
GrayImage decode_image(const std::string& bytes);

/// RGB raster used only for overlay output.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // interleaved r,g,b

    static RgbImage from_gray(const GrayImage& g);
};

std::string encode_pgm(const GrayImage& img, bool raw = true);
std::string encode_pbm(const BinaryImage& img, bool raw = true);
std::string encode_ppm(const RgbImage& img);

} // namespace docseg

#endif
