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

#ifndef DOCSEG_BLOCKS_HPP
#define DOCSEG_BLOCKS_HPP

#include <string>
#include <vector>

#include "docseg/image.hpp"

namespace docseg {

/// Per-pixel component labels: 0 = background, components numbered 1..K in
/// raster order of first encounter.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    std::int32_t max_label = 0;

    std::int32_t at(int row, int col) const {
        return labels[static_cast<std::size_t>(row) * width + col];
    }
    bool operator==(const LabelMap&) const = default;
};

/// One labeled region of the smeared mask. ink_pixel_count counts black
/// pixels of the original page inside the bounding box, not only those
/// under the component mask.
struct Block {
    std::int32_t id = 0;
    int row_min = 0;
    int row_max = 0;
    int col_min = 0;
    int col_max = 0;
    long long mask_pixel_count = 0;
    long long ink_pixel_count = 0;

    Box box() const { return Box{row_min, row_max, col_min, col_max}; }
};

/// Two-pass union-find labeling of 8-connected black components.
LabelMap label_components(const BinaryImage& mask);

/// One Block per label, ordered by label, with tight bounding boxes.
std::vector<Block> extract_blocks(const LabelMap& lm, const BinaryImage& original);

/// Manifest JSON: array of {id,row_min,row_max,col_min,col_max,mask_pixels,ink_pixels}.
std::string blocks_manifest_json(const std::vector<Block>& blocks);
std::vector<Block> parse_blocks_manifest(const std::string& text);

} // namespace docseg

#endif
