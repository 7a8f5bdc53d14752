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

#include "docseg/blocks.hpp"

#include <stdexcept>

#include "json.hpp"

namespace docseg {

namespace {

// Union-find over provisional labels, path-halving find.
struct LabelUnion {
    std::vector<std::int32_t> parent;

    std::int32_t fresh() {
        parent.push_back(static_cast<std::int32_t>(parent.size()));
        return parent.back();
    }
    std::int32_t find(std::int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void merge(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

} // namespace

LabelMap label_components(const BinaryImage& mask) {
    LabelMap lm;
    lm.width = mask.width;
    lm.height = mask.height;
    lm.labels.assign(mask.size(), 0);

    LabelUnion uf;
    uf.fresh(); // slot 0 reserved for background

    std::vector<std::int32_t> prov(mask.size(), 0);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            if (!mask.at(r, c)) continue;
            std::size_t idx = static_cast<std::size_t>(r) * mask.width + c;
            std::int32_t label = 0;
            // 8-connectivity: west plus the three upper neighbours.
            auto adopt = [&](int rr, int cc) {
                if (rr < 0 || cc < 0 || cc >= mask.width) return;
                std::int32_t n = prov[static_cast<std::size_t>(rr) * mask.width + cc];
                if (!n) return;
                if (!label) label = n;
                else uf.merge(label, n);
            };
            adopt(r, c - 1);
            adopt(r - 1, c - 1);
            adopt(r - 1, c);
            adopt(r - 1, c + 1);
            if (!label) label = uf.fresh();
            prov[idx] = label;
        }
    }

    // Dense final labels in raster order of first encounter of each root.
    std::vector<std::int32_t> dense(uf.parent.size(), 0);
    std::int32_t next = 0;
    for (std::size_t i = 0; i < prov.size(); ++i) {
        if (!prov[i]) continue;
        std::int32_t root = uf.find(prov[i]);
        if (!dense[root]) dense[root] = ++next;
        lm.labels[i] = dense[root];
    }
    lm.max_label = next;
    return lm;
}

std::vector<Block> extract_blocks(const LabelMap& lm, const BinaryImage& original) {
    if (lm.width != original.width || lm.height != original.height)
        throw std::invalid_argument(
            "extract_blocks: label map " + std::to_string(lm.width) + "x" +
            std::to_string(lm.height) + " vs original " +
            std::to_string(original.width) + "x" + std::to_string(original.height));

    std::vector<Block> blocks(lm.max_label);
    for (std::int32_t k = 0; k < lm.max_label; ++k) {
        blocks[k].id = k + 1;
        blocks[k].row_min = lm.height;
        blocks[k].col_min = lm.width;
        blocks[k].row_max = -1;
        blocks[k].col_max = -1;
    }
    for (int r = 0; r < lm.height; ++r) {
        for (int c = 0; c < lm.width; ++c) {
            std::int32_t label = lm.at(r, c);
            if (!label) continue;
            Block& b = blocks[label - 1];
            b.mask_pixel_count++;
            if (r < b.row_min) b.row_min = r;
            if (r > b.row_max) b.row_max = r;
            if (c < b.col_min) b.col_min = c;
            if (c > b.col_max) b.col_max = c;
        }
    }
    for (Block& b : blocks) {
        for (int r = b.row_min; r <= b.row_max; ++r)
            for (int c = b.col_min; c <= b.col_max; ++c)
                b.ink_pixel_count += original.at(r, c);
    }
    return blocks;
}

std::string blocks_manifest_json(const std::vector<Block>& blocks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Block& b : blocks) {
        arr.push_back({{"id", b.id},
                       {"row_min", b.row_min},
                       {"row_max", b.row_max},
                       {"col_min", b.col_min},
                       {"col_max", b.col_max},
                       {"mask_pixels", b.mask_pixel_count},
                       {"ink_pixels", b.ink_pixel_count}});
    }
    return arr.dump(2) + "\n";
}

std::vector<Block> parse_blocks_manifest(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<Block> blocks;
    for (const auto& j : arr) {
        Block b;
        b.id = j.at("id").get<std::int32_t>();
        b.row_min = j.at("row_min").get<int>();
        b.row_max = j.at("row_max").get<int>();
        b.col_min = j.at("col_min").get<int>();
        b.col_max = j.at("col_max").get<int>();
        b.mask_pixel_count = j.at("mask_pixels").get<long long>();
        b.ink_pixel_count = j.at("ink_pixels").get<long long>();
        blocks.push_back(b);
    }
    return blocks;
}

} // namespace docseg
