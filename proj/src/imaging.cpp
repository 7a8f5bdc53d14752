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

#include "docseg/imaging.hpp"

#include <array>
#include <cstdint>

#include "docseg/blocks.hpp"

namespace docseg {

int otsu_threshold(const GrayImage& img) {
    std::array<long long, 256> hist{};
    for (std::uint8_t v : img.pixels) hist[v]++;

    long long total = static_cast<long long>(img.size());
    long long total_sum = 0;
    for (int v = 0; v < 256; ++v) total_sum += static_cast<long long>(v) * hist[v];

    int lo = 0, hi = 255;
    while (lo < 255 && hist[lo] == 0) ++lo;
    while (hi > 0 && hist[hi] == 0) --hi;
    if (lo == hi) return lo > 0 ? lo - 1 : 0; // constant image

    double best_var = -1.0;
    int best_t = 0;
    long long n0 = 0, s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += hist[t];
        s0 += static_cast<long long>(t) * hist[t];
        long long n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;
        long long s1 = total_sum - s0;
        double mu0 = static_cast<double>(s0) / static_cast<double>(n0);
        double mu1 = static_cast<double>(s1) / static_cast<double>(n1);
        double d = mu0 - mu1;
        double var = static_cast<double>(n0) * static_cast<double>(n1) * d * d;
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t;
}

BinaryImage binarize(const GrayImage& img, int t) {
    BinaryImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        out.pixels[i] = img.pixels[i] <= t ? 1 : 0;
    return out;
}

BinaryImage despeckle(const BinaryImage& img, long max_noise_area) {
    if (max_noise_area <= 0) return img;
    LabelMap lm = label_components(img);
    std::vector<long long> area(static_cast<std::size_t>(lm.max_label) + 1, 0);
    for (std::int32_t label : lm.labels) area[label]++;
    BinaryImage out = img;
    for (std::size_t i = 0; i < out.pixels.size(); ++i)
        if (out.pixels[i] && area[lm.labels[i]] <= max_noise_area) out.pixels[i] = 0;
    return out;
}

} // namespace docseg
