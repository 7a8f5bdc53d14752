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

#include "docseg/rlsa.hpp"

#include <stdexcept>
#include <string>

namespace docseg {

namespace {

// Fill the white run ending just before `end` if it is short enough.
// `begin` is the index one past the previous black pixel (or the line start).
template <class Get, class Set>
void smear_line(int length, int threshold, Get get, Set set) {
    int run_begin = 0;
    for (int i = 0; i <= length; ++i) {
        bool black = i < length ? get(i) != 0 : true; // virtual terminator
        if (black) {
            int run_len = i - run_begin;
            if (run_len > 0 && run_len <= threshold)
                for (int j = run_begin; j < i; ++j) set(j);
            run_begin = i + 1;
        }
    }
}

} // namespace

BinaryImage smear_rows(const BinaryImage& img, int threshold) {
    BinaryImage out = img;
    for (int r = 0; r < img.height; ++r) {
        const std::uint8_t* in_row = img.pixels.data() + static_cast<std::size_t>(r) * img.width;
        std::uint8_t* out_row = out.pixels.data() + static_cast<std::size_t>(r) * img.width;
        smear_line(
            img.width, threshold, [&](int i) { return in_row[i]; },
            [&](int i) { out_row[i] = 1; });
    }
    return out;
}

BinaryImage smear_cols(const BinaryImage& img, int threshold) {
    BinaryImage out = img;
    for (int c = 0; c < img.width; ++c) {
        smear_line(
            img.height, threshold, [&](int i) { return img.at(i, c); },
            [&](int i) { out.at(i, c) = 1; });
    }
    return out;
}

BinaryImage and_combine(const BinaryImage& a, const BinaryImage& b) {
    if (!same_dims(a, b))
        throw std::invalid_argument(
            "and_combine: dimension mismatch " + std::to_string(a.width) + "x" +
            std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
            std::to_string(b.height));
    BinaryImage out = a;
    for (std::size_t i = 0; i < out.pixels.size(); ++i)
        out.pixels[i] = a.pixels[i] & b.pixels[i];
    return out;
}

BinaryImage rlsa_segment(const BinaryImage& img, const RlsaParams& p) {
    BinaryImage combined =
        and_combine(smear_rows(img, p.h_threshold), smear_cols(img, p.v_threshold));
    return smear_rows(combined, p.final_threshold);
}

} // namespace docseg
