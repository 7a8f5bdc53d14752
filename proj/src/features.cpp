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

#include "docseg/features.hpp"

#include <cmath>

namespace docseg {

std::string_view class_name(RegionClass c) {
    switch (c) {
        case RegionClass::Text: return "text";
        case RegionClass::Image: return "image";
        case RegionClass::Drawings: return "drawings";
        case RegionClass::Table: return "table";
    }
    return "?";
}

std::optional<RegionClass> class_from_name(std::string_view name) {
    if (name == "text") return RegionClass::Text;
    if (name == "image") return RegionClass::Image;
    if (name == "drawings") return RegionClass::Drawings;
    if (name == "table") return RegionClass::Table;
    return std::nullopt;
}

long long count_transitions(const BinaryImage& img, const Box& box, Axis axis) {
    long long transitions = 0;
    if (axis == Axis::Rows) {
        for (int r = box.row_min; r <= box.row_max; ++r) {
            std::uint8_t prev = 0; // virtual white before the line
            for (int c = box.col_min; c <= box.col_max; ++c) {
                std::uint8_t cur = img.at(r, c);
                if (cur != prev) ++transitions;
                prev = cur;
            }
            if (prev) ++transitions; // back to virtual white
        }
    } else {
        for (int c = box.col_min; c <= box.col_max; ++c) {
            std::uint8_t prev = 0;
            for (int r = box.row_min; r <= box.row_max; ++r) {
                std::uint8_t cur = img.at(r, c);
                if (cur != prev) ++transitions;
                prev = cur;
            }
            if (prev) ++transitions;
        }
    }
    return transitions;
}

std::array<double, 21> FeatureVector::as_array() const {
    return {height,     width,      aspect_ratio, area,       density,
            h_trans_x,  v_trans_x,  h_trans_y,    v_trans_y,  seg_density,
            avg_run,    run_height, run_aspect,   run_density, mean,
            std_dev,    active_pixels, perimeter, perim_height, energy,
            entropy};
}

const std::array<std::string, 21>& feature_names() {
    static const std::array<std::string, 21> names = {
        "height",       "width",      "aspect_ratio", "area",        "density",
        "h_trans_x",    "v_trans_x",  "h_trans_y",    "v_trans_y",   "seg_density",
        "avg_run",      "run_height", "run_aspect",   "run_density", "mean",
        "std_dev",      "active_pixels", "perimeter", "perim_height", "energy",
        "entropy"};
    return names;
}

FeatureVector compute_features(const BinaryImage& original, const GrayImage& gray,
                               const Block& blk, double k) {
    const Box box = blk.box();
    FeatureVector f;

    const double h = box.row_extent();
    const double w = box.col_extent();
    const double area = h * w;
    const double n_ink = static_cast<double>(blk.ink_pixel_count);
    const double c_mask = static_cast<double>(blk.mask_pixel_count);

    f.height = h;
    f.width = w;
    f.aspect_ratio = w / h;
    f.area = area;
    f.density = n_ink / area;

    const long long ht = count_transitions(original, box, Axis::Rows);
    const long long vt = count_transitions(original, box, Axis::Columns);
    f.h_trans_x = static_cast<double>(ht) / h;
    f.v_trans_x = static_cast<double>(vt) / h;
    f.h_trans_y = static_cast<double>(ht) / w;
    f.v_trans_y = static_cast<double>(vt) / w;

    f.seg_density = c_mask / area;
    f.avg_run = ht > 0 ? n_ink / static_cast<double>(ht) : 0.0;
    f.run_height = f.avg_run * f.height;
    f.run_aspect = f.avg_run * f.aspect_ratio;
    f.run_density = f.avg_run * f.seg_density;

    // Grayscale statistics over the box: integer sums keep them exact.
    long long sum = 0, sum_sq = 0;
    std::array<long long, 256> hist{};
    for (int r = box.row_min; r <= box.row_max; ++r) {
        for (int c = box.col_min; c <= box.col_max; ++c) {
            const std::uint8_t v = gray.at(r, c);
            sum += v;
            sum_sq += static_cast<long long>(v) * v;
            hist[v]++;
        }
    }
    const long long n_px = box.area();
    const double mu = static_cast<double>(sum) / area;
    // n*sum_sq - sum^2 is exact in 64 bits for any page-sized box, so the
    // variance never suffers cancellation.
    const long long var_num = n_px * sum_sq - sum * sum;
    f.mean = mu;
    f.std_dev = std::sqrt(static_cast<double>(var_num)) / area;

    const double active_cut = mu - k * f.std_dev;
    long long active = 0;
    for (int v = 0; v < 256; ++v)
        if (static_cast<double>(v) < active_cut) active += hist[v];
    f.active_pixels = static_cast<double>(active);

    f.perimeter = 2.0 * (h + w);
    f.perim_height = f.perimeter / h;

    f.energy = static_cast<double>(sum_sq) / (255.0 * 255.0) / area;

    double ent = 0.0;
    for (int v = 0; v < 256; ++v) {
        if (!hist[v]) continue;
        const double p = static_cast<double>(hist[v]) / area;
        ent -= p * std::log2(p);
    }
    f.entropy = ent < 0 ? 0.0 : ent;

    return f;
}

} // namespace docseg
