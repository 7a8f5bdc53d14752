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

#ifndef DOCSEG_FEATURES_HPP
#define DOCSEG_FEATURES_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "docseg/blocks.hpp"
#include "docseg/image.hpp"

namespace docseg {

/// The four region classes, with fixed integer codes.
enum class RegionClass : int { Text = 0, Image = 1, Drawings = 2, Table = 3 };

inline constexpr int kNumClasses = 4;

std::string_view class_name(RegionClass c);
std::optional<RegionClass> class_from_name(std::string_view name);

enum class Axis { Rows, Columns };

/// Black/white transition count over the box, each scan line padded with
/// virtual white at both ends. Axis::Rows yields HT, Axis::Columns VT.
long long count_transitions(const BinaryImage& img, const Box& box, Axis axis);

/// Per-block descriptor. Field order here is the canonical CSV column order.
struct FeatureVector {
    double height = 0;        // H: row extent of the box
    double width = 0;         // W: column extent
    double aspect_ratio = 0;  // E = W/H
    double area = 0;          // A = H*W
    double density = 0;       // D = N/A, N = ink pixels in box
    double h_trans_x = 0;     // HTx = HT/H
    double v_trans_x = 0;     // VTx = VT/H
    double h_trans_y = 0;     // HTy = HT/W
    double v_trans_y = 0;     // VTy = VT/W
    double seg_density = 0;   // D1 = C/A, C = smeared-mask pixels of the block
    double avg_run = 0;       // R = N/HT (0 when HT = 0)
    double run_height = 0;    // RH = R*H
    double run_aspect = 0;    // RE = R*E
    double run_density = 0;   // RD = R*D1
    double mean = 0;          // MU: mean gray intensity in box
    double std_dev = 0;       // SIGMA: population std of gray intensities
    double active_pixels = 0; // AP: count of gray < MU - k*SIGMA
    double perimeter = 0;     // P = 2*(H+W)
    double perim_height = 0;  // S = P/H
    double energy = 0;        // EN: mean of squared [0,1]-scaled intensities
    double entropy = 0;       // ENT: Shannon entropy (bits) of intensity histogram

    std::array<double, 21> as_array() const;
};

inline constexpr int kFeatureCount = 21;

/// CSV column names, matching FeatureVector field order.
const std::array<std::string, 21>& feature_names();

/// Compute every feature of one block. HT/VT and ink counts come from the
/// original binary page, gray statistics from the grayscale page, C from
/// the block itself.
FeatureVector compute_features(const BinaryImage& original, const GrayImage& gray,
                               const Block& blk, double k = 1.0);

} // namespace docseg

#endif
