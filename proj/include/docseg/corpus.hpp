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

#ifndef DOCSEG_CORPUS_HPP
#define DOCSEG_CORPUS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "docseg/features.hpp"
#include "docseg/image.hpp"

namespace docseg {

/// Feature table with an optional class label per row.
struct Dataset {
    std::vector<FeatureVector> rows;
    std::vector<int> labels; // empty when unlabeled, else one per row

    bool labeled() const { return !labels.empty(); }
    std::size_t size() const { return rows.size(); }
    void add(const FeatureVector& f) { rows.push_back(f); }
    void add(const FeatureVector& f, int label) {
        rows.push_back(f);
        labels.push_back(label);
    }
};

std::string write_csv(const Dataset& ds);
Dataset read_csv(std::string_view text);

struct SplitResult {
    Dataset train;
    Dataset test;
};

/// Stratified split: per class, round-half-even(test_fraction * class size)
/// rows go to test, chosen by seeded shuffle. Row order is preserved on
/// both sides.
SplitResult split(const Dataset& ds, double test_fraction, std::uint64_t seed);

/// Per-region rendering knobs, in pixels at a nominal 200 dpi page.
struct RecipeParams {
    int line_height_min = 10; // text
    int line_height_max = 16;
    int leading_min = 4;
    int leading_max = 8;
    int word_min = 4;
    int word_max = 20;
    int word_gap_min = 2;
    int word_gap_max = 8;
    double stipple_min = 0.4; // image ink probability
    double stipple_max = 0.6;
    int stroke_min = 1; // drawings: cross strokes between the side rails
    int stroke_max = 8;
    int cell_w_min = 50; // table
    int cell_w_max = 74;
    int cell_h_min = 34;
    int cell_h_max = 50;
    double cell_fill = 0.7;
};

struct RegionSpec {
    RegionClass cls;
    Box box;
    RecipeParams recipe;
};

struct PageSpec {
    int width = 0;
    int height = 0;
    std::uint64_t seed = 0;
    std::vector<RegionSpec> regions;
};

/// Page layout knobs. Column and row gaps stay above the default smear
/// thresholds so distinct regions can never merge.
struct LayoutParams {
    int width = 1700;
    int height = 2200;
    int margin = 50;
    int col_count = 3;
    int col_gap = 310;
    int row_gap = 285;
    int min_region_h = 100;
    int max_region_h = 180;
    int min_region_w = 230;
    int max_region_w = 290;
    std::array<double, kNumClasses> class_weights = {196, 123, 92, 108};
};

PageSpec random_page_spec(std::uint64_t seed, const LayoutParams& params = {});

struct SynthPage {
    GrayImage image;
    std::vector<RegionSpec> truth;
};

/// Renders the page deterministically from the spec. Regions must sit
/// inside the page and must not overlap.
SynthPage synth_page(const PageSpec& spec);

std::string page_spec_json(const PageSpec& spec);
PageSpec parse_page_spec(std::string_view text);

/// Ground-truth region list: JSON array of {class, row_min, row_max,
/// col_min, col_max}.
std::string region_list_json(const std::vector<RegionSpec>& regions);
std::vector<RegionSpec> parse_region_list(std::string_view text);

double box_iou(const Box& a, const Box& b);

} // namespace docseg

#endif
