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

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "docseg/blocks.hpp"
#include "docseg/corpus.hpp"
#include "docseg/imaging.hpp"
#include "docseg/rlsa.hpp"
#include "docseg/rng.hpp"
#include "oracles.hpp"

using namespace docseg;

namespace {

FeatureVector random_features(Rng& rng) {
    FeatureVector fv;
    fv.height = rng.uniform(1, 300);
    fv.width = rng.uniform(1, 300);
    fv.aspect_ratio = fv.width / fv.height;
    fv.area = rng.uniform(0, 1e5);
    fv.density = rng.uniform();
    fv.h_trans_x = rng.uniform(0, 40);
    fv.v_trans_x = rng.uniform(0, 40);
    fv.h_trans_y = rng.uniform(0, 40);
    fv.v_trans_y = rng.uniform(0, 40);
    fv.seg_density = rng.uniform();
    fv.avg_run = rng.uniform(0, 50);
    fv.run_height = rng.uniform(0, 500);
    fv.run_aspect = rng.uniform(0, 500);
    fv.run_density = rng.uniform(0, 50);
    fv.mean = rng.uniform(0, 255);
    fv.std_dev = rng.uniform(0, 128);
    fv.active_pixels = static_cast<double>(rng.below(5000));
    fv.perimeter = 2 * (fv.height + fv.width);
    fv.perim_height = fv.perimeter / fv.height;
    fv.energy = rng.uniform();
    fv.entropy = rng.uniform(0, 8);
    return fv;
}

struct Segmented {
    BinaryImage binary;
    BinaryImage mask;
    std::vector<Block> blocks;
};

Segmented segment_gray(const GrayImage& gray) {
    Segmented out;
    out.binary = despeckle(binarize(gray, otsu_threshold(gray)), 4);
    out.mask = rlsa_segment(out.binary, RlsaParams{});
    out.blocks = extract_blocks(label_components(out.mask), out.binary);
    return out;
}

// A page holding exactly one region, padded so the all-white margins stay
// longer than every smear threshold.
PageSpec single_region_page(RegionClass cls, int h, int w, std::uint64_t seed) {
    PageSpec spec;
    spec.width = std::max(w + 100, 301);
    spec.height = std::max(h + 100, 301);
    spec.seed = seed;
    spec.regions.push_back(
        RegionSpec{cls, Box{50, 50 + h - 1, 50, 50 + w - 1}, RecipeParams{}});
    return spec;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_var(const std::vector<double>& xs, double mu) {
    double s = 0;
    for (double x : xs) s += (x - mu) * (x - mu);
    return s / static_cast<double>(xs.size() - 1);
}

} // namespace

TEST_CASE("csv round trips values exactly") {
    Rng rng(801);
    Dataset ds;
    for (int i = 0; i < 25; ++i) ds.add(random_features(rng), i % kNumClasses);

    const Dataset back = read_csv(write_csv(ds));
    REQUIRE(back.size() == ds.size());
    REQUIRE(back.labeled());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(back.labels[i] == ds.labels[i]);
        const auto a = ds.rows[i].as_array();
        const auto b = back.rows[i].as_array();
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == b[j]);
    }
}

TEST_CASE("csv supports unlabeled data and crlf endings") {
    Rng rng(802);
    Dataset ds;
    for (int i = 0; i < 5; ++i) ds.add(random_features(rng));

    std::string text = write_csv(ds);
    CHECK(!read_csv(text).labeled());

    std::string crlf;
    for (char c : text) {
        if (c == '\n') crlf += '\r';
        crlf += c;
    }
    const Dataset back = read_csv(crlf);
    REQUIRE(back.size() == 5);
    CHECK(back.rows[2].as_array() == ds.rows[2].as_array());
}

TEST_CASE("csv errors name the line") {
    const std::string good = write_csv([] {
        Rng rng(803);
        Dataset ds;
        ds.add(random_features(rng), 0);
        return ds;
    }());

    std::string bad_header = good;
    bad_header.replace(bad_header.find("aspect_ratio"), 12, "aspectratio1");
    CHECK_THROWS_WITH_AS(read_csv(bad_header),
                         "csv line 1: column 3 should be 'aspect_ratio', got "
                         "'aspectratio1'",
                         std::runtime_error);

    const std::string header_only = good.substr(0, good.find('\n') + 1);
    CHECK(read_csv(header_only).size() == 0);

    std::string bad_row = good;
    bad_row += "1,2,3\n";
    CHECK_THROWS_AS(read_csv(bad_row), std::runtime_error);

    std::string bad_label = good;
    bad_label.replace(bad_label.rfind("text"), 4, "memo");
    CHECK_THROWS_WITH_AS(read_csv(bad_label), "csv line 2: unknown label 'memo'",
                         std::runtime_error);
}

TEST_CASE("split is stratified with round-half-even counts") {
    Rng rng(804);
    Dataset ds;
    for (int i = 0; i < 40; ++i) ds.add(random_features(rng), i % kNumClasses);

    const SplitResult sr = split(ds, 0.25, 7);
    CHECK(sr.test.size() == 8); // nearest-even of 2.5 per class is 2
    CHECK(sr.train.size() == 32);
    for (int c = 0; c < kNumClasses; ++c) {
        CHECK(std::count(sr.test.labels.begin(), sr.test.labels.end(), c) == 2);
        CHECK(std::count(sr.train.labels.begin(), sr.train.labels.end(), c) == 8);
    }
}

TEST_CASE("split rounds each class independently") {
    Rng rng(805);
    Dataset ds;
    for (int i = 0; i < 6; ++i) ds.add(random_features(rng), 0);
    for (int i = 0; i < 2; ++i) ds.add(random_features(rng), 1);

    const SplitResult sr = split(ds, 0.25, 3);
    // 0.25*6 = 1.5 rounds to 2; 0.25*2 = 0.5 rounds to 0.
    CHECK(sr.test.size() == 2);
    CHECK(std::count(sr.test.labels.begin(), sr.test.labels.end(), 0) == 2);
    CHECK(std::count(sr.test.labels.begin(), sr.test.labels.end(), 1) == 0);
}

TEST_CASE("split preserves row order on both sides") {
    Rng rng(806);
    Dataset ds;
    for (int i = 0; i < 30; ++i) {
        FeatureVector fv = random_features(rng);
        fv.height = i; // tag the original position
        ds.add(fv, static_cast<int>(rng.below(kNumClasses)));
    }

    const SplitResult sr = split(ds, 0.3, 11);
    CHECK(sr.train.size() + sr.test.size() == ds.size());
    for (const Dataset* side : {&sr.train, &sr.test})
        for (std::size_t i = 1; i < side->size(); ++i)
            CHECK(side->rows[i].height > side->rows[i - 1].height);
}

TEST_CASE("split is deterministic in the seed") {
    Rng rng(807);
    Dataset ds;
    for (int i = 0; i < 24; ++i) ds.add(random_features(rng), i % kNumClasses);

    const SplitResult a = split(ds, 0.25, 42);
    const SplitResult b = split(ds, 0.25, 42);
    REQUIRE(a.test.size() == b.test.size());
    for (std::size_t i = 0; i < a.test.size(); ++i)
        CHECK(a.test.rows[i].as_array() == b.test.rows[i].as_array());
}

TEST_CASE("split validates its inputs") {
    Rng rng(808);
    Dataset ds;
    ds.add(random_features(rng), 0);
    CHECK_THROWS_AS(split(ds, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split(ds, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split(ds, -0.1, 1), std::invalid_argument);

    Dataset unlabeled;
    unlabeled.add(random_features(rng));
    CHECK_THROWS_AS(split(unlabeled, 0.25, 1), std::invalid_argument);
}

TEST_CASE("box iou covers the identical, disjoint, and partial cases") {
    const Box a{0, 9, 0, 9};
    CHECK(box_iou(a, a) == 1.0);
    CHECK(box_iou(a, Box{20, 29, 0, 9}) == 0.0);
    CHECK(box_iou(a, Box{5, 14, 0, 9}) == doctest::Approx(50.0 / 150.0));
}

TEST_CASE("random page specs stay inside margins and apart") {
    const LayoutParams layout;
    for (const std::uint64_t seed : {1ull, 2ull, 77ull}) {
        const PageSpec spec = random_page_spec(seed);
        CHECK(spec.width == layout.width);
        CHECK(spec.height == layout.height);
        CHECK(spec.regions.size() >= 12);

        for (const RegionSpec& r : spec.regions) {
            CHECK(static_cast<int>(r.cls) >= 0);
            CHECK(static_cast<int>(r.cls) < kNumClasses);
            CHECK(r.box.row_min >= layout.margin);
            CHECK(r.box.col_min >= layout.margin);
            CHECK(r.box.row_max < layout.height - layout.margin);
            CHECK(r.box.col_max < layout.width - layout.margin);
            CHECK(r.box.row_extent() >= layout.min_region_h);
            CHECK(r.box.row_extent() <= layout.max_region_h);
            CHECK(r.box.col_extent() >= layout.min_region_w);
            CHECK(r.box.col_extent() <= layout.max_region_w);
        }

        for (std::size_t i = 0; i < spec.regions.size(); ++i) {
            for (std::size_t j = i + 1; j < spec.regions.size(); ++j) {
                const Box& a = spec.regions[i].box;
                const Box& b = spec.regions[j].box;
                const int row_gap = std::max(a.row_min, b.row_min) -
                                    std::min(a.row_max, b.row_max) - 1;
                const int col_gap = std::max(a.col_min, b.col_min) -
                                    std::min(a.col_max, b.col_max) - 1;
                const bool rows_apart = row_gap > RlsaParams{}.v_threshold;
                const bool cols_apart = col_gap > RlsaParams{}.h_threshold;
                CHECK((rows_apart || cols_apart));
            }
        }
    }

    const PageSpec a = random_page_spec(5);
    const PageSpec b = random_page_spec(5);
    REQUIRE(a.regions.size() == b.regions.size());
    for (std::size_t i = 0; i < a.regions.size(); ++i) {
        CHECK(a.regions[i].box == b.regions[i].box);
        CHECK(a.regions[i].cls == b.regions[i].cls);
    }
}

TEST_CASE("page rendering is pure in the spec") {
    const PageSpec spec = single_region_page(RegionClass::Table, 120, 260, 31);
    const SynthPage a = synth_page(spec);
    const SynthPage b = synth_page(spec);
    CHECK(a.image.pixels == b.image.pixels);
    REQUIRE(a.truth.size() == 1);
    CHECK(a.truth[0].box == spec.regions[0].box);
}

TEST_CASE("page rendering validates geometry") {
    PageSpec outside = single_region_page(RegionClass::Text, 120, 260, 1);
    outside.regions[0].box.col_max = outside.width + 5;
    CHECK_THROWS_AS(synth_page(outside), std::invalid_argument);

    PageSpec overlapping = single_region_page(RegionClass::Text, 120, 260, 1);
    overlapping.regions.push_back(overlapping.regions[0]);
    try {
        synth_page(overlapping);
        FAIL("expected overlap rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("overlap") != std::string::npos);
    }

    CHECK_THROWS_AS(synth_page(PageSpec{300, 300, 0, {}}), std::invalid_argument);
}

TEST_CASE("a page with one region per class yields four matched blocks") {
    PageSpec spec;
    spec.width = 1000;
    spec.height = 700;
    spec.seed = 99;
    spec.regions = {
        RegionSpec{RegionClass::Text, Box{50, 199, 50, 339}, RecipeParams{}},
        RegionSpec{RegionClass::Image, Box{50, 199, 650, 939}, RecipeParams{}},
        RegionSpec{RegionClass::Drawings, Box{485, 634, 50, 339}, RecipeParams{}},
        RegionSpec{RegionClass::Table, Box{485, 634, 650, 939}, RecipeParams{}},
    };

    const SynthPage page = synth_page(spec);
    const Segmented seg = segment_gray(page.image);
    REQUIRE(seg.blocks.size() == 4);

    std::array<bool, 4> region_taken{};
    for (const Block& blk : seg.blocks) {
        double best = 0;
        std::size_t best_region = 0;
        for (std::size_t i = 0; i < spec.regions.size(); ++i) {
            const double iou = box_iou(blk.box(), spec.regions[i].box);
            if (iou > best) {
                best = iou;
                best_region = i;
            }
        }
        CHECK(best > 0.5);
        CHECK(!region_taken[best_region]);
        region_taken[best_region] = true;
    }
}

TEST_CASE("a full random page yields one block per region") {
    const PageSpec spec = random_page_spec(417);
    const SynthPage page = synth_page(spec);
    const Segmented seg = segment_gray(page.image);

    REQUIRE(seg.blocks.size() == spec.regions.size());
    std::vector<bool> taken(spec.regions.size(), false);
    for (const Block& blk : seg.blocks) {
        double best = 0;
        std::size_t best_region = 0;
        for (std::size_t i = 0; i < spec.regions.size(); ++i) {
            const double iou = box_iou(blk.box(), spec.regions[i].box);
            if (iou > best) {
                best = iou;
                best_region = i;
            }
        }
        CHECK(best > 0.5);
        CHECK(!taken[best_region]);
        taken[best_region] = true;
    }
}

TEST_CASE("page spec json round trips") {
    const PageSpec spec = random_page_spec(23);
    const PageSpec back = parse_page_spec(page_spec_json(spec));
    CHECK(back.width == spec.width);
    CHECK(back.height == spec.height);
    CHECK(back.seed == spec.seed);
    REQUIRE(back.regions.size() == spec.regions.size());
    for (std::size_t i = 0; i < spec.regions.size(); ++i) {
        CHECK(back.regions[i].cls == spec.regions[i].cls);
        CHECK(back.regions[i].box == spec.regions[i].box);
        CHECK(back.regions[i].recipe.line_height_min ==
              spec.regions[i].recipe.line_height_min);
        CHECK(back.regions[i].recipe.cell_fill == spec.regions[i].recipe.cell_fill);
    }
}

TEST_CASE("region list json round trips") {
    const PageSpec spec = random_page_spec(24);
    const auto back = parse_region_list(region_list_json(spec.regions));
    REQUIRE(back.size() == spec.regions.size());
    for (std::size_t i = 0; i < spec.regions.size(); ++i) {
        CHECK(back[i].cls == spec.regions[i].cls);
        CHECK(back[i].box == spec.regions[i].box);
    }
}

TEST_CASE("class recipes separate in feature space") {
    constexpr int kPerClass = 100;
    std::array<std::array<std::vector<double>, 4>, kNumClasses> samples;

    Rng geom(900);
    for (int c = 0; c < kNumClasses; ++c) {
        for (int i = 0; i < kPerClass; ++i) {
            const int h = 100 + static_cast<int>(geom.below(81));
            const int w = 230 + static_cast<int>(geom.below(61));
            const PageSpec spec = single_region_page(
                static_cast<RegionClass>(c), h, w,
                splitmix64(1000 + static_cast<std::uint64_t>(c) * kPerClass + i));
            const SynthPage page = synth_page(spec);
            const Segmented seg = segment_gray(page.image);
            REQUIRE(!seg.blocks.empty());

            const Block* biggest = &seg.blocks[0];
            for (const Block& b : seg.blocks)
                if (b.mask_pixel_count > biggest->mask_pixel_count) biggest = &b;

            const FeatureVector fv = compute_features(
                seg.binary, page.image, *biggest, 1.0);
            samples[c][0].push_back(fv.h_trans_x);
            samples[c][1].push_back(fv.density);
            samples[c][2].push_back(fv.seg_density);
            samples[c][3].push_back(fv.entropy);
        }
    }

    for (int a = 0; a < kNumClasses; ++a) {
        for (int b = a + 1; b < kNumClasses; ++b) {
            bool separated = false;
            for (int f = 0; f < 4 && !separated; ++f) {
                const double ma = mean_of(samples[a][f]);
                const double mb = mean_of(samples[b][f]);
                const double va = sample_var(samples[a][f], ma);
                const double vb = sample_var(samples[b][f], mb);
                const double pooled = std::sqrt(
                    ((kPerClass - 1) * va + (kPerClass - 1) * vb) /
                    (2.0 * kPerClass - 2.0));
                if (pooled > 0 && std::fabs(ma - mb) >= pooled) separated = true;
            }
            INFO("class pair ", a, " vs ", b);
            CHECK(separated);
        }
    }
}
