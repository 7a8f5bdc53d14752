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

#include "docseg/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

#include "docseg/rng.hpp"

namespace docseg {

namespace {

constexpr std::array<double FeatureVector::*, kFeatureCount> kFields = {
    &FeatureVector::height,        &FeatureVector::width,
    &FeatureVector::aspect_ratio,  &FeatureVector::area,
    &FeatureVector::density,       &FeatureVector::h_trans_x,
    &FeatureVector::v_trans_x,     &FeatureVector::h_trans_y,
    &FeatureVector::v_trans_y,     &FeatureVector::seg_density,
    &FeatureVector::avg_run,       &FeatureVector::run_height,
    &FeatureVector::run_aspect,    &FeatureVector::run_density,
    &FeatureVector::mean,          &FeatureVector::std_dev,
    &FeatureVector::active_pixels, &FeatureVector::perimeter,
    &FeatureVector::perim_height,  &FeatureVector::energy,
    &FeatureVector::entropy};

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

[[noreturn]] void csv_fail(int line, const std::string& what) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": " + what);
}

} // namespace

std::string write_csv(const Dataset& ds) {
    if (ds.labeled() && ds.labels.size() != ds.rows.size())
        throw std::invalid_argument("write_csv: label count mismatch");

    std::string out;
    const auto& names = feature_names();
    for (int i = 0; i < kFeatureCount; ++i) {
        if (i) out += ',';
        out += names[i];
    }
    if (ds.labeled()) out += ",label";
    out += '\n';

    char buf[40];
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        for (int i = 0; i < kFeatureCount; ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", ds.rows[r].*kFields[i]);
            out += buf;
        }
        if (ds.labeled()) {
            out += ',';
            out += class_name(static_cast<RegionClass>(ds.labels[r]));
        }
        out += '\n';
    }
    return out;
}

Dataset read_csv(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(pos, end - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        pos = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) csv_fail(1, "missing header");

    const auto header = split_fields(lines[0]);
    const auto& names = feature_names();
    const bool labeled = header.size() == kFeatureCount + 1 && header.back() == "label";
    if (!labeled && header.size() != kFeatureCount)
        csv_fail(1, "expected " + std::to_string(kFeatureCount) +
                        " feature columns plus optional label");
    for (int i = 0; i < kFeatureCount; ++i) {
        if (header[i] != names[i])
            csv_fail(1, "column " + std::to_string(i + 1) + " should be '" +
                            names[i] + "', got '" + header[i] + "'");
    }

    Dataset ds;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const int line_no = static_cast<int>(li) + 1;
        if (lines[li].empty()) csv_fail(line_no, "empty row");
        const auto fields = split_fields(lines[li]);
        if (fields.size() != header.size())
            csv_fail(line_no, "expected " + std::to_string(header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
        FeatureVector f;
        for (int i = 0; i < kFeatureCount; ++i) {
            double v = 0;
            const std::string& tok = fields[i];
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                csv_fail(line_no, "bad number '" + tok + "'");
            f.*kFields[i] = v;
        }
        if (labeled) {
            const auto cls = class_from_name(fields.back());
            if (!cls) csv_fail(line_no, "unknown label '" + fields.back() + "'");
            ds.add(f, static_cast<int>(*cls));
        } else {
            ds.add(f);
        }
    }
    return ds;
}

SplitResult split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
    if (!ds.labeled())
        throw std::invalid_argument("split: dataset has no labels");
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("split: test_fraction outside (0,1)");

    std::array<std::vector<std::size_t>, kNumClasses> by_class;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const int c = ds.labels[i];
        if (c < 0 || c >= kNumClasses)
            throw std::invalid_argument("split: label out of range");
        by_class[c].push_back(i);
    }

    Rng rng(seed);
    std::vector<char> in_test(ds.size(), 0);
    for (int c = 0; c < kNumClasses; ++c) {
        auto idx = by_class[c];
        for (std::size_t i = idx.size(); i > 1; --i) {
            const std::size_t j = rng.below(i);
            std::swap(idx[i - 1], idx[j]);
        }
        const double want = test_fraction * static_cast<double>(idx.size());
        const auto take = static_cast<std::size_t>(std::nearbyint(want));
        for (std::size_t i = 0; i < take; ++i) in_test[idx[i]] = 1;
    }

    SplitResult out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        Dataset& side = in_test[i] ? out.test : out.train;
        side.add(ds.rows[i], ds.labels[i]);
    }
    return out;
}

double box_iou(const Box& a, const Box& b) {
    const int r0 = std::max(a.row_min, b.row_min);
    const int r1 = std::min(a.row_max, b.row_max);
    const int c0 = std::max(a.col_min, b.col_min);
    const int c1 = std::min(a.col_max, b.col_max);
    if (r0 > r1 || c0 > c1) return 0.0;
    const double inter = static_cast<double>(r1 - r0 + 1) * (c1 - c0 + 1);
    const double uni =
        static_cast<double>(a.area()) + static_cast<double>(b.area()) - inter;
    return inter / uni;
}

namespace {

RegionClass draw_class(Rng& rng, const std::array<double, kNumClasses>& weights) {
    double total = 0;
    for (double w : weights) total += w;
    const double r = rng.uniform() * total;
    double cum = 0;
    for (int c = 0; c < kNumClasses; ++c) {
        cum += weights[c];
        if (r < cum) return static_cast<RegionClass>(c);
    }
    return static_cast<RegionClass>(kNumClasses - 1);
}

} // namespace

PageSpec random_page_spec(std::uint64_t seed, const LayoutParams& params) {
    const int usable_w = params.width - 2 * params.margin -
                         (params.col_count - 1) * params.col_gap;
    if (params.col_count < 1 || usable_w < params.col_count)
        throw std::invalid_argument("random_page_spec: layout does not fit the page");
    const int col_w = usable_w / params.col_count;
    const int w_lo = std::min(params.min_region_w, col_w);
    const int w_hi = std::min(params.max_region_w, col_w);

    Rng rng(seed);
    PageSpec spec;
    spec.width = params.width;
    spec.height = params.height;
    spec.seed = seed;

    for (int col = 0; col < params.col_count; ++col) {
        const int x0 = params.margin + col * (col_w + params.col_gap);
        int y = params.margin;
        while (true) {
            const int h = params.min_region_h +
                          static_cast<int>(rng.below(params.max_region_h -
                                                     params.min_region_h + 1));
            if (y + h > params.height - params.margin) break;
            const int w = w_lo + static_cast<int>(rng.below(w_hi - w_lo + 1));
            const RegionClass cls = draw_class(rng, params.class_weights);
            spec.regions.push_back({cls, Box{y, y + h - 1, x0, x0 + w - 1}, {}});
            y += h + params.row_gap;
        }
    }
    return spec;
}

namespace {

std::uint8_t noisy(Rng& rng, double base) {
    const double v = base + 4.0 * rng.gauss();
    return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

inline std::uint8_t ink_shade(Rng& rng) { return noisy(rng, 15.0); }

void fill_rect(GrayImage& img, const Box& box, int r0, int r1, int c0, int c1,
               Rng& rng) {
    r0 = std::max(r0, 0);
    c0 = std::max(c0, 0);
    r1 = std::min(r1, box.row_extent() - 1);
    c1 = std::min(c1, box.col_extent() - 1);
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c)
            img.at(box.row_min + r, box.col_min + c) = ink_shade(rng);
}

void paint_text(GrayImage& img, const Box& box, const RecipeParams& rp, Rng& rng) {
    const int H = box.row_extent(), W = box.col_extent();
    const int band =
        rp.line_height_min +
        static_cast<int>(rng.below(rp.line_height_max - rp.line_height_min + 1));
    const int lead = rp.leading_min +
                     static_cast<int>(rng.below(rp.leading_max - rp.leading_min + 1));
    int y = 0;
    while (y + band <= H) {
        int x = 0;
        while (x < W) {
            int word = rp.word_min +
                       static_cast<int>(rng.below(rp.word_max - rp.word_min + 1));
            if (x + word > W) word = W - x;
            if (word < 2) break;
            fill_rect(img, box, y, y + band - 1, x, x + word - 1, rng);
            x += word + rp.word_gap_min +
                 static_cast<int>(rng.below(rp.word_gap_max - rp.word_gap_min + 1));
        }
        if (y + 2 * band + lead <= H) {
            // Descender-like stroke bridging the leading gap, so the region
            // stays one connected block after smearing.
            const int tick = static_cast<int>(rng.below(W - 1));
            fill_rect(img, box, y + band - 2, y + band + lead + 1, tick, tick + 1,
                      rng);
        }
        y += band + lead;
    }
}

void paint_image(GrayImage& img, const Box& box, const RecipeParams& rp, Rng& rng) {
    const int H = box.row_extent(), W = box.col_extent();
    const double p = rng.uniform(rp.stipple_min, rp.stipple_max);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c)
            if (rng.chance(p)) img.at(box.row_min + r, box.col_min + c) = ink_shade(rng);
}

void paint_segment(GrayImage& img, const Box& box, int r0, int c0, int r1, int c1,
                   Rng& rng) {
    const int dr = std::abs(r1 - r0), dc = std::abs(c1 - c0);
    const int sr = r0 < r1 ? 1 : -1, sc = c0 < c1 ? 1 : -1;
    int err = (dc > dr ? dc : -dr) / 2;
    int r = r0, c = c0;
    while (true) {
        fill_rect(img, box, r, r, c, c, rng);
        if (r == r1 && c == c1) break;
        const int e2 = err;
        if (e2 > -dc) { err -= dr; c += sc; }
        if (e2 < dr) { err += dc; r += sr; }
    }
}

void paint_drawings(GrayImage& img, const Box& box, const RecipeParams& rp,
                    Rng& rng) {
    const int H = box.row_extent(), W = box.col_extent();
    // Two full-height side rails keep every cross stroke connected and give
    // each row ink at both edges.
    fill_rect(img, box, 0, H - 1, 0, 0, rng);
    fill_rect(img, box, 0, H - 1, W - 1, W - 1, rng);

    const int n = rp.stroke_min +
                  static_cast<int>(rng.below(rp.stroke_max - rp.stroke_min + 1));
    for (int i = 0; i < n; ++i) {
        const int r0 = static_cast<int>(rng.below(H));
        const int r1 = static_cast<int>(rng.below(H));
        paint_segment(img, box, r0, 0, r1, W - 1, rng);
    }
}

void paint_table(GrayImage& img, const Box& box, const RecipeParams& rp, Rng& rng) {
    const int H = box.row_extent(), W = box.col_extent();
    const int cell_w = rp.cell_w_min +
                       static_cast<int>(rng.below(rp.cell_w_max - rp.cell_w_min + 1));
    const int cell_h = rp.cell_h_min +
                       static_cast<int>(rng.below(rp.cell_h_max - rp.cell_h_min + 1));

    for (int x = 0; x < W; x += cell_w)
        fill_rect(img, box, 0, H - 1, x, x + 1, rng);
    fill_rect(img, box, 0, H - 1, W - 2, W - 1, rng);
    for (int y = 0; y < H; y += cell_h)
        fill_rect(img, box, y, y + 1, 0, W - 1, rng);
    fill_rect(img, box, H - 2, H - 1, 0, W - 1, rng);

    for (int y = 0; y + cell_h <= H; y += cell_h) {
        for (int x = 0; x + cell_w <= W; x += cell_w) {
            if (!rng.chance(rp.cell_fill)) continue;
            const int dash_h = 8 + static_cast<int>(rng.below(5));
            const int dash_w = cell_w * (40 + static_cast<int>(rng.below(31))) / 100;
            const int r0 = y + (cell_h - dash_h) / 2;
            const int c0 = x + (cell_w - dash_w) / 2;
            fill_rect(img, box, r0, r0 + dash_h - 1, c0, c0 + dash_w - 1, rng);
        }
    }
}

bool boxes_overlap(const Box& a, const Box& b) {
    return a.row_min <= b.row_max && b.row_min <= a.row_max &&
           a.col_min <= b.col_max && b.col_min <= a.col_max;
}

} // namespace

SynthPage synth_page(const PageSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0)
        throw std::invalid_argument("synth_page: empty page");
    if (spec.regions.empty())
        throw std::invalid_argument("synth_page: page needs at least one region");
    for (const RegionSpec& reg : spec.regions) {
        if (reg.box.row_min < 0 || reg.box.col_min < 0 ||
            reg.box.row_max >= spec.height || reg.box.col_max >= spec.width ||
            reg.box.row_min > reg.box.row_max || reg.box.col_min > reg.box.col_max)
            throw std::invalid_argument("synth_page: region outside the page");
    }
    for (std::size_t i = 0; i < spec.regions.size(); ++i)
        for (std::size_t j = i + 1; j < spec.regions.size(); ++j)
            if (boxes_overlap(spec.regions[i].box, spec.regions[j].box))
                throw std::invalid_argument("synth_page: regions " +
                                            std::to_string(i) + " and " +
                                            std::to_string(j) + " overlap");

    SynthPage page{GrayImage::filled(spec.width, spec.height, 255), spec.regions};
    Rng bg(splitmix64(spec.seed ^ 0x5bf03635u));
    for (std::uint8_t& px : page.image.pixels) px = noisy(bg, 250.0);

    for (std::size_t i = 0; i < spec.regions.size(); ++i) {
        const RegionSpec& reg = spec.regions[i];
        Rng rng(spec.seed + 0x9e3779b97f4a7c15ull * (i + 1));
        switch (reg.cls) {
            case RegionClass::Text:
                paint_text(page.image, reg.box, reg.recipe, rng);
                break;
            case RegionClass::Image:
                paint_image(page.image, reg.box, reg.recipe, rng);
                break;
            case RegionClass::Drawings:
                paint_drawings(page.image, reg.box, reg.recipe, rng);
                break;
            case RegionClass::Table:
                paint_table(page.image, reg.box, reg.recipe, rng);
                break;
        }
    }
    return page;
}

namespace {

nlohmann::json recipe_json(const RecipeParams& rp) {
    return {{"line_height_min", rp.line_height_min},
            {"line_height_max", rp.line_height_max},
            {"leading_min", rp.leading_min},
            {"leading_max", rp.leading_max},
            {"word_min", rp.word_min},
            {"word_max", rp.word_max},
            {"word_gap_min", rp.word_gap_min},
            {"word_gap_max", rp.word_gap_max},
            {"stipple_min", rp.stipple_min},
            {"stipple_max", rp.stipple_max},
            {"stroke_min", rp.stroke_min},
            {"stroke_max", rp.stroke_max},
            {"cell_w_min", rp.cell_w_min},
            {"cell_w_max", rp.cell_w_max},
            {"cell_h_min", rp.cell_h_min},
            {"cell_h_max", rp.cell_h_max},
            {"cell_fill", rp.cell_fill}};
}

RecipeParams parse_recipe(const nlohmann::json& j) {
    RecipeParams rp;
    rp.line_height_min = j.value("line_height_min", rp.line_height_min);
    rp.line_height_max = j.value("line_height_max", rp.line_height_max);
    rp.leading_min = j.value("leading_min", rp.leading_min);
    rp.leading_max = j.value("leading_max", rp.leading_max);
    rp.word_min = j.value("word_min", rp.word_min);
    rp.word_max = j.value("word_max", rp.word_max);
    rp.word_gap_min = j.value("word_gap_min", rp.word_gap_min);
    rp.word_gap_max = j.value("word_gap_max", rp.word_gap_max);
    rp.stipple_min = j.value("stipple_min", rp.stipple_min);
    rp.stipple_max = j.value("stipple_max", rp.stipple_max);
    rp.stroke_min = j.value("stroke_min", rp.stroke_min);
    rp.stroke_max = j.value("stroke_max", rp.stroke_max);
    rp.cell_w_min = j.value("cell_w_min", rp.cell_w_min);
    rp.cell_w_max = j.value("cell_w_max", rp.cell_w_max);
    rp.cell_h_min = j.value("cell_h_min", rp.cell_h_min);
    rp.cell_h_max = j.value("cell_h_max", rp.cell_h_max);
    rp.cell_fill = j.value("cell_fill", rp.cell_fill);
    return rp;
}

nlohmann::json region_json(const RegionSpec& reg, bool with_recipe) {
    nlohmann::json j = {{"class", std::string(class_name(reg.cls))},
                        {"row_min", reg.box.row_min},
                        {"row_max", reg.box.row_max},
                        {"col_min", reg.box.col_min},
                        {"col_max", reg.box.col_max}};
    if (with_recipe) j["recipe"] = recipe_json(reg.recipe);
    return j;
}

RegionSpec parse_region(const nlohmann::json& j) {
    const std::string name = j.at("class").get<std::string>();
    const auto cls = class_from_name(name);
    if (!cls) throw std::runtime_error("region list: unknown class '" + name + "'");
    RegionSpec reg{*cls,
                   Box{j.at("row_min").get<int>(), j.at("row_max").get<int>(),
                       j.at("col_min").get<int>(), j.at("col_max").get<int>()},
                   {}};
    if (j.contains("recipe")) reg.recipe = parse_recipe(j.at("recipe"));
    return reg;
}

} // namespace

std::string page_spec_json(const PageSpec& spec) {
    nlohmann::json regions = nlohmann::json::array();
    for (const RegionSpec& reg : spec.regions) regions.push_back(region_json(reg, true));
    const nlohmann::json doc = {{"width", spec.width},
                                {"height", spec.height},
                                {"seed", spec.seed},
                                {"regions", std::move(regions)}};
    return doc.dump(2) + "\n";
}

PageSpec parse_page_spec(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    PageSpec spec;
    spec.width = doc.at("width").get<int>();
    spec.height = doc.at("height").get<int>();
    spec.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& reg : doc.at("regions")) spec.regions.push_back(parse_region(reg));
    return spec;
}

std::string region_list_json(const std::vector<RegionSpec>& regions) {
    nlohmann::json arr = nlohmann::json::array();
    for (const RegionSpec& reg : regions) arr.push_back(region_json(reg, false));
    return arr.dump(2) + "\n";
}

std::vector<RegionSpec> parse_region_list(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    std::vector<RegionSpec> out;
    for (const auto& reg : doc) out.push_back(parse_region(reg));
    return out;
}

} // namespace docseg
