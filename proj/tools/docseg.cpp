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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "docseg/blocks.hpp"
#include "docseg/config.hpp"
#include "docseg/corpus.hpp"
#include "docseg/fsio.hpp"
#include "docseg/imaging.hpp"
#include "docseg/lgp.hpp"
#include "docseg/ovo.hpp"
#include "docseg/pnm.hpp"
#include "docseg/rlsa.hpp"
#include "docseg/rng.hpp"

namespace {

using namespace docseg;

struct PipelineOptions {
    std::string config_path;
    int hth = 300;
    int vth = 280;
    int final_th = 30;
    double k = 1.0;
    CLI::Option* hth_opt = nullptr;
    CLI::Option* vth_opt = nullptr;
    CLI::Option* final_opt = nullptr;
    CLI::Option* k_opt = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value config file");
        hth_opt = cmd->add_option("--hth", hth, "horizontal smear threshold")
                      ->capture_default_str();
        vth_opt = cmd->add_option("--vth", vth, "vertical smear threshold")
                      ->capture_default_str();
        final_opt = cmd->add_option("--final", final_th, "final smear threshold")
                        ->capture_default_str();
        k_opt = cmd->add_option("--k", k, "active-pixel threshold factor")
                    ->capture_default_str();
    }

    RunConfig resolve() const {
        RunConfig rc;
        if (!config_path.empty()) rc = parse_run_config(read_file(config_path));
        if (hth_opt->count()) rc.rlsa.h_threshold = hth;
        if (vth_opt->count()) rc.rlsa.v_threshold = vth;
        if (final_opt->count()) rc.rlsa.final_threshold = final_th;
        if (k_opt->count()) rc.active_k = k;
        return rc;
    }
};

struct PipelineOut {
    GrayImage gray;
    BinaryImage binary;
    BinaryImage mask;
    LabelMap labels;
    std::vector<Block> blocks;
};

PipelineOut run_pipeline(const std::string& image_path, const RunConfig& rc) {
    PipelineOut out;
    out.gray = decode_image(read_file(image_path));
    const int t = otsu_threshold(out.gray);
    out.binary = despeckle(binarize(out.gray, t), rc.despeckle_area);
    out.mask = rlsa_segment(out.binary, rc.rlsa);
    out.labels = label_components(out.mask);
    out.blocks = extract_blocks(out.labels, out.binary);
    return out;
}

std::string page_stem(int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "page_%04d", index);
    return buf;
}

int cmd_synth(const std::string& out_dir, int pages, std::uint64_t seed) {
    std::filesystem::create_directories(out_dir);
    const std::uint64_t base = splitmix64(seed);
    for (int i = 0; i < pages; ++i) {
        const PageSpec spec = random_page_spec(splitmix64(base + i));
        const SynthPage page = synth_page(spec);
        const std::string stem = out_dir + "/" + page_stem(i);
        write_file_atomic(stem + ".pgm", encode_pgm(page.image));
        write_file_atomic(stem + ".truth.json", region_list_json(page.truth));
        write_file_atomic(stem + ".spec.json", page_spec_json(spec));
    }
    return 0;
}

int cmd_segment(const std::string& in_path, const PipelineOptions& po,
                const std::string& blocks_out, const std::string& mask_out,
                const std::string& features_out) {
    const RunConfig rc = po.resolve();
    const PipelineOut out = run_pipeline(in_path, rc);

    if (!blocks_out.empty())
        write_file_atomic(blocks_out, blocks_manifest_json(out.blocks));
    if (!mask_out.empty()) write_file_atomic(mask_out, encode_pbm(out.mask));
    if (!features_out.empty()) {
        Dataset ds;
        for (const Block& blk : out.blocks)
            ds.add(compute_features(out.binary, out.gray, blk, rc.active_k));
        write_file_atomic(features_out, write_csv(ds));
    }
    std::printf("%zu blocks\n", out.blocks.size());
    return 0;
}

int cmd_features(const std::string& in_path, const std::string& truth_path,
                 const PipelineOptions& po, const std::string& out_path) {
    const RunConfig rc = po.resolve();
    const PipelineOut out = run_pipeline(in_path, rc);
    const auto truth = parse_region_list(read_file(truth_path));
    if (truth.empty()) throw std::runtime_error("truth file has no regions");

    Dataset ds;
    for (const Block& blk : out.blocks) {
        double best = 0;
        int label = -1;
        for (const RegionSpec& reg : truth) {
            const double iou = box_iou(blk.box(), reg.box);
            if (iou > best) {
                best = iou;
                label = static_cast<int>(reg.cls);
            }
        }
        if (label < 0) continue; // stray block touching no region
        ds.add(compute_features(out.binary, out.gray, blk, rc.active_k), label);
    }
    write_file_atomic(out_path, write_csv(ds));
    std::printf("%zu labeled blocks\n", ds.size());
    return 0;
}

EvolveConfig resolve_train_config(const std::string& config_path,
                                  CLI::Option* seed_opt, std::uint64_t seed) {
    RunConfig rc;
    if (!config_path.empty()) rc = parse_run_config(read_file(config_path));
    if (seed_opt->count()) rc.evolve.rng_seed = seed;
    return rc.evolve;
}

int cmd_train(const std::string& train_path, const std::string& test_path,
              const std::string& model_dir, const std::string& config_path,
              CLI::Option* seed_opt, std::uint64_t seed,
              const std::string& report_out) {
    const EvolveConfig cfg = resolve_train_config(config_path, seed_opt, seed);
    const Dataset train = read_csv(read_file(train_path));
    const Dataset test = read_csv(read_file(test_path));

    const OvOClassifier model = train_ovo(train, cfg);
    save_bundle(model, model_dir);

    const std::string report = format_report(evaluate_multiclass(model, test));
    if (!report_out.empty()) write_file_atomic(report_out, report);
    std::fputs(report.c_str(), stdout);
    return 0;
}

int cmd_predict(const std::string& model_dir, const std::string& in_path,
                const std::string& out_path, const std::string& blocks_path,
                const std::string& regions_out) {
    const OvOClassifier model = load_bundle(model_dir);
    const Dataset ds = read_csv(read_file(in_path));

    std::vector<int> preds;
    preds.reserve(ds.size());
    for (const FeatureVector& fv : ds.rows) preds.push_back(predict(model, fv));

    std::string listing;
    for (int p : preds) {
        listing += class_name(static_cast<RegionClass>(p));
        listing += '\n';
    }
    if (out_path.empty())
        std::fputs(listing.c_str(), stdout);
    else
        write_file_atomic(out_path, listing);

    if (!regions_out.empty()) {
        if (blocks_path.empty())
            throw std::runtime_error("--regions-out needs --blocks");
        const auto blocks = parse_blocks_manifest(read_file(blocks_path));
        if (blocks.size() != preds.size())
            throw std::runtime_error(
                "block manifest has " + std::to_string(blocks.size()) +
                " entries but the feature table has " + std::to_string(preds.size()));
        std::vector<RegionSpec> regions;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            regions.push_back({static_cast<RegionClass>(preds[i]),
                               blocks[i].box(),
                               {}});
        write_file_atomic(regions_out, region_list_json(regions));
    }
    return 0;
}

int cmd_evaluate(const std::string& model_dir, const std::string& in_path,
                 const std::string& report_out) {
    const OvOClassifier model = load_bundle(model_dir);
    const Dataset ds = read_csv(read_file(in_path));
    if (!ds.labeled()) throw std::runtime_error("evaluate needs a labeled CSV");

    const std::string report = format_report(evaluate_multiclass(model, ds));
    if (!report_out.empty()) write_file_atomic(report_out, report);
    std::fputs(report.c_str(), stdout);
    return 0;
}

int cmd_render(const std::string& in_path, const std::string& regions_path,
               const std::string& out_path) {
    const GrayImage gray = decode_image(read_file(in_path));
    const auto regions = parse_region_list(read_file(regions_path));

    RgbImage rgb = RgbImage::from_gray(gray);
    const auto put = [&rgb](int r, int c, const std::array<std::uint8_t, 3>& col) {
        if (r < 0 || r >= rgb.height || c < 0 || c >= rgb.width) return;
        const std::size_t off = 3 * (static_cast<std::size_t>(r) * rgb.width + c);
        rgb.pixels[off] = col[0];
        rgb.pixels[off + 1] = col[1];
        rgb.pixels[off + 2] = col[2];
    };
    constexpr std::array<std::array<std::uint8_t, 3>, kNumClasses> colors = {
        {{0, 160, 0}, {0, 64, 224}, {200, 0, 200}, {224, 32, 32}}};

    for (const RegionSpec& reg : regions) {
        const auto& col = colors[static_cast<int>(reg.cls)];
        const Box& b = reg.box;
        for (int t = 0; t < 3; ++t) {
            for (int c = b.col_min; c <= b.col_max; ++c) {
                put(b.row_min + t, c, col);
                put(b.row_max - t, c, col);
            }
            for (int r = b.row_min; r <= b.row_max; ++r) {
                put(r, b.col_min + t, col);
                put(r, b.col_max - t, col);
            }
        }
    }
    write_file_atomic(out_path, encode_ppm(rgb));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Document page segmentation and region classification"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "generate synthetic labeled pages");
    std::string synth_out;
    int synth_pages = 1;
    std::uint64_t synth_seed = 1;
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--pages", synth_pages, "number of pages")
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "master seed")->capture_default_str();

    auto* segment = app.add_subcommand("segment", "segment a page into blocks");
    std::string seg_in, seg_blocks, seg_mask, seg_features;
    PipelineOptions seg_po;
    segment->add_option("--in", seg_in, "input PGM/PBM page")->required();
    segment->add_option("--blocks-out", seg_blocks, "block manifest JSON");
    segment->add_option("--mask-out", seg_mask, "smeared mask PBM");
    segment->add_option("--features-out", seg_features, "unlabeled feature CSV");
    seg_po.attach(segment);

    auto* features = app.add_subcommand(
        "features", "extract labeled features using ground truth");
    std::string feat_in, feat_truth, feat_out;
    PipelineOptions feat_po;
    features->add_option("--in", feat_in, "input PGM/PBM page")->required();
    features->add_option("--truth", feat_truth, "ground-truth region JSON")
        ->required();
    features->add_option("--out", feat_out, "labeled feature CSV")->required();
    feat_po.attach(features);

    auto* train = app.add_subcommand("train", "train the pairwise models");
    std::string train_csv, test_csv, model_out, train_cfg, train_report;
    std::uint64_t train_seed = 0;
    train->add_option("--train", train_csv, "labeled training CSV")->required();
    train->add_option("--test", test_csv, "labeled test CSV")->required();
    train->add_option("--model-out", model_out, "model bundle directory")
        ->required();
    train->add_option("--config", train_cfg, "key = value config file");
    auto* train_seed_opt =
        train->add_option("--seed", train_seed, "evolution seed");
    train->add_option("--report-out", train_report, "also write the report here");

    auto* predict_cmd = app.add_subcommand("predict", "classify feature rows");
    std::string pred_model, pred_in, pred_out, pred_blocks, pred_regions;
    predict_cmd->add_option("--model", pred_model, "model bundle directory")
        ->required();
    predict_cmd->add_option("--in", pred_in, "feature CSV")->required();
    predict_cmd->add_option("--out", pred_out, "predicted labels, one per line");
    predict_cmd->add_option("--blocks", pred_blocks, "block manifest JSON");
    predict_cmd->add_option("--regions-out", pred_regions,
                            "classified regions JSON");

    auto* evaluate = app.add_subcommand("evaluate", "report accuracy on a CSV");
    std::string eval_model, eval_in, eval_report;
    evaluate->add_option("--model", eval_model, "model bundle directory")
        ->required();
    evaluate->add_option("--in", eval_in, "labeled feature CSV")->required();
    evaluate->add_option("--report-out", eval_report, "also write the report here");

    auto* render = app.add_subcommand("render", "draw classified region boxes");
    std::string render_in, render_regions, render_out;
    render->add_option("--in", render_in, "input PGM/PBM page")->required();
    render->add_option("--regions", render_regions, "region JSON")->required();
    render->add_option("--out", render_out, "overlay PPM")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*synth) return cmd_synth(synth_out, synth_pages, synth_seed);
        if (*segment)
            return cmd_segment(seg_in, seg_po, seg_blocks, seg_mask, seg_features);
        if (*features) return cmd_features(feat_in, feat_truth, feat_po, feat_out);
        if (*train)
            return cmd_train(train_csv, test_csv, model_out, train_cfg,
                             train_seed_opt, train_seed, train_report);
        if (*predict_cmd)
            return cmd_predict(pred_model, pred_in, pred_out, pred_blocks,
                               pred_regions);
        if (*evaluate) return cmd_evaluate(eval_model, eval_in, eval_report);
        if (*render) return cmd_render(render_in, render_regions, render_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
