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

#include "docseg/ovo.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "json.hpp"

#include "docseg/fsio.hpp"
#include "docseg/rng.hpp"

namespace docseg {

namespace {

std::string pair_file(int i, int j) {
    return "pair_" + std::to_string(i) + "_" + std::to_string(j) + ".lgp";
}

} // namespace

OvOClassifier train_ovo(const Dataset& data, const EvolveConfig& cfg) {
    if (!data.labeled())
        throw std::invalid_argument("train_ovo: dataset has no labels");

    std::array<long long, kNumClasses> counts{};
    for (int label : data.labels) {
        if (label < 0 || label >= kNumClasses)
            throw std::invalid_argument("train_ovo: label out of range");
        ++counts[label];
    }
    for (int c = 0; c < kNumClasses; ++c) {
        if (counts[c] < 2)
            throw std::invalid_argument(
                "train_ovo: class '" +
                std::string(class_name(static_cast<RegionClass>(c))) + "' has " +
                std::to_string(counts[c]) + " instance(s), need at least 2");
    }

    OvOClassifier out;
    for (std::size_t p = 0; p < kClassPairs.size(); ++p) {
        const auto [i, j] = kClassPairs[p];
        LabeledData sub;
        sub.n_inputs = kFeatureCount;
        for (std::size_t r = 0; r < data.size(); ++r) {
            const int label = data.labels[r];
            if (label != i && label != j) continue;
            sub.add(data.rows[r].as_array(), label == j ? 1 : 0);
        }
        EvolveConfig pair_cfg = cfg;
        pair_cfg.rng_seed = splitmix64(cfg.rng_seed + p + 1);
        out.models[p] = evolve(sub, pair_cfg).program;
    }
    return out;
}

std::array<int, kNumClasses> vote_counts(const OvOClassifier& c,
                                         const FeatureVector& fv) {
    const auto inputs = fv.as_array();
    std::array<int, kNumClasses> votes{};
    for (std::size_t p = 0; p < kClassPairs.size(); ++p) {
        const auto [i, j] = kClassPairs[p];
        ++votes[classify_binary(c.models[p], inputs) ? j : i];
    }
    return votes;
}

int predict(const OvOClassifier& c, const FeatureVector& fv) {
    const auto votes = vote_counts(c, fv);
    int best = 0;
    for (int cls = 1; cls < kNumClasses; ++cls)
        if (votes[cls] > votes[best]) best = cls;
    return best;
}

MulticlassEval evaluate_multiclass(const OvOClassifier& c, const Dataset& data) {
    if (!data.labeled())
        throw std::invalid_argument("evaluate_multiclass: dataset has no labels");
    if (data.size() == 0)
        throw std::invalid_argument("evaluate_multiclass: empty dataset");

    MulticlassEval ev;
    for (std::size_t r = 0; r < data.size(); ++r) {
        const int truth = data.labels[r];
        if (truth < 0 || truth >= kNumClasses)
            throw std::invalid_argument("evaluate_multiclass: label out of range");
        const int pred = predict(c, data.rows[r]);
        ++ev.confusion[truth][pred];
        if (pred == truth) ++ev.correct;
        ++ev.total;
    }
    ev.accuracy = static_cast<double>(ev.correct) / static_cast<double>(ev.total);
    return ev;
}

std::string format_report(const MulticlassEval& ev) {
    char buf[96];
    std::string out;

    const auto line = [&](const char* name, const std::string& value) {
        std::snprintf(buf, sizeof buf, "%-31s:%8s\n", name, value.c_str());
        out += buf;
    };
    line("Correctly classified instances ", std::to_string(ev.correct));
    line("Incorrectly classified instances", std::to_string(ev.total - ev.correct));
    std::snprintf(buf, sizeof buf, "%.1f%%", ev.accuracy * 100.0);
    line("Prediction Accuracy ", buf);
    line("Total number of instances ", std::to_string(ev.total));

    out += "\nconfusion matrix\n-----\n";
    for (int c = 0; c < kNumClasses; ++c) {
        std::snprintf(buf, sizeof buf, "%-7c", static_cast<char>('a' + c));
        out += buf;
    }
    out += "<--classified as\n";
    for (int row = 0; row < kNumClasses; ++row) {
        for (int col = 0; col < kNumClasses; ++col) {
            std::snprintf(buf, sizeof buf, "%-7lld", ev.confusion[row][col]);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "| %c=%s\n", static_cast<char>('a' + row),
                      std::string(class_name(static_cast<RegionClass>(row))).c_str());
        out += buf;
    }
    return out;
}

void save_bundle(const OvOClassifier& c, const std::string& dir) {
    std::filesystem::create_directories(dir);

    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t p = 0; p < kClassPairs.size(); ++p) {
        const auto [i, j] = kClassPairs[p];
        pairs.push_back(
            {{"file", pair_file(i, j)},
             {"class_0", std::string(class_name(static_cast<RegionClass>(i)))},
             {"class_1", std::string(class_name(static_cast<RegionClass>(j)))}});
        write_file_atomic(dir + "/" + pair_file(i, j), serialize_program(c.models[p]));
    }

    nlohmann::json classes = nlohmann::json::object();
    for (int cls = 0; cls < kNumClasses; ++cls)
        classes[std::string(class_name(static_cast<RegionClass>(cls)))] = cls;

    const nlohmann::json manifest = {{"feature_count", kFeatureCount},
                                     {"features", feature_names()},
                                     {"classes", std::move(classes)},
                                     {"pairs", std::move(pairs)}};
    write_file_atomic(dir + "/manifest.json", manifest.dump(2) + "\n");
}

OvOClassifier load_bundle(const std::string& dir) {
    const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
    if (manifest.at("feature_count").get<int>() != kFeatureCount)
        throw std::runtime_error("model bundle: wrong feature count");
    const auto names = manifest.at("features").get<std::vector<std::string>>();
    const auto& expect = feature_names();
    if (names.size() != expect.size() ||
        !std::equal(names.begin(), names.end(), expect.begin()))
        throw std::runtime_error("model bundle: unexpected feature order");

    OvOClassifier c;
    for (std::size_t p = 0; p < kClassPairs.size(); ++p) {
        const auto [i, j] = kClassPairs[p];
        c.models[p] = parse_program(read_file(dir + "/" + pair_file(i, j)));
        if (c.models[p].n_inputs != kFeatureCount)
            throw std::runtime_error("model bundle: " + pair_file(i, j) +
                                     " expects " +
                                     std::to_string(c.models[p].n_inputs) +
                                     " inputs");
    }
    return c;
}

} // namespace docseg
