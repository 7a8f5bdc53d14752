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

#ifndef DOCSEG_OVO_HPP
#define DOCSEG_OVO_HPP

#include <array>
#include <string>
#include <utility>

#include "docseg/corpus.hpp"
#include "docseg/lgp.hpp"

namespace docseg {

/// The six unordered class pairs, in fixed order. Within pair (i,j) the
/// binary model outputs class 1 for j and class 0 for i.
inline constexpr std::array<std::pair<int, int>, 6> kClassPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct OvOClassifier {
    std::array<Program, kClassPairs.size()> models;
};

/// Trains one binary model per class pair. Every class must appear at least
/// twice in the data.
OvOClassifier train_ovo(const Dataset& data, const EvolveConfig& cfg);

std::array<int, kNumClasses> vote_counts(const OvOClassifier& c,
                                         const FeatureVector& fv);

/// Majority vote over the six pairwise models; ties go to the smallest
/// class code.
int predict(const OvOClassifier& c, const FeatureVector& fv);

struct MulticlassEval {
    std::array<std::array<long long, kNumClasses>, kNumClasses> confusion{};
    long long correct = 0;
    long long total = 0;
    double accuracy = 0;
};

/// Confusion matrix with true classes as rows, plus trace/total accuracy.
MulticlassEval evaluate_multiclass(const OvOClassifier& c, const Dataset& data);

std::string format_report(const MulticlassEval& ev);

/// Bundle layout: <dir>/pair_<i>_<j>.lgp for each pair plus <dir>/manifest.json.
void save_bundle(const OvOClassifier& c, const std::string& dir);
OvOClassifier load_bundle(const std::string& dir);

} // namespace docseg

#endif
