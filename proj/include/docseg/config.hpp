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

#ifndef DOCSEG_CONFIG_HPP
#define DOCSEG_CONFIG_HPP

#include <string_view>

#include "docseg/lgp.hpp"
#include "docseg/rlsa.hpp"

namespace docseg {

/// Everything a pipeline run can tune, with defaults.
struct RunConfig {
    EvolveConfig evolve;
    RlsaParams rlsa;
    double active_k = 1.0;      // threshold factor for the active-pixels feature
    long despeckle_area = 4;    // components this small are dropped as noise
};

/// Parses `key = value` lines ('#' starts a comment). Unknown keys and
/// out-of-range values are errors.
RunConfig parse_run_config(std::string_view text);

} // namespace docseg

#endif
