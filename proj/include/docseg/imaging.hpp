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

#ifndef DOCSEG_IMAGING_HPP
#define DOCSEG_IMAGING_HPP

#include "docseg/image.hpp"

namespace docseg {

/// Global threshold maximizing between-class variance of the 256-bin
/// histogram. Ties pick the smallest threshold; a constant image yields
/// intensity-1 (clamped to 0) so blank pages binarize to all white.
int otsu_threshold(const GrayImage& img);

/// Pixel becomes black (1) iff its intensity <= t.
BinaryImage binarize(const GrayImage& img, int t);

/// Erase every 8-connected black component of at most max_noise_area pixels.
BinaryImage despeckle(const BinaryImage& img, long max_noise_area);

} // namespace docseg

#endif
