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

#ifndef DOCSEG_RLSA_HPP
#define DOCSEG_RLSA_HPP

#include "docseg/image.hpp"

namespace docseg {

struct RlsaParams {
    int h_threshold = 300;
    int v_threshold = 280;
    int final_threshold = 30;
};

/// Fill every maximal white run of length <= threshold within each row,
/// border runs included. Black pixels are never touched.
BinaryImage smear_rows(const BinaryImage& img, int threshold);

/// Same rule applied within each column.
BinaryImage smear_cols(const BinaryImage& img, int threshold);

/// Pixelwise conjunction. Throws std::invalid_argument on dimension mismatch.
BinaryImage and_combine(const BinaryImage& a, const BinaryImage& b);

/// smear_rows(h) AND smear_cols(v), then a final horizontal smear.
BinaryImage rlsa_segment(const BinaryImage& img, const RlsaParams& p);

} // namespace docseg

#endif
