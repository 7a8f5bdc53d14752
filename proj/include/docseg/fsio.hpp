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

#ifndef DOCSEG_FSIO_HPP
#define DOCSEG_FSIO_HPP

#include <string>
#include <string_view>

namespace docseg {

std::string read_file(const std::string& path);

/// Writes to a sibling temp file, then renames into place, so a failed run
/// never leaves a partial file at the destination.
void write_file_atomic(const std::string& path, std::string_view content);

} // namespace docseg

#endif
