// Copyright 2026 The qprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qprep/encoding.hpp"

namespace qprep {

/// Binary PGM (P5, maxval 255). Pixels are clamped to [0, 1] and rounded.
void write_pgm(const std::filesystem::path& path, const Image& image);
Image read_pgm(const std::filesystem::path& path);

/// One image per line: comma-separated row-major pixels, printed with
/// round-trip precision.
std::string image_to_csv_row(const Image& image);
Image image_from_csv_row(const std::string& line, int width, int height);

}  // namespace qprep
