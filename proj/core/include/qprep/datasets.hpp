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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qprep/encoding.hpp"

namespace qprep {

struct LabeledDataset {
  std::vector<Image> images;
  std::vector<int> labels;
  std::vector<std::string> class_names;

  std::size_t size() const { return images.size(); }
  int n_classes() const { return static_cast<int>(class_names.size()); }
  LabeledDataset subset(std::span<const std::size_t> indices) const;
  /// Throws std::invalid_argument on length mismatch or out-of-range labels.
  void validate() const;
};

/// IDX images (magic 0x00000803) and labels (magic 0x00000801); big-endian
/// header, unsigned byte pixels scaled by 1/255. Throws std::runtime_error on
/// bad magic, truncated files or count mismatch.
LabeledDataset load_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path);

/// Pixels are written as round(255 * clamp(x, 0, 1)).
void write_idx(const LabeledDataset& ds, const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path);

/// Two-class 8x8 binary images: class 0 is a 4x4 hollow square outline,
/// class 1 a 4x4 plus sign two pixels thick (each covers 12 pixels). The
/// top-left corner is uniform over the 5x5 placements that keep the shape on
/// the grid. Labels alternate so class counts differ by at most one.
/// Throws std::invalid_argument for n_examples < 2.
LabeledDataset generate_shapes(std::size_t n_examples, uint64_t seed);

struct DatasetSplit {
  LabeledDataset train;
  LabeledDataset validation;
  LabeledDataset test;
};

/// Seeded shuffle, then consecutive slices of round(f0*n) and round(f1*n)
/// items; the test slice takes the remainder. Throws std::invalid_argument
/// unless the fractions are non-negative and sum to 1.
DatasetSplit split(const LabeledDataset& ds, std::array<double, 3> fractions, uint64_t seed);

/// Keeps the listed classes (relabelled 0..k-1 in the given order), at most
/// `max_items` overall, preserving file order.
LabeledDataset filter_classes(const LabeledDataset& ds, const std::vector<int>& classes,
                              std::size_t max_items = SIZE_MAX);

/// "label,p0,p1,..." per line.
void write_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path);
/// One PGM per image, named <index>_<label>.pgm.
void write_dataset_pgm(const LabeledDataset& ds, const std::filesystem::path& dir);

}  // namespace qprep
