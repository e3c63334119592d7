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

#include "qprep/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <stdexcept>

#include "qprep/image_io.hpp"
#include "qprep/rng.hpp"

namespace qprep {

namespace {

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

uint32_t read_be32(const std::vector<unsigned char>& b, std::size_t off, const std::string& what) {
  if (off + 4 > b.size()) throw std::runtime_error(what + ": truncated header");
  return (uint32_t{b[off]} << 24) | (uint32_t{b[off + 1]} << 16) | (uint32_t{b[off + 2]} << 8) |
         uint32_t{b[off + 3]};
}

void write_be32(std::ofstream& out, uint32_t v) {
  const char bytes[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                         static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(bytes, 4);
}

}  // namespace

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.class_names = class_names;
  out.images.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw std::out_of_range("LabeledDataset::subset: index out of range");
    out.images.push_back(images[i]);
    out.labels.push_back(labels[i]);
  }
  return out;
}

void LabeledDataset::validate() const {
  if (images.size() != labels.size()) throw std::invalid_argument("dataset: images/labels length mismatch");
  for (int l : labels) {
    if (l < 0 || l >= n_classes()) throw std::invalid_argument("dataset: label out of range");
  }
}

LabeledDataset load_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path) {
  const auto ib = read_file(images_path);
  const auto lb = read_file(labels_path);
  const std::string iname = images_path.string(), lname = labels_path.string();
  if (read_be32(ib, 0, iname) != 0x00000803u) throw std::runtime_error(iname + ": bad IDX image magic");
  if (read_be32(lb, 0, lname) != 0x00000801u) throw std::runtime_error(lname + ": bad IDX label magic");
  const std::size_t count = read_be32(ib, 4, iname);
  const int rows = static_cast<int>(read_be32(ib, 8, iname));
  const int cols = static_cast<int>(read_be32(ib, 12, iname));
  const std::size_t n_labels = read_be32(lb, 4, lname);
  if (count != n_labels) throw std::runtime_error("IDX image/label count mismatch");
  const std::size_t px = static_cast<std::size_t>(rows) * cols;
  if (ib.size() < 16 + count * px) throw std::runtime_error(iname + ": truncated image data");
  if (lb.size() < 8 + count) throw std::runtime_error(lname + ": truncated label data");
  LabeledDataset ds;
  ds.images.reserve(count);
  ds.labels.reserve(count);
  int max_label = -1;
  for (std::size_t k = 0; k < count; ++k) {
    RVec pixels(px);
    for (std::size_t i = 0; i < px; ++i) pixels[i] = ib[16 + k * px + i] / 255.0;
    ds.images.emplace_back(cols, rows, std::move(pixels));
    ds.labels.push_back(lb[8 + k]);
    max_label = std::max(max_label, static_cast<int>(lb[8 + k]));
  }
  for (int c = 0; c <= max_label; ++c) ds.class_names.push_back(std::to_string(c));
  return ds;
}

void write_idx(const LabeledDataset& ds, const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path) {
  ds.validate();
  if (ds.size() == 0) throw std::invalid_argument("write_idx: empty dataset");
  const int w = ds.images.front().width, h = ds.images.front().height;
  std::ofstream im(images_path, std::ios::binary), lab(labels_path, std::ios::binary);
  if (!im || !lab) throw std::runtime_error("write_idx: cannot open output files");
  write_be32(im, 0x00000803u);
  write_be32(im, static_cast<uint32_t>(ds.size()));
  write_be32(im, static_cast<uint32_t>(h));
  write_be32(im, static_cast<uint32_t>(w));
  write_be32(lab, 0x00000801u);
  write_be32(lab, static_cast<uint32_t>(ds.size()));
  for (std::size_t k = 0; k < ds.size(); ++k) {
    const Image& img = ds.images[k];
    if (img.width != w || img.height != h) throw std::invalid_argument("write_idx: mixed image sizes");
    for (double p : img.pixels) {
      im.put(static_cast<char>(std::lround(std::clamp(p, 0.0, 1.0) * 255.0)));
    }
    lab.put(static_cast<char>(ds.labels[k]));
  }
}

LabeledDataset generate_shapes(std::size_t n_examples, uint64_t seed) {
  if (n_examples < 2) throw std::invalid_argument("generate_shapes: need at least two examples");
  constexpr int kGrid = 8, kSize = 4;
  Rng rng(seed);
  LabeledDataset ds;
  ds.class_names = {"square", "cross"};
  for (std::size_t k = 0; k < n_examples; ++k) {
    const int label = static_cast<int>(k % 2);
    const int r0 = static_cast<int>(rng.index(kGrid - kSize + 1));
    const int c0 = static_cast<int>(rng.index(kGrid - kSize + 1));
    Image img(kGrid, kGrid);
    for (int r = 0; r < kSize; ++r) {
      for (int c = 0; c < kSize; ++c) {
        const bool edge = r == 0 || r == kSize - 1 || c == 0 || c == kSize - 1;
        const bool bar = r == 1 || r == 2 || c == 1 || c == 2;
        if (label == 0 ? edge : bar) img.at(r0 + r, c0 + c) = 1.0;
      }
    }
    ds.images.push_back(std::move(img));
    ds.labels.push_back(label);
  }
  return ds;
}

DatasetSplit split(const LabeledDataset& ds, std::array<double, 3> fractions, uint64_t seed) {
  for (double f : fractions) {
    if (!(f >= 0.0)) throw std::invalid_argument("split: fractions must be non-negative");
  }
  if (std::abs(fractions[0] + fractions[1] + fractions[2] - 1.0) > 1e-9) {
    throw std::invalid_argument("split: fractions must sum to 1");
  }
  const std::size_t n = ds.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  const std::size_t n0 = std::min<std::size_t>(n, std::llround(fractions[0] * n));
  const std::size_t n1 = std::min<std::size_t>(n - n0, std::llround(fractions[1] * n));
  const std::span<const std::size_t> all(order);
  return {ds.subset(all.subspan(0, n0)), ds.subset(all.subspan(n0, n1)),
          ds.subset(all.subspan(n0 + n1))};
}

LabeledDataset filter_classes(const LabeledDataset& ds, const std::vector<int>& classes,
                              std::size_t max_items) {
  LabeledDataset out;
  for (int c : classes) {
    if (c < 0 || c >= ds.n_classes()) throw std::invalid_argument("filter_classes: unknown class");
    out.class_names.push_back(ds.class_names[c]);
  }
  for (std::size_t i = 0; i < ds.size() && out.size() < max_items; ++i) {
    const auto it = std::find(classes.begin(), classes.end(), ds.labels[i]);
    if (it == classes.end()) continue;
    out.images.push_back(ds.images[i]);
    out.labels.push_back(static_cast<int>(it - classes.begin()));
  }
  return out;
}

void write_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_dataset_csv: cannot open " + path.string());
  out << "label,pixels\n";
  for (std::size_t i = 0; i < ds.size(); ++i) out << ds.labels[i] << "," << image_to_csv_row(ds.images[i]) << "\n";
}

void write_dataset_pgm(const LabeledDataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  char name[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::snprintf(name, sizeof name, "%05zu_%d.pgm", i, ds.labels[i]);
    write_pgm(dir / name, ds.images[i]);
  }
}

}  // namespace qprep
