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

#include "qprep/image_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qprep {

void write_pgm(const std::filesystem::path& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path.string());
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  for (double p : image.pixels) {
    const double v = std::clamp(std::isfinite(p) ? p : 0.0, 0.0, 1.0);
    out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
  }
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path.string());
  auto token = [&]() {
    std::string t;
    for (;;) {
      in >> std::ws;
      if (in.peek() == '#') {
        std::string comment;
        std::getline(in, comment);
        continue;
      }
      in >> t;
      return t;
    }
  };
  if (token() != "P5") throw std::runtime_error("read_pgm: only binary P5 files are supported");
  const int w = std::stoi(token()), h = std::stoi(token()), maxval = std::stoi(token());
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
    throw std::runtime_error("read_pgm: unsupported header in " + path.string());
  }
  in.get();
  Image img(w, h);
  for (double& p : img.pixels) {
    const int c = in.get();
    if (c == EOF) throw std::runtime_error("read_pgm: truncated file " + path.string());
    p = static_cast<double>(c) / maxval;
  }
  return img;
}

std::string image_to_csv_row(const Image& image) {
  std::string out;
  char buf[32];
  for (std::size_t k = 0; k < image.size(); ++k) {
    if (k) out.push_back(',');
    const auto res = std::to_chars(buf, buf + sizeof buf, image.pixels[k]);
    out.append(buf, res.ptr);
  }
  return out;
}

Image image_from_csv_row(const std::string& line, int width, int height) {
  RVec px;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    double v = 0.0;
    const char* first = cell.data();
    while (first < cell.data() + cell.size() && *first == ' ') ++first;
    const auto res = std::from_chars(first, cell.data() + cell.size(), v);
    if (res.ec != std::errc()) throw std::invalid_argument("image csv: bad value '" + cell + "'");
    px.push_back(v);
  }
  return Image(width, height, std::move(px));
}

}  // namespace qprep
