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

#include "qprep/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qprep/rng.hpp"

namespace qprep {

namespace {

struct Slot {
  std::size_t amp;
  bool imag;
};

void check_shape(int width, int height, EncodingMode mode) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("image dimensions must be positive");
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (mode == EncodingMode::HorizontalPair && count % 2) {
    throw std::invalid_argument("horizontal_pair encoding needs an even pixel count");
  }
  if (mode == EncodingMode::VerticalPair && height % 2) {
    throw std::invalid_argument("vertical_pair encoding needs an even image height");
  }
}

Slot slot_of(std::size_t k, int width, EncodingMode mode) {
  switch (mode) {
    case EncodingMode::HorizontalPair: return {k / 2, (k % 2) == 1};
    case EncodingMode::VerticalPair: {
      const std::size_t r = k / width, c = k % width;
      return {(r / 2) * width + c, (r % 2) == 1};
    }
    case EncodingMode::Conventional: break;
  }
  return {k, false};
}

}  // namespace

Image::Image(int w, int h, RVec px) : width(w), height(h), pixels(std::move(px)) {
  if (w < 0 || h < 0 || pixels.size() != static_cast<std::size_t>(w) * h) {
    throw std::invalid_argument("Image: pixel count does not match " + std::to_string(w) + "x" +
                                std::to_string(h));
  }
}

std::string_view encoding_mode_name(EncodingMode mode) {
  switch (mode) {
    case EncodingMode::HorizontalPair: return "horizontal_pair";
    case EncodingMode::VerticalPair: return "vertical_pair";
    case EncodingMode::Conventional: return "conventional";
  }
  return "?";
}

EncodingMode encoding_mode_from_name(std::string_view name) {
  for (EncodingMode m :
       {EncodingMode::HorizontalPair, EncodingMode::VerticalPair, EncodingMode::Conventional}) {
    if (encoding_mode_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown encoding mode '" + std::string(name) + "'");
}

int encoded_qubits(std::size_t pixel_count, EncodingMode mode) {
  std::size_t amps = mode == EncodingMode::Conventional ? pixel_count : (pixel_count + 1) / 2;
  amps = std::max<std::size_t>(amps, 2);
  return std::bit_width(amps - 1);
}

Statevector amplitude_encode(const Image& image, EncodingMode mode) {
  check_shape(image.width, image.height, mode);
  double norm2 = 0.0;
  for (double p : image.pixels) norm2 += p * p;
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw std::invalid_argument("amplitude_encode: image has zero norm");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  const int n = encoded_qubits(image.size(), mode);
  CVec amps(std::size_t{1} << n, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < image.size(); ++k) {
    const Slot s = slot_of(k, image.width, mode);
    const double v = image.pixels[k] * inv;
    if (s.imag) {
      amps[s.amp].imag(v);
    } else {
      amps[s.amp].real(v);
    }
  }
  return Statevector::from_amplitudes(std::move(amps), true);
}

Image decode_raw(const Statevector& state, EncodingMode mode, int width, int height) {
  check_shape(width, height, mode);
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (encoded_qubits(count, mode) != state.n_qubits()) {
    throw std::invalid_argument("decode: " + std::to_string(width) + "x" + std::to_string(height) +
                                " image does not match a " + std::to_string(state.n_qubits()) +
                                "-qubit state");
  }
  Image out(width, height);
  for (std::size_t k = 0; k < count; ++k) {
    const Slot s = slot_of(k, width, mode);
    out.pixels[k] = s.imag ? state[s.amp].imag() : state[s.amp].real();
  }
  return out;
}

Image decode_image(const Statevector& state, EncodingMode mode, int width, int height) {
  Image out = decode_raw(state, mode, width, height);
  const double peak = *std::max_element(out.pixels.begin(), out.pixels.end());
  for (double& p : out.pixels) p = peak > 0.0 ? std::max(0.0, p / peak) : 0.0;
  return out;
}

RVec encode_vjp(const Image& image, EncodingMode mode, std::span<const cplx> cot) {
  const Statevector psi = amplitude_encode(image, mode);
  if (cot.size() != psi.dim()) throw std::invalid_argument("encode_vjp: cotangent size mismatch");
  double norm2 = 0.0;
  for (double p : image.pixels) norm2 += p * p;
  const double norm = std::sqrt(norm2);
  double overlap = 0.0;
  for (std::size_t j = 0; j < psi.dim(); ++j) overlap += std::real(std::conj(cot[j]) * psi[j]);
  RVec grad(image.size());
  for (std::size_t k = 0; k < image.size(); ++k) {
    const Slot s = slot_of(k, image.width, mode);
    const double direct = s.imag ? cot[s.amp].imag() : cot[s.amp].real();
    grad[k] = 2.0 / norm * (direct - overlap * image.pixels[k] / norm);
  }
  return grad;
}

Image add_uniform_noise(const Image& image, double strength, uint64_t seed) {
  if (!(strength >= 0.0)) throw std::invalid_argument("add_uniform_noise: strength must be >= 0");
  Image out = image;
  if (strength == 0.0) return out;
  Rng rng(seed);
  for (double& p : out.pixels) p += rng.uniform(-strength, strength);
  return out;
}

}  // namespace qprep
