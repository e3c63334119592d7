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

#include <cstdint>
#include <span>
#include <string_view>

#include "qprep/statevector.hpp"

namespace qprep {

/// Grayscale image, row-major, nominal intensities in [0, 1]. Perturbed
/// images may leave that range; nothing here clips them.
struct Image {
  int width = 0;
  int height = 0;
  RVec pixels;

  Image() = default;
  Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0.0) {}
  Image(int w, int h, RVec px);

  double& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  double at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t size() const { return pixels.size(); }

  bool operator==(const Image&) const = default;
};

enum class EncodingMode {
  /// amplitude j = x_{2j} + i x_{2j+1} over the row-major flattening.
  HorizontalPair,
  /// amplitude (r/2)*width + c = x_{r,c} + i x_{r+1,c} for even r.
  VerticalPair,
  /// amplitude j = x_j.
  Conventional,
};

std::string_view encoding_mode_name(EncodingMode mode);
EncodingMode encoding_mode_from_name(std::string_view name);

/// Qubits needed for an image of `pixel_count` pixels (at least 1).
int encoded_qubits(std::size_t pixel_count, EncodingMode mode);

/// Normalized amplitude encoding, zero-padded to the next power of two.
/// Throws std::invalid_argument for all-zero images or mode/shape mismatch
/// (odd pixel count for HorizontalPair, odd height for VerticalPair).
Statevector amplitude_encode(const Image& image, EncodingMode mode);

/// Raw inverse of the packing map: pixel values read straight from the real
/// and imaginary parts, no rescaling.
Image decode_raw(const Statevector& state, EncodingMode mode, int width, int height);

/// decode_raw, rescaled so the maximum pixel is 1, negatives clipped to 0.
/// Throws std::invalid_argument if the dimensions do not fit the state.
Image decode_image(const Statevector& state, EncodingMode mode, int width, int height);

/// Pull-back of a state cotangent through amplitude_encode: given `cot` with
/// dL = 2 Re<cot|d psi>, returns dL/dx for every pixel, including the
/// normalization's contribution.
RVec encode_vjp(const Image& image, EncodingMode mode, std::span<const cplx> cot);

/// Adds independent Uniform[-strength, strength] draws to every pixel.
/// Throws std::invalid_argument for negative strength.
Image add_uniform_noise(const Image& image, double strength, uint64_t seed);

}  // namespace qprep
