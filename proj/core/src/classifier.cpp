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

#include "qprep/classifier.hpp"

#include <stdexcept>

namespace qprep {

int Classifier::predict(const Image& x) const { return argmax(probabilities(x)); }

RVec Classifier::loss_gradient(const Image&, int) const {
  throw std::logic_error("classifier '" + name() + "' has no input gradient");
}

RVec SurrogateClassifier::probabilities(const Image& x) const {
  return surrogate_probabilities(model_, x.pixels);
}

RVec SurrogateClassifier::loss_gradient(const Image& x, int label) const {
  return surrogate_gradient(model_, x.pixels, label);
}

QvcClassifier::QvcClassifier(std::string name, QvcModel model, EncodingMode mode, int width,
                             int height, std::shared_ptr<CachedPreparer> preparer)
    : name_(std::move(name)),
      model_(std::move(model)),
      mode_(mode),
      width_(width),
      height_(height),
      preparer_(std::move(preparer)) {
  model_.validate();
  if (encoded_qubits(input_size(), mode_) != model_.n_qubits) {
    throw std::invalid_argument("QvcClassifier: image size does not match the model's qubits");
  }
}

Statevector QvcClassifier::input_state(const Image& x) const {
  if (x.width != width_ || x.height != height_) {
    throw std::invalid_argument("QvcClassifier: image dimensions mismatch");
  }
  Statevector encoded = amplitude_encode(x, mode_);
  if (!preparer_) return encoded;
  return preparer_->get(encoded).prepared;
}

RVec QvcClassifier::probabilities(const Image& x) const {
  return class_probabilities(model_, input_state(x));
}

RVec QvcClassifier::loss_gradient(const Image& x, int label) const {
  if (preparer_) return Classifier::loss_gradient(x, label);
  return input_gradient(model_, x, label, mode_);
}

}  // namespace qprep
