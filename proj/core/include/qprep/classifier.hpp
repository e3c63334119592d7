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

#include <memory>
#include <string>

#include "qprep/encoding.hpp"
#include "qprep/preparer.hpp"
#include "qprep/qvc.hpp"
#include "qprep/surrogate.hpp"

namespace qprep {

/// A model that maps raw images to class probabilities. Attack sources must
/// also provide input gradients.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::string name() const = 0;
  virtual std::size_t input_size() const = 0;
  virtual int n_classes() const = 0;
  virtual RVec probabilities(const Image& x) const = 0;

  /// argmax of probabilities, lowest index on ties.
  virtual int predict(const Image& x) const;

  virtual bool has_input_gradient() const { return false; }
  /// d(-log p(label | x)) / dx. The default throws std::logic_error.
  virtual RVec loss_gradient(const Image& x, int label) const;
};

class SurrogateClassifier final : public Classifier {
 public:
  SurrogateClassifier(std::string name, SurrogateModel model)
      : name_(std::move(name)), model_(std::move(model)) {}

  std::string name() const override { return name_; }
  std::size_t input_size() const override { return static_cast<std::size_t>(model_.n_inputs); }
  int n_classes() const override { return model_.n_classes; }
  RVec probabilities(const Image& x) const override;
  bool has_input_gradient() const override { return true; }
  RVec loss_gradient(const Image& x, int label) const override;

  const SurrogateModel& model() const { return model_; }

 private:
  std::string name_;
  SurrogateModel model_;
};

/// Encoder + optional approximate state preparation + QVC. Without a
/// preparer the encoded state is used exactly and input gradients are
/// available; with one, every input is re-prepared (memoized by content).
class QvcClassifier final : public Classifier {
 public:
  QvcClassifier(std::string name, QvcModel model, EncodingMode mode, int width, int height,
                std::shared_ptr<CachedPreparer> preparer = nullptr);

  std::string name() const override { return name_; }
  std::size_t input_size() const override {
    return static_cast<std::size_t>(width_) * height_;
  }
  int n_classes() const override { return model_.n_classes; }
  RVec probabilities(const Image& x) const override;
  bool has_input_gradient() const override { return preparer_ == nullptr; }
  RVec loss_gradient(const Image& x, int label) const override;

  /// The state fed to the classifier circuit.
  Statevector input_state(const Image& x) const;

  const QvcModel& model() const { return model_; }

 private:
  std::string name_;
  QvcModel model_;
  EncodingMode mode_;
  int width_, height_;
  std::shared_ptr<CachedPreparer> preparer_;
};

}  // namespace qprep
