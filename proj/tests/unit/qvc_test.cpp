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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qprep/classifier.hpp"
#include "qprep/qvc.hpp"
#include "qprep/surrogate.hpp"

namespace qprep {
namespace {

// <Z_j> read off the dense circuit matrix.
RVec dense_expectations(const QvcModel& m, const Statevector& s) {
  const Eigen::VectorXcd out = oracle::circuit_matrix(m.circuit()) * oracle::to_vector(s);
  RVec e(m.n_classes, 0.0);
  for (Eigen::Index i = 0; i < out.size(); ++i)
    for (int q = 0; q < m.n_classes; ++q)
      e[q] += std::norm(out(i)) * (((i >> (m.n_qubits - 1 - q)) & 1) ? -1.0 : 1.0);
  return e;
}

double dense_nll(const QvcModel& m, const Statevector& s, int label) {
  const RVec e = dense_expectations(m, s);
  double z = 0.0;
  for (double v : e) z += std::exp(v);
  return std::log(z) - e[label];
}

Image random_image(int w, int h, uint64_t seed) {
  Rng rng(seed);
  Image img(w, h);
  for (double& p : img.pixels) p = rng.uniform();
  return img;
}

TEST(Qvc, CreateAndValidate) {
  const QvcModel m = QvcModel::create(4, 3, 2, 7);
  EXPECT_EQ(m.params.size(), 36u);
  for (double p : m.params) {
    EXPECT_GE(p, -std::numbers::pi);
    EXPECT_LT(p, std::numbers::pi);
  }
  EXPECT_EQ(QvcModel::create(4, 3, 2, 7).params, m.params);
  EXPECT_THROW(QvcModel::create(2, 1, 3, 0), std::invalid_argument);
  QvcModel bad = m;
  bad.params.pop_back();
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Qvc, JsonRoundTrip) {
  const QvcModel m = QvcModel::create(3, 2, 3, 1);
  const QvcModel back = qvc_from_json(nlohmann::json::parse(qvc_to_json(m).dump()));
  EXPECT_EQ(back.params, m.params);
  EXPECT_EQ(back.n_classes, 3);
  nlohmann::json j = qvc_to_json(m);
  j.erase("params");
  EXPECT_THROW(qvc_from_json(j), std::invalid_argument);
}

TEST(Qvc, SoftmaxAndArgmax) {
  const RVec p = softmax(RVec{1.0, -1.0});
  EXPECT_NEAR(p[0], 0.8807970779778823, 1e-15);
  EXPECT_NEAR(p[1], 0.11920292202211755, 1e-15);
  const RVec big = softmax(RVec{1000.0, 1000.0});
  EXPECT_DOUBLE_EQ(big[0], 0.5);
  EXPECT_EQ(argmax(RVec{0.2, 0.7, 0.7}), 1);
  EXPECT_EQ(argmax(RVec{0.5, 0.5}), 0);
}

TEST(Qvc, ZeroAnglesReadout) {
  QvcModel m;
  m.n_qubits = 2;
  m.n_layers = 1;
  m.n_classes = 2;
  m.params.assign(6, 0.0);
  const Statevector s = Statevector::basis(2, 1);  // |01>
  const RVec p = class_probabilities(m, s);
  EXPECT_NEAR(p[0], 0.8807970779778823, 1e-14);
  EXPECT_EQ(predict(m, s), 0);
  const LabeledState batch[] = {{s, 0}};
  EXPECT_NEAR(loss(m, batch), -std::log(0.8807970779778823), 1e-14);
  // |00> gives equal logits: tie to class 0, loss ln 2.
  const LabeledState tie[] = {{Statevector(2), 1}};
  EXPECT_EQ(predict(m, tie[0].state), 0);
  EXPECT_NEAR(loss(m, tie), std::log(2.0), 1e-14);
}

TEST(Qvc, ExpectationsMatchDense) {
  const QvcModel m = QvcModel::create(4, 2, 3, 3);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Statevector s = random_statevector(4, seed);
    const RVec e = qvc_expectations(m, s), ref = dense_expectations(m, s);
    for (int q = 0; q < 3; ++q) EXPECT_NEAR(e[q], ref[q], 1e-12);
  }
  EXPECT_THROW(predict(m, Statevector(3)), std::invalid_argument);
  const LabeledState bad[] = {{Statevector(4), 3}};
  EXPECT_THROW(loss(m, bad), std::invalid_argument);
}

TEST(Qvc, LossGradientMatchesFiniteDifferences) {
  const QvcModel m = QvcModel::create(3, 2, 2, 4);
  std::vector<LabeledState> batch;
  for (int i = 0; i < 4; ++i) batch.push_back({random_statevector(3, 20 + i), i % 2});
  const GradientResult g = loss_gradient(m, batch);
  auto f = [&](const std::vector<double>& p) {
    QvcModel q = m;
    q.params = p;
    double total = 0.0;
    for (const LabeledState& ls : batch) total += dense_nll(q, ls.state, ls.label);
    return total / batch.size();
  };
  EXPECT_NEAR(g.value, f(m.params), 1e-12);
  EXPECT_LE(oracle::relative_error(g.gradient, oracle::finite_difference(f, m.params)), 1e-6);
}

TEST(Qvc, TrainsToyProblem) {
  const QvcModel m = QvcModel::create(2, 2, 2, 5);
  std::vector<LabeledState> data;
  for (int k = 0; k < 8; ++k) {
    data.push_back({Statevector::basis(2, 0), 0});
    data.push_back({Statevector::basis(2, 3), 1});
  }
  TrainConfig cfg;
  cfg.learning_rate = 0.05;
  cfg.epochs = 60;
  cfg.batch_size = 4;
  cfg.eval_every = 10;
  const TrainResult r = train(m, data, cfg, data);
  QvcModel trained = m;
  trained.params = r.params;
  EXPECT_LT(loss(trained, data), loss(m, data));
  EXPECT_DOUBLE_EQ(accuracy(trained, data), 1.0);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.front().step % 10, 0);
  EXPECT_EQ(trace_csv(r.trace).substr(0, 19), "step,accuracy,loss\n");
  EXPECT_EQ(train(m, data, cfg, data).params, r.params);

  cfg.epochs = 0;
  EXPECT_EQ(train(m, data, cfg).params, m.params);
  EXPECT_THROW(train(m, std::span<const LabeledState>{}, cfg), std::invalid_argument);
}

TEST(Qvc, InputGradientMatchesFiniteDifferences) {
  const QvcModel m = QvcModel::create(3, 2, 2, 6);
  for (EncodingMode mode : {EncodingMode::HorizontalPair, EncodingMode::Conventional}) {
    const int w = 4, h = mode == EncodingMode::Conventional ? 2 : 4;  // three qubits either way
    const Image img = random_image(w, h, 8);
    const RVec g = input_gradient(m, img, 1, mode);
    auto f = [&](const std::vector<double>& px) {
      return dense_nll(m, amplitude_encode(Image(w, h, px), mode), 1);
    };
    EXPECT_LE(oracle::relative_error(g, oracle::finite_difference(f, img.pixels)), 1e-6);
    // Scaling the image by c scales the gradient by 1/c.
    Image scaled = img;
    for (double& p : scaled.pixels) p *= 2.0;
    const RVec gs = input_gradient(m, scaled, 1, mode);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(gs[k], g[k] / 2.0, 1e-12);
  }
  EXPECT_THROW(input_gradient(m, Image(4, 4), 0, EncodingMode::HorizontalPair), std::invalid_argument);
}

TEST(Surrogate, LogitsAndGradients) {
  const SurrogateModel s = SurrogateModel::create(6, 5, 3, 2);
  SurrogateModel b = s;
  for (std::size_t k = 0; k < b.b1.size(); ++k) b.b1[k] = 0.1 * k;
  for (std::size_t k = 0; k < b.b2.size(); ++k) b.b2[k] = -0.2 * k;
  const RVec x = {0.1, 0.9, 0.3, 0.0, 0.5, 1.0};
  auto logits = [&](const std::vector<double>& in) {
    RVec out(3);
    for (int c = 0; c < 3; ++c) {
      double acc = b.b2[c];
      for (int h = 0; h < 5; ++h) {
        double pre = b.b1[h];
        for (int i = 0; i < 6; ++i) pre += b.w1[h * 6 + i] * in[i];
        acc += b.w2[c * 5 + h] * std::tanh(pre);
      }
      out[c] = acc;
    }
    return out;
  };
  const RVec l = surrogate_logits(b, x), ref = logits(x);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(l[c], ref[c], 1e-14);
  auto nll = [&](const std::vector<double>& in) {
    const RVec z = logits(in);
    return std::log(std::exp(z[0]) + std::exp(z[1]) + std::exp(z[2])) - z[2];
  };
  EXPECT_LE(oracle::relative_error(surrogate_gradient(b, x, 2), oracle::finite_difference(nll, x)), 1e-7);
  const RVec lg = surrogate_logit_gradient(b, x, 2), p = surrogate_probabilities(b, x);
  EXPECT_NEAR(lg[2], p[2] - 1.0, 1e-15);
  EXPECT_NEAR(lg[0], p[0], 1e-15);
  EXPECT_THROW(surrogate_gradient(b, RVec(5), 0), std::invalid_argument);
  EXPECT_THROW(surrogate_gradient(b, x, 3), std::invalid_argument);

  const SurrogateModel z = SurrogateModel::zeros(6, 5, 3);
  for (double v : surrogate_probabilities(z, x)) EXPECT_NEAR(v, 1.0 / 3, 1e-15);
  EXPECT_EQ(surrogate_predict(z, x), 0);
  for (double v : s.b1) EXPECT_EQ(v, 0.0);
  const double limit = std::sqrt(6.0 / (6 + 5));
  for (double v : s.w1) EXPECT_LE(std::abs(v), limit);
}

TEST(Surrogate, TrainsAndSerializes) {
  LabeledDataset ds;
  ds.class_names = {"0", "1"};
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    Image img(2, 2);
    const int label = i % 2;
    for (int k = 0; k < 4; ++k) img.pixels[k] = rng.uniform(0.0, 0.4) + (k < 2 ? 0.6 * label : 0.6 * (1 - label));
    ds.images.push_back(img);
    ds.labels.push_back(label);
  }
  TrainConfig cfg;
  cfg.learning_rate = 0.05;
  cfg.epochs = 50;
  cfg.batch_size = 8;
  const SurrogateModel m = train_surrogate(ds, 8, cfg);
  EXPECT_DOUBLE_EQ(surrogate_accuracy(m, ds), 1.0);
  const SurrogateModel back = surrogate_from_json(nlohmann::json::parse(surrogate_to_json(m).dump()));
  EXPECT_EQ(back.w1, m.w1);
  EXPECT_EQ(back.b2, m.b2);
  nlohmann::json j = surrogate_to_json(m);
  j["w2"].erase(0);
  EXPECT_THROW(surrogate_from_json(j), std::invalid_argument);
  EXPECT_THROW(train_surrogate(LabeledDataset{}, 4, cfg), std::invalid_argument);
}

TEST(Classifier, Wrappers) {
  const QvcModel m = QvcModel::create(5, 2, 2, 9);
  const Image img = random_image(8, 8, 1);
  QvcClassifier exact("qvc:exact", m, EncodingMode::HorizontalPair, 8, 8);
  EXPECT_EQ(exact.input_size(), 64u);
  EXPECT_TRUE(exact.has_input_gradient());
  EXPECT_EQ(exact.probabilities(img),
            class_probabilities(m, amplitude_encode(img, EncodingMode::HorizontalPair)));
  EXPECT_EQ(exact.loss_gradient(img, 1), input_gradient(m, img, 1, EncodingMode::HorizontalPair));
  EXPECT_EQ(exact.predict(img), argmax(exact.probabilities(img)));
  EXPECT_THROW(exact.probabilities(Image(4, 4)), std::invalid_argument);
  EXPECT_THROW(QvcClassifier("bad", m, EncodingMode::Conventional, 8, 8), std::invalid_argument);

  PrepSettings ps;
  ps.method = PrepMethod::Exact;
  auto prep = std::make_shared<CachedPreparer>(ps);
  QvcClassifier prepared("qvc:prepared", m, EncodingMode::HorizontalPair, 8, 8, prep);
  EXPECT_FALSE(prepared.has_input_gradient());
  EXPECT_THROW(prepared.loss_gradient(img, 0), std::logic_error);
  EXPECT_NEAR(fidelity(prepared.input_state(img), exact.input_state(img)), 1.0, 1e-10);
  prepared.probabilities(img);
  EXPECT_EQ(prep->cache_size(), 1u);

  const SurrogateModel s = SurrogateModel::create(64, 4, 2, 1);
  SurrogateClassifier sc("surrogate", s);
  EXPECT_EQ(sc.probabilities(img), surrogate_probabilities(s, img.pixels));
  EXPECT_EQ(sc.loss_gradient(img, 1), surrogate_gradient(s, img.pixels, 1));
}

}  // namespace
}  // namespace qprep
