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

#include <algorithm>

#include "qprep/adversarial.hpp"

namespace qprep {
namespace {

Image random_image(int w, int h, Rng& rng) {
  Image img(w, h);
  for (double& p : img.pixels) p = rng.uniform();
  return img;
}

LabeledDataset random_dataset(std::size_t n, uint64_t seed) {
  Rng rng(seed);
  LabeledDataset ds;
  ds.class_names = {"0", "1"};
  for (std::size_t i = 0; i < n; ++i) {
    ds.images.push_back(random_image(4, 4, rng));
    ds.labels.push_back(static_cast<int>(i % 2));
  }
  return ds;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

TEST(Pgd, ConfigValidation) {
  AttackConfig c;
  c.epsilon = 0.1;
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(c.step_size(), 0.1 / 3);
  c.epsilon = -0.1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.epsilon = 0.1;
  c.steps = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.steps = 3;
  c.alpha = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Pgd, ZeroEpsilonIsExactlyZero) {
  const SurrogateClassifier model("s", SurrogateModel::create(16, 6, 2, 1));
  Rng rng(2);
  const Image x = random_image(4, 4, rng);
  AttackConfig c;
  c.steps = 4;
  int calls = 0;
  const RVec d = pgd_attack(model, x, 0, c, [&](int it, std::span<const double> delta) {
    EXPECT_EQ(it, calls++);
    EXPECT_EQ(max_abs(delta), 0.0);
  });
  EXPECT_EQ(calls, 5);
  EXPECT_EQ(d, RVec(16, 0.0));
  EXPECT_EQ(perturb(x, d), x);
  EXPECT_EQ(model.predict(perturb(x, d)), model.predict(x));
}

TEST(Pgd, IteratesStayInBox) {
  const SurrogateClassifier model("s", SurrogateModel::create(16, 6, 2, 3));
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    const Image x = random_image(4, 4, rng);
    AttackConfig c;
    c.epsilon = rng.uniform(0.0, 0.5);
    c.steps = 1 + static_cast<int>(rng.index(6));
    if (t % 2) c.alpha = rng.uniform(0.0, 1.0);
    c.step_rule = t % 3 ? PgdStepRule::Sign : PgdStepRule::Gradient;
    c.seed = t;
    int calls = 0;
    const RVec d = pgd_attack(model, x, t % 2, c, [&](int, std::span<const double> delta) {
      ++calls;
      EXPECT_LE(max_abs(delta), c.epsilon);
    });
    EXPECT_EQ(calls, c.steps + 1);
    EXPECT_LE(max_abs(d), c.epsilon);
  }
}

TEST(Pgd, StepRulesMatchDefinition) {
  const SurrogateModel sm = SurrogateModel::create(16, 6, 2, 5);
  const SurrogateClassifier model("s", sm);
  Rng rng(6);
  const Image x = random_image(4, 4, rng);
  for (PgdStepRule rule : {PgdStepRule::Sign, PgdStepRule::Gradient}) {
    AttackConfig c;
    c.epsilon = 0.2;
    c.alpha = rule == PgdStepRule::Sign ? 0.05 : 0.3;
    c.steps = 2;
    c.step_rule = rule;
    std::vector<RVec> iterates;
    pgd_attack(model, x, 1, c, [&](int, std::span<const double> d) { iterates.emplace_back(d.begin(), d.end()); });
    ASSERT_EQ(iterates.size(), 3u);
    for (int k = 1; k <= 2; ++k) {
      const RVec& prev = iterates[k - 1];
      RVec in = x.pixels;
      for (std::size_t i = 0; i < in.size(); ++i) in[i] += prev[i];
      const RVec g = surrogate_gradient(sm, in, 1);
      for (std::size_t i = 0; i < in.size(); ++i) {
        const double step = rule == PgdStepRule::Sign ? (g[i] > 0) - (g[i] < 0) : g[i];
        EXPECT_NEAR(iterates[k][i], std::clamp(prev[i] + *c.alpha * step, -0.2, 0.2), 1e-15);
      }
    }
  }
}

TEST(Pgd, IncreasesLossAndIsDeterministic) {
  const SurrogateModel sm = SurrogateModel::create(16, 6, 2, 7);
  const SurrogateClassifier model("s", sm);
  Rng rng(8);
  double gain = 0.0;
  for (int t = 0; t < 30; ++t) {
    const Image x = random_image(4, 4, rng);
    AttackConfig c;
    c.epsilon = 0.1;
    c.steps = 5;
    c.seed = t;
    const RVec d = pgd_attack(model, x, 0, c);
    EXPECT_EQ(pgd_attack(model, x, 0, c), d);
    gain += -std::log(surrogate_probabilities(sm, perturb(x, d).pixels)[0]) +
            std::log(surrogate_probabilities(sm, x.pixels)[0]);
  }
  EXPECT_GT(gain, 0.0);
}

TEST(Pgd, Errors) {
  const QvcModel m = QvcModel::create(3, 1, 2, 1);
  auto prep = std::make_shared<CachedPreparer>(PrepSettings{});
  const QvcClassifier no_grad("q", m, EncodingMode::HorizontalPair, 4, 4, prep);
  AttackConfig c;
  c.epsilon = 0.1;
  EXPECT_THROW(pgd_attack(no_grad, Image(4, 4, RVec(16, 0.5)), 0, c), std::invalid_argument);
  const SurrogateClassifier s("s", SurrogateModel::create(16, 4, 2, 1));
  EXPECT_THROW(pgd_attack(s, Image(3, 3), 0, c), std::invalid_argument);
}

TEST(Transfer, ReportStructure) {
  const LabeledDataset ds = random_dataset(30, 9);
  const SurrogateClassifier src("surrogate", SurrogateModel::create(16, 6, 2, 10));
  const QvcClassifier qvc("qvc:exact", QvcModel::create(3, 2, 2, 11), EncodingMode::HorizontalPair, 4, 4);
  AttackConfig c;
  c.epsilon = 0.1;
  c.seed = 12;
  const TransferReport r = transfer_evaluate(src, {&qvc, &src}, ds, {0.1, 0.0}, c);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].epsilon, 0.0);
  EXPECT_EQ(r.rows[0].target, "surrogate");
  EXPECT_EQ(r.rows[1].target, "qvc:exact");
  EXPECT_EQ(r.rows[3].epsilon, 0.1);

  auto clean = [&](const Classifier& m) {
    int ok = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) ok += m.predict(ds.images[i]) == ds.labels[i];
    return ok / double(ds.size());
  };
  EXPECT_DOUBLE_EQ(r.accuracy("surrogate", "surrogate", 0.0), clean(src));
  EXPECT_DOUBLE_EQ(r.accuracy("surrogate", "qvc:exact", 0.0), clean(qvc));
  EXPECT_LE(r.accuracy("surrogate", "surrogate", 0.1), clean(src));
  EXPECT_THROW(r.accuracy("surrogate", "nope", 0.1), std::out_of_range);

  // The scored adversarial examples are the ones pgd_attack produces.
  int ok = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    AttackConfig ci = c;
    ci.seed = derive_seed(c.seed, i);
    ok += qvc.predict(perturb(ds.images[i], pgd_attack(src, ds.images[i], ds.labels[i], ci))) == ds.labels[i];
  }
  EXPECT_DOUBLE_EQ(r.accuracy("surrogate", "qvc:exact", 0.1), ok / double(ds.size()));

  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "source,target,epsilon,accuracy,n");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(transfer_evaluate(src, {&qvc}, ds, {0.1, 0.0}, c).to_csv(), csv);

  const SurrogateClassifier wrong("w", SurrogateModel::create(9, 2, 2, 1));
  EXPECT_THROW(transfer_evaluate(src, {&wrong}, ds, {0.1}, c), std::invalid_argument);
}

}  // namespace
}  // namespace qprep
