#include "doctest.h"
#include "testutil.hpp"
#include "vrspam/vrspam.hpp"

using namespace vrspam;

namespace {

struct TwoPoint {
  Dataset data = testutil::two_point_instance();
  DatasetStats stats = compute_stats(data);
};

}  // namespace

TEST_CASE("saddle scalars are the class-conditional mean scores and their gap") {
  TwoPoint t;
  Vector w(1);
  w << 0.25;
  const SaddleParams sp = saddle_params(w, t.stats);
  CHECK(sp.mean_score_pos == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sp.mean_score_neg == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(sp.score_gap == doctest::Approx(-1.0).epsilon(1e-15));

  w << 0.0;
  const SaddleParams at_zero = saddle_params(w, t.stats);
  CHECK(at_zero.mean_score_pos == 0.0);
  CHECK(at_zero.mean_score_neg == 0.0);
  CHECK(at_zero.score_gap == 0.0);
}

TEST_CASE("per-sample gradient matches the frozen closed form on the two-point set") {
  TwoPoint t;
  Vector w(1);
  w << 0.0;
  // Both samples push the score gap open with the same signed slope.
  CHECK(stochastic_gradient(w, t.data.samples[0], t.stats)[0] ==
        doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(stochastic_gradient(w, t.data.samples[1], t.stats)[0] ==
        doctest::Approx(-2.0).epsilon(1e-15));

  const Sample zero_sample{{}, 1};
  CHECK(stochastic_gradient(w, zero_sample, t.stats)[0] == 0.0);
}

TEST_CASE("per-sample gradient equals a central difference of the frozen surrogate") {
  Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const Dataset data = testutil::random_dataset(rng, 4 + rng.bounded(20), 6);
    const DatasetStats stats = compute_stats(data);
    const Vector w = testutil::random_weights(rng, 6);
    const Sample& z = data.samples[rng.bounded(data.size())];

    const Vector g = stochastic_gradient(w, z, stats);
    const Vector fd = testutil::sample_gradient_fd(w, z, stats);
    const double scale = std::max(1.0, fd.norm());
    CHECK((g - fd).norm() / scale <= 1e-6);
  }
}

TEST_CASE("full gradient on the two-point set: slope at zero, stationary point") {
  TwoPoint t;
  Vector w(1);
  w << 0.0;
  CHECK(full_gradient(w, t.data, t.stats)[0] == doctest::Approx(-2.0).epsilon(1e-15));

  w << 0.25;
  CHECK(std::abs(full_gradient(w, t.data, t.stats)[0]) <= 1e-15);
}

TEST_CASE("full gradient weights duplicated samples by multiplicity") {
  const Dataset dup = testutil::make_dataset({{{2.0}, 1}, {{2.0}, 1}, {{-2.0}, -1}});
  const DatasetStats stats = compute_stats(dup);
  Vector w(1);
  w << 0.0;
  Vector acc = Vector::Zero(1);
  for (const Sample& z : dup.samples) acc += stochastic_gradient(w, z, stats);
  acc /= 3.0;
  CHECK(full_gradient(w, dup, stats)[0] == doctest::Approx(acc[0]).epsilon(1e-15));
}

TEST_CASE("full gradient equals a central difference of the objective") {
  Rng rng(32);
  for (int rep = 0; rep < 100; ++rep) {
    const Dataset data = testutil::random_dataset(rng, 4 + rng.bounded(25), 5);
    const DatasetStats stats = compute_stats(data);
    const Vector w = testutil::random_weights(rng, 5);

    const Vector g = full_gradient(w, data, stats);
    const Vector fd = testutil::objective_gradient_fd(w, data, stats);
    const double scale = std::max(1.0, fd.norm());
    CHECK((g - fd).norm() / scale <= 1e-6);
  }
}

TEST_CASE("objective values on the two-point set") {
  TwoPoint t;
  Vector w(1);
  w << 0.0;
  CHECK(objective_value(w, t.data, t.stats) == doctest::Approx(0.25).epsilon(1e-15));
  w << 0.25;
  CHECK(objective_value(w, t.data, t.stats) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("objective vanishes exactly when every pair is separated by margin 1") {
  // Positives score 1, negatives score 0, no within-class variance.
  const Dataset data = testutil::make_dataset(
      {{{1.0, 0.0}, 1}, {{1.0, 0.0}, 1}, {{0.0, 1.0}, -1}});
  const DatasetStats stats = compute_stats(data);
  Vector w(2);
  w << 1.0, 0.0;
  CHECK(objective_value(w, data, stats) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(objective_value_bruteforce(w, data) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("closed-form objective equals the brute-force pair average") {
  Rng rng(33);
  for (int rep = 0; rep < 150; ++rep) {
    const Dataset data = testutil::random_dataset(rng, 4 + rng.bounded(46), 6);
    const DatasetStats stats = compute_stats(data);
    const Vector w = testutil::random_weights(rng, 6, 3.0);

    const double closed = objective_value(w, data, stats);
    const double brute = objective_value_bruteforce(w, data);
    CHECK(std::abs(closed - brute) <= 1e-10 * std::max(1.0, std::abs(brute)));
  }
}

TEST_CASE("objective is non-negative") {
  Rng rng(34);
  for (int rep = 0; rep < 100; ++rep) {
    const Dataset data = testutil::random_dataset(rng, 4 + rng.bounded(30), 4);
    const DatasetStats stats = compute_stats(data);
    const Vector w = testutil::random_weights(rng, 4, 5.0);
    CHECK(objective_value(w, data, stats) >= 0.0);
  }
}

TEST_CASE("objective rejects single-class data") {
  const Dataset one_class = testutil::make_dataset({{{1.0}, 1}, {{2.0}, 1}});
  Vector w(1);
  w << 1.0;
  CHECK_THROWS_AS(objective_value(w, one_class, compute_stats(testutil::two_point_instance())),
                  Error);
  CHECK_THROWS_AS(objective_value_bruteforce(w, one_class), DataError);
}

TEST_CASE("AUC on fixed examples") {
  CHECK(auc_score({0.9, 0.8, 0.1}, {1, 1, -1}) == 1.0);
  CHECK(auc_score({0.5, 0.5}, {1, -1}) == 0.5);
  CHECK(auc_score({0.2, 0.9}, {1, -1}) == 0.0);
  // Pairs: 0.9 beats 0.1 and 0.5; 0.5 beats 0.1 and ties 0.5 -> 3.5 / 4.
  CHECK(auc_score({0.9, 0.1, 0.5, 0.5}, {1, -1, 1, -1}) == doctest::Approx(0.875).epsilon(1e-15));
}

TEST_CASE("AUC of a constant scorer is one half") {
  CHECK(auc_score({0.0, 0.0, 0.0, 0.0}, {1, -1, 1, -1}) == 0.5);
}

TEST_CASE("rank-based AUC equals the exhaustive pair count, ties included") {
  Rng rng(35);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.bounded(199);
    std::vector<double> scores;
    std::vector<int> labels;
    labels.push_back(1);
    labels.push_back(-1);
    for (std::size_t i = 2; i < n; ++i) labels.push_back(rng.uniform() < 0.4 ? 1 : -1);
    for (std::size_t i = 0; i < n; ++i) {
      // Quantized scores force plenty of exact ties.
      scores.push_back(std::floor(rng.normal() * 4.0) / 4.0);
    }
    CHECK(auc_score(scores, labels) == testutil::auc_bruteforce(scores, labels));
  }
}

TEST_CASE("AUC is invariant under positive scaling of scores") {
  Rng rng(36);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 4 + rng.bounded(50);
    std::vector<double> scores;
    std::vector<int> labels;
    labels.push_back(1);
    labels.push_back(-1);
    for (std::size_t i = 2; i < n; ++i) labels.push_back(rng.uniform() < 0.5 ? 1 : -1);
    for (std::size_t i = 0; i < n; ++i) scores.push_back(rng.normal());

    const double base = auc_score(scores, labels);
    std::vector<double> scaled = scores;
    const double c = 0.1 + 5.0 * rng.uniform();
    for (double& s : scaled) s *= c;
    CHECK(auc_score(scaled, labels) == base);
  }
}

TEST_CASE("AUC rejects degenerate inputs") {
  CHECK_THROWS_AS(auc_score({1.0, 2.0}, {1, 1}), DataError);
  CHECK_THROWS_AS(auc_score({1.0}, {1, -1}), ConfigError);
}

TEST_CASE("dataset_auc scores a linear model over a dataset") {
  const Dataset data = testutil::make_dataset({{{2.0}, 1}, {{-2.0}, -1}});
  Vector w(1);
  w << 1.0;
  CHECK(dataset_auc(w, data) == 1.0);
  w << -1.0;
  CHECK(dataset_auc(w, data) == 0.0);
  w << 0.0;
  CHECK(dataset_auc(w, data) == 0.5);
}
