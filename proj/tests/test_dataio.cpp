#include "doctest.h"
#include "testutil.hpp"
#include "vrspam/vrspam.hpp"

#include <sstream>

using namespace vrspam;

TEST_CASE("parse reads sparse rows with ascending indices") {
  const auto records = parse_libsvm("+1 1:0.5 3:-2\n-1 2:1e-3\n");
  REQUIRE(records.size() == 2);
  CHECK(records[0].label == 1);
  REQUIRE(records[0].features.size() == 2);
  CHECK(records[0].features[0].index == 1);
  CHECK(records[0].features[0].value == 0.5);
  CHECK(records[0].features[1].index == 3);
  CHECK(records[0].features[1].value == -2.0);
  CHECK(records[1].label == -1);
  REQUIRE(records[1].features.size() == 1);
  CHECK(records[1].features[0].index == 2);
  CHECK(records[1].features[0].value == 1e-3);
}

TEST_CASE("parse skips blank lines and keeps line numbers for errors") {
  const auto records = parse_libsvm("\n+1 1:1\n\n-1 1:2\n");
  CHECK(records.size() == 2);

  CHECK_THROWS_WITH_AS(parse_libsvm("1 3:2 2:5"),
                       "line 1: non-ascending feature index 2", ParseError);
  CHECK_THROWS_AS(parse_libsvm("+1 1:1\n2.5 1:1"), ParseError);
  try {
    parse_libsvm("+1 1:1\n\n1 0:3");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_libsvm("+1 oops"), ParseError);
  CHECK_THROWS_AS(parse_libsvm("+1 1:"), ParseError);
  CHECK_THROWS_AS(parse_libsvm("+1 1:1 1:2"), ParseError);
}

TEST_CASE("parse handles duplicate rows and empty feature lists") {
  const auto records = parse_libsvm("3\n3\n-1 2:1\n");
  REQUIRE(records.size() == 3);
  CHECK(records[0].features.empty());
  CHECK(records[1].features.empty());
}

TEST_CASE("binarize passes through labels already in the binary alphabet") {
  const auto data = binarize_labels(parse_libsvm("+1 1:1\n-1 2:1\n1 3:1\n"));
  CHECK(data.samples[0].label == 1);
  CHECK(data.samples[1].label == -1);
  CHECK(data.samples[2].label == 1);
  CHECK(data.dimension == 3);
}

TEST_CASE("binarize maps multiclass labels by parity") {
  const auto data = binarize_labels(parse_libsvm("0 1:1\n1 1:1\n2 1:1\n7 1:1\n-3 1:1\n"));
  CHECK(data.samples[0].label == 1);   // even
  CHECK(data.samples[1].label == -1);  // odd
  CHECK(data.samples[2].label == 1);
  CHECK(data.samples[3].label == -1);
  CHECK(data.samples[4].label == -1);  // negative odd
}

TEST_CASE("binarize of an empty record set gives dimension 0") {
  const auto data = binarize_labels({});
  CHECK(data.empty());
  CHECK(data.dimension == 0);
}

TEST_CASE("write then parse round-trips exactly") {
  Rng rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const auto n = static_cast<std::size_t>(2 + rng.bounded(30));
    const auto d = static_cast<std::int32_t>(1 + rng.bounded(12));
    Dataset data = testutil::random_dataset(rng, n, d, 0.5);

    std::ostringstream out;
    write_libsvm(data, out);
    const Dataset back = binarize_labels(parse_libsvm(out.str()));

    REQUIRE(back.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      CHECK(back.samples[i].label == data.samples[i].label);
      REQUIRE(back.samples[i].features.size() == data.samples[i].features.size());
      for (std::size_t f = 0; f < data.samples[i].features.size(); ++f) {
        CHECK(back.samples[i].features[f].index == data.samples[i].features[f].index);
        CHECK(back.samples[i].features[f].value == data.samples[i].features[f].value);
      }
    }
  }
}

TEST_CASE("split sizes follow the floor rule and halves keep the dimension") {
  Rng rng(7);
  const Dataset data = testutil::random_dataset(rng, 10, 4);
  const auto [train, test] = split(data, 0.8, 42);
  CHECK(train.size() == 8);
  CHECK(test.size() == 2);
  CHECK(train.dimension == 4);
  CHECK(test.dimension == 4);

  const auto [tr5, te5] = split(data, 0.45, 42);
  CHECK(tr5.size() == 4);  // floor(4.5)
  CHECK(te5.size() == 6);
}

TEST_CASE("split is a seeded permutation: multiset preserved, seeds reproducible") {
  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const Dataset data = testutil::random_dataset(rng, 3 + rng.bounded(40), 5);
    const std::uint64_t seed = rng.bits();
    const auto [a_train, a_test] = split(data, 0.7, seed);
    const auto [b_train, b_test] = split(data, 0.7, seed);

    std::vector<Sample> joined = a_train.samples;
    joined.insert(joined.end(), a_test.samples.begin(), a_test.samples.end());
    CHECK(testutil::same_multiset(joined, data.samples));

    REQUIRE(a_train.size() == b_train.size());
    for (std::size_t i = 0; i < a_train.size(); ++i)
      CHECK(testutil::sample_equal(a_train.samples[i], b_train.samples[i]));
  }
}

TEST_CASE("split rejects bad fractions and empty data") {
  Rng rng(1);
  const Dataset data = testutil::random_dataset(rng, 4, 2);
  CHECK_THROWS_AS(split(data, 0.0, 0), ConfigError);
  CHECK_THROWS_AS(split(data, 1.0, 0), ConfigError);
  CHECK_THROWS_AS(split(data, 1.5, 0), ConfigError);
  CHECK_THROWS_AS(split(Dataset{}, 0.5, 0), DataError);
}

TEST_CASE("normalize rescales the max sample norm to 1") {
  const Dataset data = testutil::make_dataset({{{3.0, 4.0}, 1}, {{0.0, 1.0}, -1}});
  const Dataset scaled = normalize(data);
  CHECK(scaled.samples[0].features[0].value == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(scaled.samples[0].features[1].value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(compute_stats(scaled).max_norm == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalize is idempotent within 1e-12 and rejects all-zero data") {
  Rng rng(5);
  const Dataset data = testutil::random_dataset(rng, 20, 6);
  const Dataset once = normalize(data);
  const Dataset twice = normalize(once);
  for (std::size_t i = 0; i < once.size(); ++i)
    for (std::size_t f = 0; f < once.samples[i].features.size(); ++f)
      CHECK(std::abs(twice.samples[i].features[f].value -
                     once.samples[i].features[f].value) <= 1e-12);

  const Dataset zeros = testutil::make_dataset({{{0.0, 0.0}, 1}, {{0.0, 0.0}, -1}});
  CHECK_THROWS_AS(normalize(zeros), DataError);
}

TEST_CASE("scale multiplies every feature value") {
  const Dataset data = testutil::make_dataset({{{2.0, -4.0}, 1}, {{1.0, 0.0}, -1}});
  const Dataset half = scale(data, 0.5);
  CHECK(half.samples[0].features[0].value == 1.0);
  CHECK(half.samples[0].features[1].value == -2.0);
  CHECK(half.samples[1].features[0].value == 0.5);
}

TEST_CASE("stats report the class prior, conditional means, and max norm") {
  const Dataset data = testutil::make_dataset(
      {{{2.0, 0.0}, 1}, {{0.0, 2.0}, 1}, {{-1.0, -1.0}, -1}});
  const DatasetStats stats = compute_stats(data);
  CHECK(stats.n_pos == 2);
  CHECK(stats.n_neg == 1);
  CHECK(stats.positive_fraction == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(stats.mean_pos[0] == 1.0);
  CHECK(stats.mean_pos[1] == 1.0);
  CHECK(stats.mean_neg[0] == -1.0);
  CHECK(stats.mean_neg[1] == -1.0);
  CHECK(stats.max_norm == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("stats rejects empty and single-class data") {
  CHECK_THROWS_AS(compute_stats(Dataset{}), DataError);
  const Dataset one_class = testutil::make_dataset({{{1.0}, 1}, {{2.0}, 1}});
  CHECK_THROWS_AS(compute_stats(one_class), DataError);
}

TEST_CASE("stats means satisfy the weighted-mean identity") {
  Rng rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const Dataset data = testutil::random_dataset(rng, 5 + rng.bounded(60), 7);
    const DatasetStats stats = compute_stats(data);

    Vector total = Vector::Zero(7);
    for (const Sample& s : data.samples)
      for (const Feature& f : s.features) total[f.index - 1] += f.value;
    total /= static_cast<double>(data.size());

    const Vector mixed = stats.positive_fraction * stats.mean_pos +
                         (1.0 - stats.positive_fraction) * stats.mean_neg;
    CHECK((mixed - total).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}
