#include "vrspam/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vrspam {

namespace {

void check_dimension(const Vector& w, Eigen::Index d) {
  if (w.size() != d) throw ConfigError("weight dimension does not match dataset stats");
}

}  // namespace

SaddleParams saddle_params(const Vector& w, const DatasetStats& stats) {
  check_dimension(w, stats.dimension());
  SaddleParams sp;
  sp.mean_score_pos = w.dot(stats.mean_pos);
  sp.mean_score_neg = w.dot(stats.mean_neg);
  sp.score_gap = sp.mean_score_neg - sp.mean_score_pos;
  return sp;
}

double gradient_coefficient(const Vector& w, const Sample& z, const DatasetStats& stats,
                            const SaddleParams& sp) {
  const double p = stats.positive_fraction;
  const double score = z.dot(w);
  if (z.label > 0)
    return 2.0 * (1.0 - p) * ((score - sp.mean_score_pos) - (1.0 + sp.score_gap));
  return 2.0 * p * ((score - sp.mean_score_neg) + (1.0 + sp.score_gap));
}

Vector stochastic_gradient(const Vector& w, const Sample& z, const DatasetStats& stats) {
  const SaddleParams sp = saddle_params(w, stats);
  const double c = gradient_coefficient(w, z, stats, sp);
  Vector g = Vector::Zero(w.size());
  for (const Feature& f : z.features) g[f.index - 1] = c * f.value;
  return g;
}

Vector full_gradient(const Vector& w, const Dataset& data, const DatasetStats& stats) {
  if (data.empty()) throw DataError("cannot take a gradient over an empty dataset");
  check_dimension(w, stats.dimension());

  const SaddleParams sp = saddle_params(w, stats);
  Vector g = Vector::Zero(w.size());
  for (const Sample& z : data.samples) {
    const double c = gradient_coefficient(w, z, stats, sp);
    for (const Feature& f : z.features) g[f.index - 1] += c * f.value;
  }
  g /= static_cast<double>(data.size());
  return g;
}

double objective_value(const Vector& w, const Dataset& data, const DatasetStats& stats) {
  check_dimension(w, data.dimension);

  double sum_pos = 0.0, sum_neg = 0.0;
  std::size_t n_pos = 0, n_neg = 0;
  std::vector<double> scores;
  scores.reserve(data.size());
  for (const Sample& z : data.samples) {
    const double s = z.dot(w);
    scores.push_back(s);
    if (z.label > 0) {
      sum_pos += s;
      ++n_pos;
    } else {
      sum_neg += s;
      ++n_neg;
    }
  }
  if (n_pos == 0 || n_neg == 0)
    throw DataError("single-class dataset: p(1-p) = 0, surrogate degenerate");

  const double mean_pos = sum_pos / static_cast<double>(n_pos);
  const double mean_neg = sum_neg / static_cast<double>(n_neg);
  double var_pos = 0.0, var_neg = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (data.samples[i].label > 0) {
      const double d = scores[i] - mean_pos;
      var_pos += d * d;
    } else {
      const double d = scores[i] - mean_neg;
      var_neg += d * d;
    }
  }
  var_pos /= static_cast<double>(n_pos);
  var_neg /= static_cast<double>(n_neg);

  const double n = static_cast<double>(n_pos + n_neg);
  const double p = static_cast<double>(n_pos) / n;
  const double gap = 1.0 - (mean_pos - mean_neg);
  return p * (1.0 - p) * (gap * gap + var_pos + var_neg);
}

double objective_value_bruteforce(const Vector& w, const Dataset& data) {
  check_dimension(w, data.dimension);

  std::vector<double> pos, neg;
  for (const Sample& z : data.samples) {
    const double s = z.dot(w);
    (z.label > 0 ? pos : neg).push_back(s);
  }
  if (pos.empty() || neg.empty())
    throw DataError("single-class dataset: p(1-p) = 0, surrogate degenerate");

  double acc = 0.0;
  for (const double sp : pos)
    for (const double sn : neg) {
      const double t = 1.0 - (sp - sn);
      acc += t * t;
    }
  acc /= static_cast<double>(pos.size()) * static_cast<double>(neg.size());

  const double n = static_cast<double>(pos.size() + neg.size());
  const double p = static_cast<double>(pos.size()) / n;
  return p * (1.0 - p) * acc;
}

std::vector<double> score_samples(const Vector& w, const Dataset& data) {
  check_dimension(w, data.dimension);
  std::vector<double> scores;
  scores.reserve(data.size());
  for (const Sample& z : data.samples) scores.push_back(z.dot(w));
  return scores;
}

double auc_score(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw ConfigError("scores and labels have different lengths");

  std::size_t n_pos = 0, n_neg = 0;
  for (const int y : labels) (y > 0 ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw DataError("AUC undefined: one class is absent");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&scores](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of midranks of the positive class; ties within a group share the
  // average rank, which makes the rank formula exactly the pair count with
  // ties worth 1/2.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] > 0) rank_sum_pos += midrank;
    i = j;
  }

  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

double dataset_auc(const Vector& w, const Dataset& data) {
  std::vector<int> labels;
  labels.reserve(data.size());
  for (const Sample& z : data.samples) labels.push_back(z.label);
  return auc_score(score_samples(w, data), labels);
}

}  // namespace vrspam
