#pragma once

#include "vrspam/types.hpp"

#include <vector>

namespace vrspam {

/// Optimal auxiliary scalars of the saddle formulation at a given w: the
/// mean score of each class and the gap between them. Closing over these
/// makes the per-sample surrogate an unbiased decomposition of the pairwise
/// squared loss.
struct SaddleParams {
  double mean_score_pos = 0.0;  // mean of w.x over the positive class
  double mean_score_neg = 0.0;  // mean of w.x over the negative class
  double score_gap = 0.0;       // mean_score_neg - mean_score_pos
};

SaddleParams saddle_params(const Vector& w, const DatasetStats& stats);

/// Scalar c(w; z) with G(w; z) = c(w; z) * x. The per-sample gradient is
/// always a multiple of the sample's feature vector, which keeps stochastic
/// updates sparse.
double gradient_coefficient(const Vector& w, const Sample& z, const DatasetStats& stats,
                            const SaddleParams& sp);

/// Per-sample gradient of the saddle surrogate at w (auxiliary scalars held
/// at their optimum for w).
Vector stochastic_gradient(const Vector& w, const Sample& z, const DatasetStats& stats);

/// Average of the per-sample gradients over the dataset; equals the exact
/// gradient of objective_value in the finite-sum sense.
Vector full_gradient(const Vector& w, const Dataset& data, const DatasetStats& stats);

/// Pairwise squared AUC surrogate in closed form,
/// p(1-p) * [(1 - (mean_pos_score - mean_neg_score))^2 + var_pos + var_neg],
/// computed from one pass of scores. Variances divide by the class count.
double objective_value(const Vector& w, const Dataset& data, const DatasetStats& stats);

/// Same quantity by brute force over all positive/negative pairs:
/// p(1-p) * mean over pairs of (1 - w.(x_pos - x_neg))^2. Quadratic cost,
/// oracle use only.
double objective_value_bruteforce(const Vector& w, const Dataset& data);

/// Scores w.x for every sample, in dataset order.
std::vector<double> score_samples(const Vector& w, const Dataset& data);

/// Rank-based AUC (ties count 1/2), exactly equal to the pair-counting
/// definition. Throws DataError when one class is absent.
double auc_score(const std::vector<double>& scores, const std::vector<int>& labels);

/// AUC of the linear scorer w on a dataset.
double dataset_auc(const Vector& w, const Dataset& data);

}  // namespace vrspam
