#include "vrspam/cv.hpp"

#include "vrspam/dataio.hpp"
#include "vrspam/objective.hpp"
#include "vrspam/rng.hpp"

#include <cmath>

namespace vrspam {

std::vector<double> default_grid() {
  std::vector<double> grid;
  grid.reserve(11);
  for (int k = -5; k <= 5; ++k) grid.push_back(std::pow(10.0, k));
  return grid;
}

std::vector<std::size_t> stratified_fold_ids(const Dataset& data, std::size_t folds,
                                             std::uint64_t seed) {
  if (folds < 2) throw ConfigError("folds must be at least 2");
  if (data.empty()) throw DataError("cannot fold an empty dataset");

  std::vector<std::size_t> pos_idx, neg_idx;
  for (std::size_t i = 0; i < data.size(); ++i)
    (data.samples[i].label > 0 ? pos_idx : neg_idx).push_back(i);
  if (pos_idx.size() < folds || neg_idx.size() < folds)
    throw DataError("need at least one sample of each class per fold");

  Rng rng(seed);
  rng.shuffle(pos_idx);
  rng.shuffle(neg_idx);

  std::vector<std::size_t> ids(data.size());
  for (std::size_t k = 0; k < pos_idx.size(); ++k) ids[pos_idx[k]] = k % folds;
  for (std::size_t k = 0; k < neg_idx.size(); ++k) ids[neg_idx[k]] = k % folds;
  return ids;
}

const CvCell& select_best(const std::vector<CvCell>& table) {
  if (table.empty()) throw ConfigError("cannot select from an empty CV table");
  const CvCell* best = &table.front();
  for (const CvCell& cell : table) {
    const bool better =
        cell.mean_auc > best->mean_auc ||
        (cell.mean_auc == best->mean_auc &&
         (cell.beta > best->beta ||
          (cell.beta == best->beta && cell.beta1 > best->beta1)));
    if (better) best = &cell;
  }
  return *best;
}

CvResult cross_validate(const Dataset& train, RegKind kind, const CvConfig& cv,
                        const SolverConfig& solver_cfg, std::uint64_t seed) {
  const std::vector<double> betas = cv.beta_grid.empty() ? default_grid() : cv.beta_grid;
  const std::vector<double> beta1s =
      kind == RegKind::L2
          ? std::vector<double>{0.0}
          : (cv.beta1_grid.empty() ? default_grid() : cv.beta1_grid);

  const std::vector<std::size_t> fold_ids =
      stratified_fold_ids(train, cv.folds, derive_seed(seed, 0));

  std::vector<Dataset> fold_train(cv.folds), fold_val(cv.folds);
  for (std::size_t f = 0; f < cv.folds; ++f) {
    fold_train[f].dimension = train.dimension;
    fold_val[f].dimension = train.dimension;
  }
  for (std::size_t i = 0; i < train.size(); ++i)
    for (std::size_t f = 0; f < cv.folds; ++f)
      (fold_ids[i] == f ? fold_val[f] : fold_train[f]).samples.push_back(train.samples[i]);

  std::vector<DatasetStats> fold_stats;
  fold_stats.reserve(cv.folds);
  for (std::size_t f = 0; f < cv.folds; ++f)
    fold_stats.push_back(compute_stats(fold_train[f]));

  CvResult result;
  std::size_t cell_index = 0;
  for (const double beta : betas) {
    for (const double beta1 : beta1s) {
      const RegularizerSpec spec{kind, beta, beta1};
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t f = 0; f < cv.folds; ++f) {
        SolverConfig run = solver_cfg;
        run.record_diagnostics = false;
        run.record_snapshots = false;
        run.seed = derive_seed(seed, 1 + cell_index * cv.folds + f);
        const SolveResult fit = vrspam_solve(fold_train[f], fold_stats[f], spec, run);
        const double auc = dataset_auc(fit.weights, fold_val[f]);
        sum += auc;
        sum_sq += auc * auc;
      }
      const double k = static_cast<double>(cv.folds);
      const double mean = sum / k;
      const double var = std::max(0.0, (sum_sq - k * mean * mean) / (k - 1.0));
      result.table.push_back({beta, beta1, mean, std::sqrt(var)});
      ++cell_index;
    }
  }

  const CvCell& best = select_best(result.table);
  result.best_beta = best.beta;
  result.best_beta1 = best.beta1;
  return result;
}

}  // namespace vrspam
