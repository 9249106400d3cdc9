#pragma once

#include "vrspam/regularizer.hpp"
#include "vrspam/solvers.hpp"
#include "vrspam/types.hpp"

#include <cstdint>
#include <vector>

namespace vrspam {

struct CvConfig {
  std::size_t folds = 5;
  std::vector<double> beta_grid;   // empty means 10^-5 .. 10^5
  std::vector<double> beta1_grid;  // elastic net only; empty means the same default
};

struct CvCell {
  double beta = 0.0;
  double beta1 = 0.0;
  double mean_auc = 0.0;
  double std_auc = 0.0;  // sample standard deviation over folds
};

struct CvResult {
  double best_beta = 0.0;
  double best_beta1 = 0.0;
  std::vector<CvCell> table;
};

/// Returns the default grid 10^-5 .. 10^5.
std::vector<double> default_grid();

/// Fold id per sample. Each class is shuffled separately and dealt
/// round-robin, so per-fold class fractions match the dataset's within one
/// sample. Throws DataError when a fold would lose a class entirely.
std::vector<std::size_t> stratified_fold_ids(const Dataset& data, std::size_t folds,
                                             std::uint64_t seed);

/// Grid search for the regularizer weights by k-fold validation AUC of the
/// variance-reduced solver. Cells are averaged over folds; the winner is the
/// highest mean AUC, ties broken toward larger beta, then larger beta1.
/// Deterministic in (data, config, seed).
CvResult cross_validate(const Dataset& train, RegKind kind, const CvConfig& cv,
                        const SolverConfig& solver_cfg, std::uint64_t seed);

/// Tie-breaking selection rule on an evaluated table.
const CvCell& select_best(const std::vector<CvCell>& table);

}  // namespace vrspam
