#pragma once

#include "vrspam/regularizer.hpp"
#include "vrspam/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vrspam {

/// Constants governing the expected squared distance to the optimum.
/// Per inner step the recursion multiplies by `per_step_factor` and adds
/// `snapshot_coupling` times the snapshot distance; compounding over a stage
/// of inner_steps steps gives `stage_factor`, and stage_factor <= 1 whenever
/// eta <= step_size_bound.
struct TheoryConstants {
  double eta = 0.0;
  double beta = 0.0;
  double max_norm = 0.0;
  std::size_t inner_steps = 0;

  double per_step_factor = 0.0;    // (1 + 128 M^4 eta^2) / (1 + eta beta)^2
  double snapshot_coupling = 0.0;  // (128 M^4 eta^2) / (1 + eta beta)^2
  double per_step_limit = 0.0;     // 1 / (1 + theta beta^2 / (128 M^4)), upper bound on per_step_factor
  double stage_factor = 0.0;       // per_step_factor^m + coupling * per_step_factor * (per_step_factor^m - 1) / (per_step_factor - 1)
  double step_size_bound = 0.0;    // beta / (128 M^4)
  double step_size_ratio = 0.0;    // eta / step_size_bound
};

/// Evaluates the constants above, cancellation-free near per_step_factor = 1
/// (the limit form with the geometric sum replaced by m is used there).
TheoryConstants theory_constants(double eta, double beta, double max_norm,
                                 std::size_t inner_steps);

enum class UpdateMode { Spam, Vrspam };

struct VarianceReport {
  UpdateMode mode = UpdateMode::Spam;
  double value = 0.0;
};

/// Empirical variance of the update direction over the full dataset.
/// Spam mode: (1/n) sum |G(w; z_i) - mean|^2. Vrspam mode: the corrected
/// directions G(w; z_i) - G(snapshot; z_i) + full_gradient(snapshot), whose
/// mean is full_gradient(w) exactly; the value is identically 0 at
/// w == snapshot. `snapshot` may be null only in spam mode.
VarianceReport update_variance(const Vector& w, const Vector* snapshot,
                               const Dataset& data, const DatasetStats& stats,
                               UpdateMode mode);

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst_margin = 0.0;  // smallest slack seen; negative means violated
  std::size_t draws = 0;
};

struct InvariantReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const CheckResult& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Randomized audit of the method's structural guarantees on a dataset:
///   gradient_lipschitz          |G(w';z) - G(w;z)| <= 8 M^2 |w' - w|
///   update_unbiased             mean of corrected directions == full gradient
///   variance_bound_at_optimum   mean sq. deviation from the optimum gradient
///   variance_bound_at_iterate   mean sq. deviation from the current gradient
///   prox_contraction            |prox(u) - prox(v)| <= |u - v| / (1 + eta beta)
///   contraction_grid            stage_factor <= 1 on the eta x m grid at the bound
/// The optimum for the variance bounds comes from prox_full_gradient.
InvariantReport run_invariant_suite(const Dataset& data, const RegularizerSpec& reg,
                                    std::uint64_t seed, std::size_t draws);

}  // namespace vrspam
