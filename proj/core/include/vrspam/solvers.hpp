#pragma once

#include "vrspam/regularizer.hpp"
#include "vrspam/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace vrspam {

enum class WarmStart { Zero, SpamOnePass };

struct SolverConfig {
  double eta = 0.0;             // > 0 explicit step size; 0 picks theta * beta / (128 M^4)
  double theta = 0.5;           // step-size ratio used when eta is automatic, in (0, 1)
  std::size_t inner_steps = 0;  // inner loop length m; 0 means n
  std::size_t epochs = 10;      // outer stages (vrspam/pgd) or data passes (spam)
  std::uint64_t seed = 0;
  WarmStart warm_start = WarmStart::Zero;  // vrspam only
  double spam_schedule_c = 0.0;            // c in eta_t = c / (1 + c*beta*t); 0 means 1/beta
  bool record_snapshots = false;           // keep per-stage iterates in SolveResult
  bool record_diagnostics = true;          // objective + update variance per trace row
};

/// One trace row per stage boundary. grad_evals counts per-sample gradient
/// evaluations only (n + 2m per vrspam stage, 1 per spam iteration, n per
/// pgd iteration); diagnostic evaluations are excluded.
struct TraceRecord {
  std::size_t stage = 0;
  std::uint64_t grad_evals = 0;
  double elapsed_ms = 0.0;
  double objective = 0.0;  // training objective + regularizer at the stage iterate
  std::optional<double> test_auc;
  double update_variance = 0.0;
  std::optional<double> dist_sq_to_ref;
};

/// Optional per-stage evaluations. test_auc runs on whatever held-out data
/// the caller closed over; reference enables the dist_sq_to_ref column.
struct EvalHooks {
  std::function<double(const Vector&)> test_auc;
  std::optional<Vector> reference;
};

struct SolveResult {
  Vector weights;
  std::vector<TraceRecord> trace;       // length epochs + 1, stage 0 is the start state
  std::vector<Vector> snapshots;        // same indexing, only when record_snapshots
};

/// theta * beta / (128 * max_norm^4), the step size at ratio theta of the
/// geometric-convergence bound.
double default_step_size(const DatasetStats& stats, double beta, double theta);

/// SPAM schedule eta_t = c / (1 + c * beta * t), t >= 1.
inline double spam_step_size(double c, double beta, std::uint64_t t) {
  return c / (1.0 + c * beta * static_cast<double>(t));
}

/// Variance-reduced solver: per stage, one full gradient at the snapshot and
/// m corrected stochastic proximal steps; the stage ends by re-anchoring the
/// snapshot at the current iterate. Bitwise deterministic for a fixed seed
/// (single-threaded; elapsed_ms excluded).
SolveResult vrspam_solve(const Dataset& data, const DatasetStats& stats,
                         const RegularizerSpec& reg, const SolverConfig& cfg,
                         const EvalHooks& hooks = {});

/// Plain stochastic proximal baseline with the decaying schedule. Trace
/// checkpoints every n iterations so grad_evals axes are comparable.
SolveResult spam_solve(const Dataset& data, const DatasetStats& stats,
                       const RegularizerSpec& reg, const SolverConfig& cfg,
                       const EvalHooks& hooks = {});

/// Deterministic proximal full-gradient iteration with a trace (epochs
/// iterations). Shares its step with prox_full_gradient, so trajectories
/// agree bitwise. Ignores seed/inner_steps.
SolveResult pgd_solve(const Dataset& data, const DatasetStats& stats,
                      const RegularizerSpec& reg, const SolverConfig& cfg,
                      const EvalHooks& hooks = {});

/// Runs the proximal full-gradient iteration from zero until the step norm
/// falls to `tolerance`, returning the fixed point (the regularized optimum;
/// independent of eta). Throws ConvergenceError with the last iterate and
/// residual when the cap is hit first. Stable for eta <= 1 / (8 M^2).
Vector prox_full_gradient(const Dataset& data, const DatasetStats& stats,
                          const RegularizerSpec& reg, double eta,
                          std::size_t max_iterations, double tolerance);

}  // namespace vrspam
