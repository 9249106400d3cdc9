#include "vrspam/solvers.hpp"

#include "vrspam/analysis.hpp"
#include "vrspam/objective.hpp"
#include "vrspam/rng.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>

namespace vrspam {

namespace {

using Clock = std::chrono::steady_clock;

void validate_inputs(const Dataset& data, const DatasetStats& stats,
                     const RegularizerSpec& reg, const SolverConfig& cfg) {
  if (data.empty()) throw DataError("cannot train on an empty dataset");
  if (stats.n_pos == 0 || stats.n_neg == 0)
    throw DataError("single-class dataset: p(1-p) = 0, surrogate degenerate");
  if (cfg.epochs == 0) throw ConfigError("epochs must be at least 1");
  if (cfg.eta < 0.0) throw ConfigError("eta must be positive, or 0 for automatic");
  strong_convexity(reg);
}

double resolve_eta(const DatasetStats& stats, const RegularizerSpec& reg,
                   const SolverConfig& cfg) {
  const double bound =
      strong_convexity(reg) / (128.0 * std::pow(stats.max_norm, 4));
  if (cfg.eta > 0.0) {
    if (cfg.eta >= bound)
      std::cerr << "warning: step size " << cfg.eta
                << " is at or above the geometric-convergence bound " << bound
                << "\n";
    return cfg.eta;
  }
  return default_step_size(stats, strong_convexity(reg), cfg.theta);
}

struct Recorder {
  const Dataset& data;
  const DatasetStats& stats;
  const RegularizerSpec& reg;
  const SolverConfig& cfg;
  const EvalHooks& hooks;
  Clock::time_point start = Clock::now();

  void push(SolveResult& result, std::size_t stage, std::uint64_t evals, const Vector& w,
            const Vector* snapshot, UpdateMode mode) const {
    TraceRecord rec;
    rec.stage = stage;
    rec.grad_evals = evals;
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (cfg.record_diagnostics) {
      rec.objective = objective_value(w, data, stats) + reg_value(w, reg);
      rec.update_variance = update_variance(w, snapshot, data, stats, mode).value;
    }
    if (hooks.test_auc) rec.test_auc = hooks.test_auc(w);
    if (hooks.reference) rec.dist_sq_to_ref = (w - *hooks.reference).squaredNorm();
    result.trace.push_back(std::move(rec));
    if (cfg.record_snapshots) result.snapshots.push_back(w);
  }
};

void pgd_step(Vector& w, const Dataset& data, const DatasetStats& stats,
              const RegularizerSpec& reg, double eta) {
  const Vector g = full_gradient(w, data, stats);
  w -= eta * g;
  prox_inplace(w, eta, reg);
}

}  // namespace

double default_step_size(const DatasetStats& stats, double beta, double theta) {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must be in (0, 1)");
  if (!(stats.max_norm > 0.0))
    throw DataError("max sample norm is zero, step size undefined");
  return theta * beta / (128.0 * std::pow(stats.max_norm, 4));
}

SolveResult vrspam_solve(const Dataset& data, const DatasetStats& stats,
                         const RegularizerSpec& reg, const SolverConfig& cfg,
                         const EvalHooks& hooks) {
  validate_inputs(data, stats, reg, cfg);

  const std::size_t n = data.size();
  const Eigen::Index d = stats.dimension();
  const double eta = resolve_eta(stats, reg, cfg);
  const std::size_t m = cfg.inner_steps != 0 ? cfg.inner_steps : n;
  const double beta = strong_convexity(reg);

  Recorder recorder{data, stats, reg, cfg, hooks};
  SolveResult result;
  Rng rng(cfg.seed);
  std::uint64_t evals = 0;

  Vector snapshot = Vector::Zero(d);
  if (cfg.warm_start == WarmStart::SpamOnePass) {
    const double c = cfg.spam_schedule_c > 0.0 ? cfg.spam_schedule_c : 1.0 / beta;
    for (std::size_t t = 1; t <= n; ++t) {
      const Sample& z = data.samples[rng.bounded(n)];
      const SaddleParams sp = saddle_params(snapshot, stats);
      const double coeff = gradient_coefficient(snapshot, z, stats, sp);
      const double eta_t = spam_step_size(c, beta, t);
      for (const Feature& f : z.features) snapshot[f.index - 1] -= eta_t * coeff * f.value;
      prox_inplace(snapshot, eta_t, reg);
    }
    evals += n;
  }
  recorder.push(result, 0, evals, snapshot, &snapshot, UpdateMode::Vrspam);

  Vector w = snapshot;
  Vector direction(d);
  for (std::size_t s = 1; s <= cfg.epochs; ++s) {
    const Vector anchor = full_gradient(snapshot, data, stats);
    evals += n;
    const SaddleParams snap_sp = saddle_params(snapshot, stats);
    w = snapshot;
    for (std::size_t t = 0; t < m; ++t) {
      const Sample& z = data.samples[rng.bounded(n)];
      const SaddleParams w_sp = saddle_params(w, stats);
      const double delta = gradient_coefficient(w, z, stats, w_sp) -
                           gradient_coefficient(snapshot, z, stats, snap_sp);
      evals += 2;
      direction = anchor;
      for (const Feature& f : z.features) direction[f.index - 1] += delta * f.value;
      w -= eta * direction;
      prox_inplace(w, eta, reg);
    }
    const Vector previous = snapshot;
    snapshot = w;
    recorder.push(result, s, evals, snapshot, &previous, UpdateMode::Vrspam);
  }

  result.weights = snapshot;
  return result;
}

SolveResult spam_solve(const Dataset& data, const DatasetStats& stats,
                       const RegularizerSpec& reg, const SolverConfig& cfg,
                       const EvalHooks& hooks) {
  validate_inputs(data, stats, reg, cfg);

  const std::size_t n = data.size();
  const Eigen::Index d = stats.dimension();
  const double beta = strong_convexity(reg);
  const double c = cfg.spam_schedule_c > 0.0 ? cfg.spam_schedule_c : 1.0 / beta;

  Recorder recorder{data, stats, reg, cfg, hooks};
  SolveResult result;
  Rng rng(cfg.seed);
  std::uint64_t evals = 0;

  Vector w = Vector::Zero(d);
  recorder.push(result, 0, evals, w, nullptr, UpdateMode::Spam);

  std::uint64_t t = 0;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t k = 0; k < n; ++k) {
      ++t;
      const Sample& z = data.samples[rng.bounded(n)];
      const SaddleParams sp = saddle_params(w, stats);
      const double coeff = gradient_coefficient(w, z, stats, sp);
      const double eta_t = spam_step_size(c, beta, t);
      for (const Feature& f : z.features) w[f.index - 1] -= eta_t * coeff * f.value;
      prox_inplace(w, eta_t, reg);
      ++evals;
    }
    recorder.push(result, epoch, evals, w, nullptr, UpdateMode::Spam);
  }

  result.weights = w;
  return result;
}

SolveResult pgd_solve(const Dataset& data, const DatasetStats& stats,
                      const RegularizerSpec& reg, const SolverConfig& cfg,
                      const EvalHooks& hooks) {
  validate_inputs(data, stats, reg, cfg);

  const std::size_t n = data.size();
  const double eta = resolve_eta(stats, reg, cfg);

  Recorder recorder{data, stats, reg, cfg, hooks};
  SolveResult result;
  std::uint64_t evals = 0;

  Vector w = Vector::Zero(stats.dimension());
  recorder.push(result, 0, evals, w, nullptr, UpdateMode::Spam);

  for (std::size_t k = 1; k <= cfg.epochs; ++k) {
    pgd_step(w, data, stats, reg, eta);
    evals += n;
    recorder.push(result, k, evals, w, nullptr, UpdateMode::Spam);
  }

  result.weights = w;
  return result;
}

Vector prox_full_gradient(const Dataset& data, const DatasetStats& stats,
                          const RegularizerSpec& reg, double eta,
                          std::size_t max_iterations, double tolerance) {
  if (!(eta > 0.0)) throw ConfigError("eta must be positive");
  if (tolerance < 0.0) throw ConfigError("tolerance must be non-negative");
  if (data.empty()) throw DataError("cannot train on an empty dataset");
  if (stats.n_pos == 0 || stats.n_neg == 0)
    throw DataError("single-class dataset: p(1-p) = 0, surrogate degenerate");
  strong_convexity(reg);

  Vector w = Vector::Zero(stats.dimension());
  Vector previous = w;
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < max_iterations; ++k) {
    previous = w;
    pgd_step(w, data, stats, reg, eta);
    residual = (w - previous).norm();
    if (residual <= tolerance) return w;
  }
  throw ConvergenceError("proximal full-gradient iteration did not reach tolerance " +
                             std::to_string(tolerance),
                         w, residual);
}

}  // namespace vrspam
