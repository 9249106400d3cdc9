#include "vrspam/analysis.hpp"

#include "vrspam/dataio.hpp"
#include "vrspam/objective.hpp"
#include "vrspam/rng.hpp"
#include "vrspam/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vrspam {

TheoryConstants theory_constants(double eta, double beta, double max_norm,
                                 std::size_t inner_steps) {
  if (!(eta > 0.0)) throw ConfigError("eta must be positive");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (!(max_norm > 0.0)) throw ConfigError("max_norm must be positive");
  if (inner_steps == 0) throw ConfigError("inner_steps must be at least 1");

  const double msq = max_norm * max_norm;
  const double m4 = msq * msq;
  const double k = 128.0 * m4 * eta * eta;
  const double denom = (1.0 + eta * beta) * (1.0 + eta * beta);

  TheoryConstants tc;
  tc.eta = eta;
  tc.beta = beta;
  tc.max_norm = max_norm;
  tc.inner_steps = inner_steps;
  tc.per_step_factor = (1.0 + k) / denom;
  tc.snapshot_coupling = k / denom;
  tc.step_size_bound = beta / (128.0 * m4);
  tc.step_size_ratio = eta / tc.step_size_bound;
  tc.per_step_limit = 1.0 / (1.0 + tc.step_size_ratio * beta * beta / (128.0 * m4));

  // per_step_factor - 1 without the 1-1 cancellation, and the geometric sum
  // (factor^m - 1) / (factor - 1) through expm1/log1p so the factor -> 1
  // limit degrades to m instead of 0/0.
  const double factor_minus_1 =
      eta * (128.0 * m4 * eta - 2.0 * beta - eta * beta * beta) / denom;
  const double md = static_cast<double>(inner_steps);
  const double log_factor = std::log1p(factor_minus_1);
  const double factor_pow_m = std::exp(md * log_factor);
  const double geometric_sum =
      factor_minus_1 == 0.0 ? md : std::expm1(md * log_factor) / factor_minus_1;
  tc.stage_factor =
      factor_pow_m + tc.snapshot_coupling * tc.per_step_factor * geometric_sum;
  return tc;
}

VarianceReport update_variance(const Vector& w, const Vector* snapshot,
                               const Dataset& data, const DatasetStats& stats,
                               UpdateMode mode) {
  if (data.empty()) throw DataError("cannot measure variance on an empty dataset");
  if (mode == UpdateMode::Vrspam && snapshot == nullptr)
    throw ConfigError("vrspam update variance needs a snapshot");

  const double n = static_cast<double>(data.size());
  VarianceReport rep;
  rep.mode = mode;

  if (mode == UpdateMode::Spam) {
    const Vector mean = full_gradient(w, data, stats);
    const SaddleParams sp = saddle_params(w, stats);
    const double mean_sq = mean.squaredNorm();
    double acc = 0.0;
    for (const Sample& z : data.samples) {
      const double c = gradient_coefficient(w, z, stats, sp);
      double dot = 0.0, xsq = 0.0;
      for (const Feature& f : z.features) {
        dot += mean[f.index - 1] * f.value;
        xsq += f.value * f.value;
      }
      acc += c * c * xsq - 2.0 * c * dot + mean_sq;
    }
    rep.value = acc / n;
    return rep;
  }

  const Vector anchor = full_gradient(*snapshot, data, stats);
  const Vector mean = full_gradient(w, data, stats);  // exact mean of the corrected directions
  const Vector offset = mean - anchor;                // v_i - mean = delta_i x_i - offset
  const SaddleParams w_sp = saddle_params(w, stats);
  const SaddleParams snap_sp = saddle_params(*snapshot, stats);
  const double offset_sq = offset.squaredNorm();
  double acc = 0.0;
  for (const Sample& z : data.samples) {
    const double delta = gradient_coefficient(w, z, stats, w_sp) -
                         gradient_coefficient(*snapshot, z, stats, snap_sp);
    double dot = 0.0, xsq = 0.0;
    for (const Feature& f : z.features) {
      dot += offset[f.index - 1] * f.value;
      xsq += f.value * f.value;
    }
    acc += delta * delta * xsq - 2.0 * delta * dot + offset_sq;
  }
  rep.value = acc / n;
  return rep;
}

namespace {

Vector random_point(Rng& rng, Eigen::Index d, double radius) {
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.normal();
  const double norm = v.norm();
  if (norm > 0.0) v *= (radius * rng.uniform()) / norm;
  return v;
}

struct Margin {
  double worst = std::numeric_limits<double>::infinity();
  void feed(double m) { worst = std::min(worst, m); }
};

}  // namespace

InvariantReport run_invariant_suite(const Dataset& data, const RegularizerSpec& reg,
                                    std::uint64_t seed, std::size_t draws) {
  if (draws == 0) throw ConfigError("draws must be at least 1");
  const DatasetStats stats = compute_stats(data);
  const std::size_t n = data.size();
  const Eigen::Index d = stats.dimension();
  const double lip = 8.0 * stats.max_norm * stats.max_norm;

  const Vector w_star = prox_full_gradient(data, stats, reg, 1.0 / lip, 1000000, 1e-10);
  const Vector g_star = full_gradient(w_star, data, stats);

  Rng rng(seed);
  Margin lipschitz, unbiased, var_opt, var_cur, contraction;

  for (std::size_t rep = 0; rep < draws; ++rep) {
    const Vector w = random_point(rng, d, 2.0);
    const Vector w2 = random_point(rng, d, 2.0);
    const Vector snap = random_point(rng, d, 2.0);
    const Sample& z = data.samples[rng.bounded(n)];

    {
      const Vector g1 = stochastic_gradient(w, z, stats);
      const Vector g2 = stochastic_gradient(w2, z, stats);
      lipschitz.feed(lip * (w2 - w).norm() - (g2 - g1).norm());
    }

    const Vector anchor = full_gradient(snap, data, stats);
    const Vector g_w = full_gradient(w, data, stats);
    const SaddleParams w_sp = saddle_params(w, stats);
    const SaddleParams snap_sp = saddle_params(snap, stats);

    Vector correction_sum = Vector::Zero(d);
    const Vector off_opt = anchor - g_star;
    const Vector off_cur = anchor - g_w;
    const double off_opt_sq = off_opt.squaredNorm();
    const double off_cur_sq = off_cur.squaredNorm();
    double mean_sq_opt = 0.0, mean_sq_cur = 0.0;
    for (const Sample& zi : data.samples) {
      const double delta = gradient_coefficient(w, zi, stats, w_sp) -
                           gradient_coefficient(snap, zi, stats, snap_sp);
      double dot_opt = 0.0, dot_cur = 0.0, xsq = 0.0;
      for (const Feature& f : zi.features) {
        correction_sum[f.index - 1] += delta * f.value;
        dot_opt += off_opt[f.index - 1] * f.value;
        dot_cur += off_cur[f.index - 1] * f.value;
        xsq += f.value * f.value;
      }
      mean_sq_opt += delta * delta * xsq + 2.0 * delta * dot_opt + off_opt_sq;
      mean_sq_cur += delta * delta * xsq + 2.0 * delta * dot_cur + off_cur_sq;
    }
    mean_sq_opt /= static_cast<double>(n);
    mean_sq_cur /= static_cast<double>(n);

    const Vector update_mean = anchor + correction_sum / static_cast<double>(n);
    unbiased.feed(1e-10 - (update_mean - g_w).lpNorm<Eigen::Infinity>());

    const double dist_w = (w - w_star).squaredNorm();
    const double dist_snap = (snap - w_star).squaredNorm();
    var_opt.feed(2.0 * lip * lip * (dist_w + dist_snap) - mean_sq_opt);
    var_cur.feed(4.0 * lip * lip * dist_w + 2.0 * lip * lip * dist_snap - mean_sq_cur);

    {
      const Vector u = random_point(rng, d, 4.0);
      const Vector v = random_point(rng, d, 4.0);
      const double eta = std::pow(10.0, -4.0 * rng.uniform());
      const RegularizerSpec l2{RegKind::L2, reg.beta, 0.0};
      const RegularizerSpec net{RegKind::ElasticNet, reg.beta,
                                reg.beta1 > 0.0 ? reg.beta1 : 1.0};
      const double allowed = (u - v).norm() / (1.0 + eta * reg.beta);
      contraction.feed(allowed - (prox(u, eta, l2) - prox(v, eta, l2)).norm());
      contraction.feed(allowed - (prox(u, eta, net) - prox(v, eta, net)).norm());
    }
  }

  Margin grid;
  std::size_t grid_points = 0;
  const double bound = strong_convexity(reg) / (128.0 * std::pow(stats.max_norm, 4.0));
  for (int k = 0; k <= 6; ++k) {
    const double eta = bound * std::pow(10.0, -k);
    for (const std::size_t m : {std::size_t{1}, std::size_t{10}, n, 10 * n}) {
      grid.feed(1.0 + 1e-12 - theory_constants(eta, reg.beta, stats.max_norm, m).stage_factor);
      ++grid_points;
    }
  }

  const double slack = 1e-9;
  InvariantReport report;
  report.checks = {
      {"gradient_lipschitz", lipschitz.worst >= -slack, lipschitz.worst, draws},
      {"update_unbiased", unbiased.worst >= 0.0, unbiased.worst, draws},
      {"variance_bound_at_optimum", var_opt.worst >= -slack, var_opt.worst, draws},
      {"variance_bound_at_iterate", var_cur.worst >= -slack, var_cur.worst, draws},
      {"prox_contraction", contraction.worst >= -slack, contraction.worst, draws},
      {"contraction_grid", grid.worst >= 0.0, grid.worst, grid_points},
  };
  return report;
}

}  // namespace vrspam
