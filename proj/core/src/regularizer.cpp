#include "vrspam/regularizer.hpp"

#include <cmath>

namespace vrspam {

namespace {

void validate(const RegularizerSpec& spec) {
  if (!(spec.beta > 0.0)) throw ConfigError("regularizer beta must be positive");
  if (spec.beta1 < 0.0) throw ConfigError("regularizer beta1 must be non-negative");
}

}  // namespace

double reg_value(const Vector& w, const RegularizerSpec& spec) {
  validate(spec);
  double v = 0.5 * spec.beta * w.squaredNorm();
  if (spec.kind == RegKind::ElasticNet) v += spec.beta1 * w.lpNorm<1>();
  return v;
}

void prox_inplace(Vector& v, double eta, const RegularizerSpec& spec) {
  validate(spec);
  if (!(eta > 0.0)) throw ConfigError("prox step eta must be positive");

  const double shrink = 1.0 + eta * spec.beta;
  if (spec.kind == RegKind::L2) {
    v /= shrink;
    return;
  }
  const double threshold = eta * spec.beta1 / shrink;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double u = v[i] / shrink;
    const double mag = std::abs(u) - threshold;
    v[i] = mag > 0.0 ? std::copysign(mag, u) : 0.0;
  }
}

Vector prox(const Vector& v, double eta, const RegularizerSpec& spec) {
  Vector out = v;
  prox_inplace(out, eta, spec);
  return out;
}

double strong_convexity(const RegularizerSpec& spec) {
  validate(spec);
  return spec.beta;
}

}  // namespace vrspam
