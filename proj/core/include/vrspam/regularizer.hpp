#pragma once

#include "vrspam/types.hpp"

namespace vrspam {

enum class RegKind { L2, ElasticNet };

/// Omega(w) = beta/2 |w|^2              (L2)
///          = beta/2 |w|^2 + beta1 |w|_1 (elastic net)
/// beta > 0 in both cases, so Omega is beta-strongly convex.
struct RegularizerSpec {
  RegKind kind = RegKind::L2;
  double beta = 1.0;
  double beta1 = 0.0;
};

double reg_value(const Vector& w, const RegularizerSpec& spec);

/// prox_{eta * Omega}(v). L2: v / (1 + eta*beta). Elastic net: soft
/// thresholding of v / (1 + eta*beta) at eta*beta1 / (1 + eta*beta),
/// producing exact zeros.
Vector prox(const Vector& v, double eta, const RegularizerSpec& spec);
void prox_inplace(Vector& v, double eta, const RegularizerSpec& spec);

/// Strong convexity modulus (beta for both kinds).
double strong_convexity(const RegularizerSpec& spec);

}  // namespace vrspam
