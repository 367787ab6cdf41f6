// Copyright 2026 The minabs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "minabs/bound.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minabs::bound {
namespace {

constexpr double kLemmaTolerance = 1e-10;
constexpr double kOverlapTolerance = 1e-12;

Complex alpha_overlap(const TransparencyPair& pair) {
  return std::conj(pair.alpha1()) * pair.alpha2();
}

}  // namespace

double optimal_phase(const TransparencyPair& pair) {
  Complex z = alpha_overlap(pair);
  // 1 - Re z >= 0 because |z| <= 1, so atan2 already lands in [-pi/2, pi/2]:
  // the minimizer aligns exp(i phi) with 1 - z.
  double re = 1.0 - z.real();
  double im = -z.imag();
  if (re == 0.0 && im == 0.0) return 0.0;
  return std::atan2(im, re);
}

Complex sigma(const TransparencyPair& pair, double phi) {
  return alpha_overlap(pair) + std::polar(pair.beta_product(), phi);
}

double bound_denominator(const TransparencyPair& pair) {
  // Cauchy-Schwarz gives |1 - z| >= 1 - |a1||a2| >= |b1||b2|; clamp round-off.
  return std::max(0.0, std::abs(1.0 - alpha_overlap(pair)) - pair.beta_product());
}

double gamma(const TransparencyPair& pair) {
  double bb = pair.beta_product();
  if (bb == 0.0) {
    throw ValidationError(
        "gamma undefined for |beta1 beta2| = 0 (interaction-free regime); use "
        "absorbed_photon_bound");
  }
  return bound_denominator(pair) / bb;
}

BoundBreakdown absorbed_photon_bound(const TransparencyPair& pair, const PriorPair& priors,
                                     ErrorProbability pe) {
  BoundBreakdown out;
  out.phi_star = optimal_phase(pair);
  out.sigma = sigma(pair, out.phi_star);
  double p = pe.value();
  out.numerator =
      2.0 * pair.beta_product() * (std::sqrt(priors.product()) - std::sqrt(p * (1.0 - p)));
  out.denominator = bound_denominator(pair);
  if (out.numerator <= 0.0) {
    out.bound = 0.0;
  } else if (out.denominator <= kDenominatorEpsilon) {
    out.bound = std::numeric_limits<double>::infinity();
    out.infinite = true;
  } else {
    out.bound = out.numerator / out.denominator;
  }
  return out;
}

LemmaCheck lemma_rhs_holds(const TransparencyPair& pair, int m) {
  if (m < 1) throw ValidationError("lemma exponent m must be >= 1");
  Complex s = sigma(pair, optimal_phase(pair));
  double lhs = std::abs(1.0 - std::pow(s, m));
  double rhs = m * (std::abs(1.0 - alpha_overlap(pair)) - pair.beta_product());
  LemmaCheck out;
  out.slack = rhs - lhs;
  out.holds = out.slack >= -kLemmaTolerance;
  return out;
}

ErrorProbability helstrom_error(double overlap, const PriorPair& priors) {
  if (!(overlap >= 0.0 && overlap <= 1.0 + kOverlapTolerance)) {
    std::ostringstream msg;
    msg << "overlap " << overlap << " outside [0, 1]";
    throw ValidationError(msg.str());
  }
  double f = std::min(overlap, 1.0);
  double disc = std::max(0.0, 1.0 - 4.0 * priors.product() * f * f);
  // 2 p1 p2 f^2 / (1 + sqrt(disc)) equals (1 - sqrt(disc)) / 2 without the cancellation at small f.
  double pe = 2.0 * priors.product() * f * f / (1.0 + std::sqrt(disc));
  return ErrorProbability(std::clamp(pe, 0.0, 0.5));
}

double overlap_for_error(ErrorProbability pe, const PriorPair& priors) {
  double p = pe.value();
  double num = p * (1.0 - p);
  if (num == 0.0) return 0.0;
  double prod = priors.product();
  double f = prod > 0.0 ? std::sqrt(num / prod) : std::numeric_limits<double>::infinity();
  if (f > 1.0 + kOverlapTolerance) {
    std::ostringstream msg;
    msg << "error probability " << p << " infeasible for priors (" << priors.p1() << ", "
        << priors.p2() << "): it exceeds the prior-only error min(p1, p2)";
    throw RangeError(msg.str());
  }
  return std::min(f, 1.0);
}

}  // namespace minabs::bound
