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

#ifndef MINABS_BOUND_H_
#define MINABS_BOUND_H_

#include "minabs/core.h"

namespace minabs::bound {

// Denominators at or below this are treated as zero (identical objects).
inline constexpr double kDenominatorEpsilon = 1e-15;

// Intermediate quantities of the absorbed-photon lower bound.
struct BoundBreakdown {
  double phi_star = 0.0;   // optimal phase of beta1*beta2, in [-pi/2, pi/2]
  Complex sigma;           // conj(alpha1)*alpha2 + exp(i*phi_star)*|beta1*beta2|
  double numerator = 0.0;  // 2|beta1 beta2| (sqrt(p1 p2) - sqrt(pe (1 - pe)))
  double denominator = 0.0;  // |1 - conj(alpha1) alpha2| - |beta1 beta2|
  double bound = 0.0;      // numerator / denominator, clamped at 0
  bool infinite = false;   // denominator vanished with a positive numerator
};

// Phase phi minimizing |1 - sigma(phi)|: the solution in [-pi/2, pi/2] of
// (1 - Re z) sin(phi) = -Im(z) cos(phi) with z = conj(alpha1) alpha2.
double optimal_phase(const TransparencyPair& pair);

// sigma(phi) = conj(alpha1) alpha2 + exp(i phi) |beta1 beta2|.
Complex sigma(const TransparencyPair& pair, double phi);

// |1 - conj(alpha1) alpha2| - |beta1 beta2|. Never negative.
double bound_denominator(const TransparencyPair& pair);

// (|1 - conj(alpha1) alpha2| - |beta1 beta2|) / |beta1 beta2|. Throws
// ValidationError when |beta1 beta2| == 0 (interaction-free regime, where only
// absorbed_photon_bound is meaningful).
double gamma(const TransparencyPair& pair);

// Lower bound on the mean number of absorbed photons of any protocol that
// discriminates the pair with error probability pe. Degenerate pairs yield an
// infinite-flagged result rather than an exception.
BoundBreakdown absorbed_photon_bound(const TransparencyPair& pair, const PriorPair& priors,
                                     ErrorProbability pe);

struct LemmaCheck {
  bool holds = false;
  double slack = 0.0;  // m (|1 - z| - |beta1 beta2|) - |1 - sigma^m|
};

// Checks |1 - sigma(phi*)^m| <= m (|1 - conj(alpha1) alpha2| - |beta1 beta2|)
// with tolerance 1e-10 on the slack. m must be >= 1.
LemmaCheck lemma_rhs_holds(const TransparencyPair& pair, int m);

// Helstrom minimum error for two pure states of the given overlap:
// 1/2 (1 - sqrt(1 - 4 p1 p2 overlap^2)).
ErrorProbability helstrom_error(double overlap, const PriorPair& priors);

// Inverse of helstrom_error: sqrt(pe (1 - pe) / (p1 p2)). Throws RangeError
// when the result would exceed 1.
double overlap_for_error(ErrorProbability pe, const PriorPair& priors);

}  // namespace minabs::bound

#endif  // MINABS_BOUND_H_
