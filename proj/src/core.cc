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

#include "minabs/core.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minabs {
namespace {

double checked_magnitude(Complex alpha, const char* name) {
  double mag = std::abs(alpha);
  if (!std::isfinite(mag) || mag > 1.0 + kMagnitudeClampTolerance) {
    std::ostringstream msg;
    msg << name << " has magnitude " << mag << " > 1 (transmission amplitude must satisfy |"
        << name << "| <= 1)";
    throw ValidationError(msg.str());
  }
  return std::min(mag, 1.0);
}

// Rescale an amplitude whose magnitude sits within round-off above 1.
Complex clamp_to_unit(Complex alpha, double mag) {
  double raw = std::abs(alpha);
  return raw > 1.0 ? alpha * (mag / raw) : alpha;
}

}  // namespace

TransparencyPair make_transparency_pair(Complex alpha1, Complex alpha2) {
  double m1 = checked_magnitude(alpha1, "alpha1");
  double m2 = checked_magnitude(alpha2, "alpha2");
  TransparencyPair pair;
  pair.alpha1_ = clamp_to_unit(alpha1, m1);
  pair.alpha2_ = clamp_to_unit(alpha2, m2);
  pair.beta1_mag_ = std::sqrt(std::max(0.0, 1.0 - m1 * m1));
  pair.beta2_mag_ = std::sqrt(std::max(0.0, 1.0 - m2 * m2));
  return pair;
}

void TransparencyPair::require_real(const std::string& context) const {
  if (!is_real()) {
    throw ValidationError(context + " requires real transmission amplitudes");
  }
}

TransparencyPair TransparencyPair::swapped() const { return make_transparency_pair(alpha2_, alpha1_); }

PriorPair::PriorPair(double p1, double p2) {
  if (!(p1 >= 0.0) || !(p2 >= 0.0) || std::abs(p1 + p2 - 1.0) > kPriorSumTolerance) {
    std::ostringstream msg;
    msg << "priors (" << p1 << ", " << p2 << ") must be nonnegative and sum to 1";
    throw ValidationError(msg.str());
  }
  double total = p1 + p2;
  p1_ = p1 / total;
  p2_ = p2 / total;
}

ErrorProbability::ErrorProbability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 0.5)) {
    std::ostringstream msg;
    msg << "error probability " << value << " outside [0, 1/2]";
    throw ValidationError(msg.str());
  }
}

}  // namespace minabs
