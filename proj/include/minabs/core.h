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

#ifndef MINABS_CORE_H_
#define MINABS_CORE_H_

#include <complex>
#include <stdexcept>
#include <string>

namespace minabs {

using Complex = std::complex<double>;

// Raised for malformed user input (out-of-range amplitudes, priors, error
// probabilities, protocol parameters). The CLI maps it to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a requested quantity falls outside the feasible range of a
// closed-form inversion (e.g. an error probability too small for the priors).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Magnitudes up to this far above 1 are treated as parser round-off.
inline constexpr double kMagnitudeClampTolerance = 1e-12;
inline constexpr double kPriorSumTolerance = 1e-12;

// Transmission amplitudes of the two candidate objects. Immutable once built;
// use make_transparency_pair() to construct.
class TransparencyPair {
 public:
  Complex alpha1() const { return alpha1_; }
  Complex alpha2() const { return alpha2_; }
  // |beta_i| = sqrt(1 - |alpha_i|^2); the phases of beta are not modeled.
  double beta1_mag() const { return beta1_mag_; }
  double beta2_mag() const { return beta2_mag_; }
  double beta_product() const { return beta1_mag_ * beta2_mag_; }

  Complex alpha(int object) const { return object == 1 ? alpha1_ : alpha2_; }
  double beta_mag(int object) const { return object == 1 ? beta1_mag_ : beta2_mag_; }

  bool degenerate() const { return alpha1_ == alpha2_; }
  bool is_real() const { return alpha1_.imag() == 0.0 && alpha2_.imag() == 0.0; }

  // Throws ValidationError unless both amplitudes are real.
  void require_real(const std::string& context) const;

  // Same pair with the objects' roles exchanged.
  TransparencyPair swapped() const;

  friend TransparencyPair make_transparency_pair(Complex alpha1, Complex alpha2);

 private:
  TransparencyPair() = default;

  Complex alpha1_;
  Complex alpha2_;
  double beta1_mag_ = 0.0;
  double beta2_mag_ = 0.0;
};

TransparencyPair make_transparency_pair(Complex alpha1, Complex alpha2);

class PriorPair {
 public:
  // Equal priors.
  PriorPair() = default;
  // Requires p1, p2 >= 0 and |p1 + p2 - 1| <= 1e-12; the stored values are
  // renormalized to sum to exactly 1.
  PriorPair(double p1, double p2);

  static PriorPair from_p1(double p1) { return PriorPair(p1, 1.0 - p1); }

  double p1() const { return p1_; }
  double p2() const { return p2_; }
  double of(int object) const { return object == 1 ? p1_ : p2_; }
  double product() const { return p1_ * p2_; }
  bool equal() const { return p1_ == p2_; }

  PriorPair swapped() const { return PriorPair(p2_, p1_); }

 private:
  double p1_ = 0.5;
  double p2_ = 0.5;
};

// Probability of a wrong decision, in [0, 1/2].
class ErrorProbability {
 public:
  explicit ErrorProbability(double value);
  double value() const { return value_; }

 private:
  double value_;
};

}  // namespace minabs

#endif  // MINABS_CORE_H_
