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

#ifndef MINABS_VERIFIER_H_
#define MINABS_VERIFIER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "minabs/core.h"
#include "minabs/rng.h"

namespace minabs::verifier {

inline constexpr int kMaxPhotonIndex = 8;
inline constexpr double kChainTolerance = 1e-10;

struct Shape {
  int k_max = 4;  // ancilla photon numbers 0..k_max
  int m_max = 6;  // probe photon numbers 0..m_max
  friend bool operator==(const Shape&, const Shape&) = default;
};

// Amplitudes C[k][m] of one hypothesis' state before an interaction step,
// k ancilla photons and m probe photons. The absorbed-history label is common
// to both hypotheses for a single step and is folded into the entries.
class CoefficientTensor {
 public:
  // Zero tensor. Throws ValidationError for indices outside [0, 8].
  explicit CoefficientTensor(Shape shape);
  CoefficientTensor(Shape shape, std::vector<Complex> entries);

  // Independent complex-Gaussian entries, normalized.
  static CoefficientTensor random(Shape shape, SplitMix64& rng);

  const Shape& shape() const { return shape_; }
  Complex& at(int k, int m) { return entries_[index(k, m)]; }
  Complex at(int k, int m) const { return entries_[index(k, m)]; }
  const std::vector<Complex>& entries() const { return entries_; }

  double norm() const;
  CoefficientTensor normalized() const;
  // Sum over entries of m |C[k][m]|^2: mean probe photon number.
  double mean_probe_photons() const;

 private:
  std::size_t index(int k, int m) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(shape_.m_max + 1) +
           static_cast<std::size_t>(m);
  }

  Shape shape_;
  std::vector<Complex> entries_;
};

// |sum_{k,m} conj(C1) C2|.
double overlap_of(const CoefficientTensor& c1, const CoefficientTensor& c2);

// |sum_{k,m} conj(C1) C2 sigma^m| with sigma = conj(alpha1) alpha2 +
// exp(i phi*) |beta1 beta2|: the overlap after every probe photon has met the
// object, with the beta phase chosen optimally.
double post_interaction_overlap(const CoefficientTensor& c1, const CoefficientTensor& c2,
                                const TransparencyPair& pair);

struct DeltaFReport {
  double f_before = 0;
  double f_after = 0;
  double delta = 0;           // f_before - f_after
  double triangle = 0;        // |sum w (1 - sigma^m)|
  double termwise = 0;        // sum |w| |1 - sigma^m|
  double lemma = 0;           // (|1 - z| - |b1 b2|) sum |w| m
  double rhs = 0;             // gamma (p1 n1 + p2 n2) / (2 sqrt(p1 p2))
  double n1 = 0;              // |beta_i|^2 sum m |C_i|^2
  double n2 = 0;
  bool chain_holds = false;   // every intermediate inequality, within 1e-10
  bool pass = false;          // delta <= rhs + 1e-10

  double slack() const { return rhs - delta; }
};

DeltaFReport check_delta_f(const CoefficientTensor& c1, const CoefficientTensor& c2,
                           const TransparencyPair& pair, const PriorPair& priors);

// Random transparency with |alpha| uniform on [0, 1] and uniform phase.
Complex random_transparency(SplitMix64& rng);

// One replayable fuzz case.
struct FuzzCase {
  Shape shape;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  CoefficientTensor c1{Shape{}};
  CoefficientTensor c2{Shape{}};
  Complex alpha1;
  Complex alpha2;
  double p1 = 0.5;
};

// Deterministic in (shape, seed, index).
FuzzCase generate_case(Shape shape, std::uint64_t seed, std::uint64_t index);
DeltaFReport run_case(const FuzzCase& fuzz_case);

struct FuzzSummary {
  long cases = 0;
  long passes = 0;
  long chain_passes = 0;
  double worst_slack = 0;
  std::uint64_t worst_index = 0;
  std::vector<FuzzCase> failures;
};

// Throws ValidationError for n_cases < 1 or an invalid shape.
FuzzSummary fuzz(long n_cases, Shape shape, std::uint64_t seed);

struct LemmaSummary {
  long checks = 0;
  long failures = 0;
  double worst_slack = 0;
  double max_equality_error = 0;  // max |slack| at m = 1
};

// Lemma inequality on n_pairs random complex pairs for m = 1..m_max.
LemmaSummary lemma_suite(long n_pairs, int m_max, std::uint64_t seed);

nlohmann::json to_json(const FuzzCase& fuzz_case);
FuzzCase case_from_json(const nlohmann::json& record);
nlohmann::json to_json(const DeltaFReport& report);

}  // namespace minabs::verifier

#endif  // MINABS_VERIFIER_H_
