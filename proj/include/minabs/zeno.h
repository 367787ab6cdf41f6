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

#ifndef MINABS_ZENO_H_
#define MINABS_ZENO_H_

#include <optional>
#include <stdexcept>
#include <vector>

#include "minabs/core.h"

namespace minabs::zeno {

// Single-photon state of the variable-angle Zeno protocol under both
// hypotheses at step j. For object i the photon is in the empty arm with
// amplitude a_i and in the object arm with amplitude b_i; q_i is the
// probability that it has already been absorbed, and absorbed_overlap is the
// inner product between the two hypotheses' absorbed components.
struct ZenoState {
  int step = 0;
  double a1 = 1.0;
  double b1 = 0.0;
  double a2 = 1.0;
  double b2 = 0.0;
  double absorbed_overlap = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;

  double norm_error(int object) const {
    return object == 1 ? a1 * a1 + b1 * b1 + q1 - 1.0 : a2 * a2 + b2 * b2 + q2 - 1.0;
  }

  friend bool operator==(const ZenoState&, const ZenoState&) = default;
};

inline ZenoState initial_state() { return ZenoState{}; }

// The adaptive angle is 0/0: every angle satisfies the equal-absorption
// condition.
class StalledError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested number of steps runs past the sign (triangle) condition.
class SignConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rotation angle making the next-step absorption amplitudes of the two
// objects equal: tan(theta) = (a1 b1' b1 - a2 b2' b2) / (b2' a2 - b1' a1) with
// b_i' the absorption magnitudes. Principal branch (-pi/2, pi/2].
// Throws StalledError on 0/0 and ValidationError for complex pairs.
double zeno_angle(const ZenoState& state, const TransparencyPair& pair);
std::optional<double> try_zeno_angle(const ZenoState& state, const TransparencyPair& pair);

// One protocol step: interaction with the object, then rotation by theta.
ZenoState zeno_step(const ZenoState& state, const TransparencyPair& pair, double theta);

// a1 a2 + b1 b2 + absorbed_overlap: the full single-pass inner product.
double signed_overlap(const ZenoState& state);

// a1 a2 + b1 b2: inner product of the components that have not been absorbed.
double surviving_overlap(const ZenoState& state);

// Overlap of the post-selected (not absorbed) photon states,
// |a1 a2 + b1 b2| / sqrt((1 - q1)(1 - q2)). This is the overlap of the state
// finally measured under repeat-until-success. Zero when a hypothesis has no
// surviving amplitude.
double conditioned_overlap(const ZenoState& state);

// Largest K such that every step j < K keeps <j>, <j+1> and their difference
// (surviving-component overlaps) of one sign; cap if never violated.
// theta0 == 0 is rejected: the photon would never reach the object.
int max_steps(const TransparencyPair& pair, double theta0, int cap);

// Per-step diagnostics recorded while simulating.
struct StepRecord {
  double theta = 0.0;
  bool adaptive = false;           // angle came from zeno_angle
  bool stalled = false;            // adaptive angle was 0/0, theta = 0 used
  double absorption_mismatch = 0;  // |beta1 b1' - beta2 b2'| after the step
  double overlap_drop = 0;         // f^j - f^{j+1}, single-pass |overlap|
  double overlap_drop_bound = 0;   // gamma (p1 n1 + p2 n2) / (2 sqrt(p1 p2)) at equal priors
  double n1 = 0;                   // absorption probability of this step, object 1
  double n2 = 0;
};

struct Trajectory {
  double theta0 = 0.0;
  std::vector<ZenoState> states;  // states[0] initial, states[k] after k steps
  std::vector<StepRecord> steps;  // steps[k] leads from states[k] to states[k+1]
  int max_steps = 0;              // number of admissible steps (== states.size() - 1)
};

// Runs the protocol (theta0 first, then adaptive angles) until the sign
// condition fails or cap steps have been taken.
Trajectory simulate(const TransparencyPair& pair, double theta0, int cap);

struct RunResult {
  int K = 0;
  double theta0 = 0.0;
  double fK = 0.0;        // conditioned overlap, determines pe
  double f_single = 0.0;  // |single-pass overlap| including absorbed parts
  double pe = 0.5;
  double nabs1 = 0.0;     // q_i / (1 - q_i), repeat until success
  double nabs2 = 0.0;
  double nabs_mean = 0.0;
  double bound_at_pe = 0.0;
  bool bound_infinite = false;
  double gap = 0.0;       // nabs_mean - bound_at_pe

  // gap / max(1, bound_at_pe)
  double relative_gap() const;
};

// Summary of stopping after the given state.
RunResult summarize(const ZenoState& state, const TransparencyPair& pair,
                    const PriorPair& priors, double theta0);

// Runs K steps. Throws SignConditionError if K exceeds the admissible range
// and ValidationError for K < 0, theta0 == 0 or complex pairs.
RunResult run_protocol(const TransparencyPair& pair, const PriorPair& priors, double theta0,
                       int K);

// One RunResult per admissible K in {1, 1 + stride, ...} plus the last one.
std::vector<RunResult> run_all_steps(const TransparencyPair& pair, const PriorPair& priors,
                                     double theta0, int cap, int stride = 1);

}  // namespace minabs::zeno

#endif  // MINABS_ZENO_H_
