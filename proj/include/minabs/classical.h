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

#ifndef MINABS_CLASSICAL_H_
#define MINABS_CLASSICAL_H_

#include <cstdint>
#include <vector>

#include "minabs/core.h"
#include "minabs/rng.h"

namespace minabs::classical {

// Sequential photon-counting baseline: photons are sent one at a time, each
// absorbed with probability |beta_i|^2, and the experiment stops as soon as
// the posterior of object 1 leaves [x, 1 - x].
struct ClassicalConfig {
  TransparencyPair pair;
  PriorPair priors;
  double x = 0.01;               // maximum tolerated posterior error, in (0, 1/2)
  long max_photons = 100000;     // per trial; undecided trials take the likelier object
  long trials = 100000;
  std::uint64_t seed = 0;
  // Power applied to |alpha|, |beta| in the likelihood. 2 matches the
  // physical absorption probabilities; 1 is the unsquared variant.
  int likelihood_exponent = 2;

  // Throws ValidationError on out-of-range fields.
  void validate() const;
};

enum class Decision { kUndecided = 0, kObject1 = 1, kObject2 = 2 };

// Posterior threshold rule with likelihoods precomputed in log space.
class StoppingRule {
 public:
  StoppingRule(const TransparencyPair& pair, const PriorPair& priors, double x,
               int likelihood_exponent = 2);

  // P(object 1 | m absorbed out of n sent).
  double posterior(long m, long n) const;
  // kObject1 above 1 - x, kObject2 below x, kUndecided otherwise.
  Decision evaluate(long m, long n) const;
  // Forced decision at the photon cap.
  Decision likelier(long m, long n) const;

 private:
  double log_likelihood_ratio(long m, long n) const;

  double log_t1_, log_t2_;  // log transmission weights
  double log_r1_, log_r2_;  // log absorption weights
  double log_prior_ratio_;
  double x_;
};

// Posterior of object 1 given m absorptions among n photons, computed in log
// space. Throws ValidationError unless 0 <= m <= n, and when both likelihoods
// vanish (the observation is impossible under both objects).
double posterior(long m, long n, const TransparencyPair& pair, const PriorPair& priors,
                 int likelihood_exponent = 2);

struct TrialOutcome {
  Decision decision = Decision::kUndecided;
  bool hit_cap = false;   // decided by the likelier posterior at max_photons
  long absorbed = 0;
  long sent = 0;
  double posterior1 = 0;  // posterior of object 1 when stopping
  // Posterior mass of the hypothesis that was not chosen.
  double error_posterior() const {
    return decision == Decision::kObject1 ? 1.0 - posterior1 : posterior1;
  }
};

TrialOutcome run_trial(int true_object, const ClassicalConfig& config, SplitMix64& rng);

struct ClassicalEstimate {
  double x = 0;
  double pe_posterior = 0;  // mean posterior mass of the rejected hypothesis
  double pe_frequency = 0;  // fraction of wrong decisions
  double pe_posterior_se = 0;
  double pe_frequency_se = 0;
  double nabs = 0;          // mean absorbed photons
  double nabs_se = 0;
  double mean_sent = 0;
  double undecided_fraction = 0;
  long trials = 0;
};

// Monte Carlo over config.trials trials; trial t uses substream (seed, t) for
// both the true object (drawn from the priors) and its photons.
ClassicalEstimate estimate(const ClassicalConfig& config);

std::vector<ClassicalEstimate> sweep(ClassicalConfig config, const std::vector<double>& x_grid);

// Exact expectation of the same stopping rule by dynamic programming over the
// reachable (m, n) lattice.
struct ExactEvaluation {
  double pe = 0;
  double nabs = 0;
  double mean_sent = 0;
  double undecided_probability = 0;  // mass that reached max_photons
};

ExactEvaluation exact_evaluate(const ClassicalConfig& config);

// log-spaced grid of count values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace minabs::classical

#endif  // MINABS_CLASSICAL_H_
