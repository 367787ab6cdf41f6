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

#include "minabs/classical.h"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "minabs/parallel.h"

namespace minabs::classical {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// count * log_weight with 0 * -inf = 0.
double weighted(long count, double log_weight) {
  return count == 0 ? 0.0 : static_cast<double>(count) * log_weight;
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

struct Moments {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  void add(double v) {
    sum.add(v);
    sum_sq.add(v * v);
  }
  double mean(long n) const { return sum.value() / static_cast<double>(n); }
  double standard_error(long n) const {
    if (n < 2) return 0.0;
    double m = mean(n);
    double var = (sum_sq.value() - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  }
};

}  // namespace

void ClassicalConfig::validate() const {
  pair.require_real("classical photon counting");
  if (!(x > 0.0 && x < 0.5)) throw ValidationError("x must lie in (0, 1/2)");
  if (max_photons < 1) throw ValidationError("max_photons must be >= 1");
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (likelihood_exponent != 1 && likelihood_exponent != 2) {
    throw ValidationError("likelihood exponent must be 1 or 2");
  }
}

StoppingRule::StoppingRule(const TransparencyPair& pair, const PriorPair& priors, double x,
                           int likelihood_exponent)
    : x_(x) {
  double e = likelihood_exponent;
  log_t1_ = e * safe_log(std::abs(pair.alpha1()));
  log_t2_ = e * safe_log(std::abs(pair.alpha2()));
  log_r1_ = e * safe_log(pair.beta1_mag());
  log_r2_ = e * safe_log(pair.beta2_mag());
  log_prior_ratio_ = safe_log(priors.p1()) - safe_log(priors.p2());
}

double StoppingRule::log_likelihood_ratio(long m, long n) const {
  if (m < 0 || m > n) {
    std::ostringstream msg;
    msg << "posterior needs 0 <= m <= n, got m = " << m << ", n = " << n;
    throw ValidationError(msg.str());
  }
  double l1 = weighted(n - m, log_t1_) + weighted(m, log_r1_);
  double l2 = weighted(n - m, log_t2_) + weighted(m, log_r2_);
  if (l1 == kNegInf && l2 == kNegInf) {
    throw ValidationError("observation has zero likelihood under both objects");
  }
  return l1 - l2;
}

double StoppingRule::posterior(long m, long n) const {
  double llr = log_likelihood_ratio(m, n);
  double z = llr + log_prior_ratio_;
  if (std::isnan(z)) {
    // One prior is zero and the data rule out the other object.
    throw ValidationError("posterior undefined: observation impossible under the prior");
  }
  return logistic(z);
}

Decision StoppingRule::evaluate(long m, long n) const {
  double p = posterior(m, n);
  if (p > 1.0 - x_) return Decision::kObject1;
  if (p < x_) return Decision::kObject2;
  return Decision::kUndecided;
}

Decision StoppingRule::likelier(long m, long n) const {
  return posterior(m, n) >= 0.5 ? Decision::kObject1 : Decision::kObject2;
}

double posterior(long m, long n, const TransparencyPair& pair, const PriorPair& priors,
                 int likelihood_exponent) {
  return StoppingRule(pair, priors, 0.25, likelihood_exponent).posterior(m, n);
}

TrialOutcome run_trial(int true_object, const ClassicalConfig& config, SplitMix64& rng) {
  if (true_object != 1 && true_object != 2) throw ValidationError("true object must be 1 or 2");
  StoppingRule rule(config.pair, config.priors, config.x, config.likelihood_exponent);
  const double absorb = config.pair.beta_mag(true_object) * config.pair.beta_mag(true_object);

  TrialOutcome out;
  out.decision = rule.evaluate(0, 0);
  while (out.decision == Decision::kUndecided && out.sent < config.max_photons) {
    ++out.sent;
    if (rng.uniform() < absorb) ++out.absorbed;
    out.decision = rule.evaluate(out.absorbed, out.sent);
  }
  if (out.decision == Decision::kUndecided) {
    out.hit_cap = true;
    out.decision = rule.likelier(out.absorbed, out.sent);
  }
  out.posterior1 = rule.posterior(out.absorbed, out.sent);
  return out;
}

ClassicalEstimate estimate(const ClassicalConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.trials);
  std::vector<TrialOutcome> outcomes(n);
  std::vector<int> truth(n);
  parallel_for(n, [&](std::size_t t) {
    SplitMix64 rng = SplitMix64::substream(config.seed, t);
    truth[t] = rng.uniform() < config.priors.p1() ? 1 : 2;
    outcomes[t] = run_trial(truth[t], config, rng);
  });

  Moments post, freq, absorbed;
  CompensatedSum sent, undecided;
  for (std::size_t t = 0; t < n; ++t) {
    const TrialOutcome& o = outcomes[t];
    post.add(o.error_posterior());
    freq.add(static_cast<int>(o.decision) != truth[t] ? 1.0 : 0.0);
    absorbed.add(static_cast<double>(o.absorbed));
    sent.add(static_cast<double>(o.sent));
    undecided.add(o.hit_cap ? 1.0 : 0.0);
  }
  ClassicalEstimate e;
  e.x = config.x;
  e.trials = config.trials;
  e.pe_posterior = post.mean(config.trials);
  e.pe_posterior_se = post.standard_error(config.trials);
  e.pe_frequency = freq.mean(config.trials);
  e.pe_frequency_se = freq.standard_error(config.trials);
  e.nabs = absorbed.mean(config.trials);
  e.nabs_se = absorbed.standard_error(config.trials);
  e.mean_sent = sent.value() / static_cast<double>(config.trials);
  e.undecided_fraction = undecided.value() / static_cast<double>(config.trials);
  return e;
}

std::vector<ClassicalEstimate> sweep(ClassicalConfig config, const std::vector<double>& x_grid) {
  std::vector<ClassicalEstimate> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    config.x = x;
    out.push_back(estimate(config));
  }
  return out;
}

ExactEvaluation exact_evaluate(const ClassicalConfig& config) {
  config.validate();
  StoppingRule rule(config.pair, config.priors, config.x, config.likelihood_exponent);
  const double r1 = config.pair.beta1_mag() * config.pair.beta1_mag();
  const double r2 = config.pair.beta2_mag() * config.pair.beta2_mag();
  const double p1 = config.priors.p1();
  const double p2 = config.priors.p2();

  ExactEvaluation out;
  CompensatedSum pe, nabs, sent;
  // Joint probability (prior times path probability) of reaching (m, n)
  // undecided, per true object.
  struct Mass {
    double w1 = 0;
    double w2 = 0;
  };
  auto settle = [&](long m, long n, const Mass& w, Decision d) {
    pe.add(d == Decision::kObject1 ? w.w2 : w.w1);
    nabs.add((w.w1 + w.w2) * static_cast<double>(m));
    sent.add((w.w1 + w.w2) * static_cast<double>(n));
  };

  std::map<long, Mass> live;
  Decision first = rule.evaluate(0, 0);
  if (first != Decision::kUndecided) {
    settle(0, 0, {p1, p2}, first);
  } else {
    live[0] = {p1, p2};
  }
  for (long n = 1; n <= config.max_photons && !live.empty(); ++n) {
    std::map<long, Mass> next;
    for (const auto& [m, w] : live) {
      Mass& hit = next[m + 1];
      hit.w1 += w.w1 * r1;
      hit.w2 += w.w2 * r2;
      Mass& miss = next[m];
      miss.w1 += w.w1 * (1.0 - r1);
      miss.w2 += w.w2 * (1.0 - r2);
    }
    live.clear();
    for (const auto& [m, w] : next) {
      if (w.w1 == 0.0 && w.w2 == 0.0) continue;
      Decision d = rule.evaluate(m, n);
      if (d == Decision::kUndecided && n == config.max_photons) {
        out.undecided_probability += w.w1 + w.w2;
        d = rule.likelier(m, n);
      }
      if (d == Decision::kUndecided) {
        live[m] = w;
      } else {
        settle(m, n, w, d);
      }
    }
  }
  out.pe = pe.value();
  out.nabs = nabs.value();
  out.mean_sent = sent.value();
  return out;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi >= lo) || count < 1) throw ValidationError("invalid log grid");
  std::vector<double> out;
  if (count == 1) return {lo};
  for (int i = 0; i < count; ++i) {
    double t = static_cast<double>(i) / (count - 1);
    out.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
  }
  return out;
}

}  // namespace minabs::classical
