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

#include "minabs/zeno.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "minabs/bound.h"

namespace minabs::zeno {
namespace {

constexpr double kStallEpsilon = 1e-15;
constexpr double kSignEpsilon = 1e-14;

int sign_of(double x) {
  if (std::abs(x) < kSignEpsilon) return 0;
  return x > 0.0 ? 1 : -1;
}

// Values of sign 0 are compatible with either sign.
bool same_sign(double x, double y, double z) {
  bool any_pos = false;
  bool any_neg = false;
  for (double v : {x, y, z}) {
    int s = sign_of(v);
    any_pos |= s > 0;
    any_neg |= s < 0;
  }
  return !(any_pos && any_neg);
}

void check_theta0(double theta0) {
  if (!std::isfinite(theta0)) throw ValidationError("theta0 must be finite");
  if (theta0 == 0.0) {
    throw ValidationError(
        "theta0 = 0: protocol never couples to object (no photon ever passes through it)");
  }
}

double fold_principal(double theta) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  if (theta > kHalfPi) return theta - std::numbers::pi;
  if (theta <= -kHalfPi) return theta + std::numbers::pi;
  return theta;
}

// Single-pass drop bound at one step; infinite when gamma is undefined but
// the object arm is populated.
double drop_bound(const TransparencyPair& pair, const PriorPair& priors, double n1, double n2) {
  double bb = pair.beta_product();
  double weighted = priors.p1() * n1 + priors.p2() * n2;
  if (bb == 0.0) return weighted > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return bound::gamma(pair) * weighted / (2.0 * std::sqrt(priors.product()));
}

}  // namespace

std::optional<double> try_zeno_angle(const ZenoState& state, const TransparencyPair& pair) {
  pair.require_real("zeno_angle");
  double al1 = pair.alpha1().real();
  double al2 = pair.alpha2().real();
  double be1 = pair.beta1_mag();
  double be2 = pair.beta2_mag();
  double num = al1 * be1 * state.b1 - al2 * be2 * state.b2;
  double den = be2 * state.a2 - be1 * state.a1;
  if (std::abs(num) < kStallEpsilon && std::abs(den) < kStallEpsilon) return std::nullopt;
  return fold_principal(std::atan2(num, den));
}

double zeno_angle(const ZenoState& state, const TransparencyPair& pair) {
  auto theta = try_zeno_angle(state, pair);
  if (!theta) {
    std::ostringstream msg;
    msg << "adaptive angle stalled at step " << state.step
        << ": numerator and denominator both vanish";
    throw StalledError(msg.str());
  }
  return *theta;
}

ZenoState zeno_step(const ZenoState& state, const TransparencyPair& pair, double theta) {
  pair.require_real("zeno_step");
  double al1 = pair.alpha1().real();
  double al2 = pair.alpha2().real();
  double be1 = pair.beta1_mag();
  double be2 = pair.beta2_mag();
  double c = std::cos(theta);
  double s = std::sin(theta);

  ZenoState next;
  next.step = state.step + 1;
  next.q1 = state.q1 + be1 * be1 * state.b1 * state.b1;
  next.q2 = state.q2 + be2 * be2 * state.b2 * state.b2;
  next.absorbed_overlap = state.absorbed_overlap + be1 * be2 * state.b1 * state.b2;
  next.a1 = state.a1 * c - al1 * state.b1 * s;
  next.b1 = al1 * state.b1 * c + state.a1 * s;
  next.a2 = state.a2 * c - al2 * state.b2 * s;
  next.b2 = al2 * state.b2 * c + state.a2 * s;
  return next;
}

double signed_overlap(const ZenoState& state) {
  return state.a1 * state.a2 + state.b1 * state.b2 + state.absorbed_overlap;
}

double surviving_overlap(const ZenoState& state) {
  return state.a1 * state.a2 + state.b1 * state.b2;
}

double conditioned_overlap(const ZenoState& state) {
  double survive = (1.0 - state.q1) * (1.0 - state.q2);
  if (survive <= 0.0) return 0.0;
  return std::min(1.0, std::abs(surviving_overlap(state)) / std::sqrt(survive));
}

Trajectory simulate(const TransparencyPair& pair, double theta0, int cap) {
  pair.require_real("zeno protocol");
  check_theta0(theta0);
  if (cap < 0) throw ValidationError("step cap must be >= 0");

  // Diagnostics use equal priors, where the adaptive rule saturates the
  // per-step inequality.
  const PriorPair equal;
  const double be1 = pair.beta1_mag();
  const double be2 = pair.beta2_mag();

  Trajectory traj;
  traj.theta0 = theta0;
  traj.states.push_back(initial_state());
  for (int j = 0; j < cap; ++j) {
    const ZenoState& cur = traj.states.back();
    StepRecord rec;
    if (j == 0) {
      rec.theta = theta0;
    } else {
      auto theta = try_zeno_angle(cur, pair);
      rec.adaptive = true;
      rec.stalled = !theta.has_value();
      rec.theta = theta.value_or(0.0);
    }
    ZenoState next = zeno_step(cur, pair, rec.theta);

    double before = surviving_overlap(cur);
    double after = surviving_overlap(next);
    if (!same_sign(before, after, before - after)) break;

    rec.absorption_mismatch = std::abs(be1 * next.b1 - be2 * next.b2);
    rec.n1 = next.q1 - cur.q1;
    rec.n2 = next.q2 - cur.q2;
    rec.overlap_drop = std::abs(signed_overlap(cur)) - std::abs(signed_overlap(next));
    rec.overlap_drop_bound = drop_bound(pair, equal, be1 * be1 * cur.b1 * cur.b1,
                                        be2 * be2 * cur.b2 * cur.b2);
    traj.steps.push_back(rec);
    traj.states.push_back(next);
  }
  traj.max_steps = static_cast<int>(traj.steps.size());
  return traj;
}

int max_steps(const TransparencyPair& pair, double theta0, int cap) {
  return simulate(pair, theta0, cap).max_steps;
}

double RunResult::relative_gap() const {
  if (bound_infinite) return -std::numeric_limits<double>::infinity();
  return gap / std::max(1.0, bound_at_pe);
}

RunResult summarize(const ZenoState& state, const TransparencyPair& pair,
                    const PriorPair& priors, double theta0) {
  RunResult r;
  r.K = state.step;
  r.theta0 = theta0;
  r.fK = conditioned_overlap(state);
  r.f_single = std::min(1.0, std::abs(signed_overlap(state)));
  r.pe = bound::helstrom_error(r.fK, priors).value();
  auto nabs = [](double q) { return q > 0.0 ? (q < 1.0 ? q / (1.0 - q) : std::numeric_limits<double>::infinity()) : 0.0; };
  r.nabs1 = nabs(state.q1);
  r.nabs2 = nabs(state.q2);
  r.nabs_mean = priors.p1() * r.nabs1 + priors.p2() * r.nabs2;
  auto b = bound::absorbed_photon_bound(pair, priors, ErrorProbability(r.pe));
  r.bound_at_pe = b.bound;
  r.bound_infinite = b.infinite;
  r.gap = r.nabs_mean - r.bound_at_pe;
  return r;
}

RunResult run_protocol(const TransparencyPair& pair, const PriorPair& priors, double theta0,
                       int K) {
  if (K < 0) throw ValidationError("K must be >= 0");
  Trajectory traj = simulate(pair, theta0, K);
  if (traj.max_steps < K) {
    std::ostringstream msg;
    msg << "K = " << K << " exceeds max_steps = " << traj.max_steps
        << ": overlaps <j>, <j+1> and <j> - <j+1> no longer share a sign at step "
        << traj.max_steps;
    throw SignConditionError(msg.str());
  }
  return summarize(traj.states.back(), pair, priors, theta0);
}

std::vector<RunResult> run_all_steps(const TransparencyPair& pair, const PriorPair& priors,
                                     double theta0, int cap, int stride) {
  if (stride < 1) throw ValidationError("K stride must be >= 1");
  Trajectory traj = simulate(pair, theta0, cap);
  std::vector<RunResult> out;
  for (int k = 1; k <= traj.max_steps; k += stride) {
    out.push_back(summarize(traj.states[k], pair, priors, theta0));
  }
  if (traj.max_steps >= 1 && (traj.max_steps - 1) % stride != 0) {
    out.push_back(summarize(traj.states.back(), pair, priors, theta0));
  }
  return out;
}

}  // namespace minabs::zeno
