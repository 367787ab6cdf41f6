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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

namespace minabs::bound {
namespace {

// Expected values below come from a 40-digit mpmath evaluation of the same
// closed forms.

TransparencyPair random_pair(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> mag(0.0, 1.0), phase(-std::numbers::pi, std::numbers::pi);
  return make_transparency_pair(std::polar(mag(gen), phase(gen)), std::polar(mag(gen), phase(gen)));
}

// Grid-search oracle for the minimizing phase.
double grid_min_distance(const TransparencyPair& pair, int points) {
  double best = INFINITY;
  for (int i = 0; i < points; ++i) {
    double phi = -std::numbers::pi + 2 * std::numbers::pi * i / (points - 1);
    best = std::min(best, std::abs(1.0 - sigma(pair, phi)));
  }
  return best;
}

TEST(OptimalPhase, RealPairIsZero) { EXPECT_EQ(optimal_phase(make_transparency_pair(0.2, 0.3)), 0.0); }

TEST(OptimalPhase, BeatsGridSearchForImaginaryAlpha) {
  TransparencyPair pair = make_transparency_pair(0.2, Complex(0.0, 0.3));
  double phi = optimal_phase(pair);
  EXPECT_GE(phi, -std::numbers::pi / 2);
  EXPECT_LE(phi, std::numbers::pi / 2);
  EXPECT_LE(std::abs(1.0 - sigma(pair, phi)), grid_min_distance(pair, 10000) + 1e-12);
}

TEST(OptimalPhase, KnownComplexValue) {
  TransparencyPair pair = make_transparency_pair(std::polar(0.6, 0.7), std::polar(0.5, -1.1));
  EXPECT_NEAR(optimal_phase(pair), 0.26698190241657511908, 1e-13);
}

TEST(OptimalPhase, ZeroBetaProductStillSolvesEquation) {
  TransparencyPair pair = make_transparency_pair(Complex(0.0, 1.0), 0.4);
  double phi = optimal_phase(pair);
  Complex z = std::conj(pair.alpha1()) * pair.alpha2();
  EXPECT_NEAR((1 - z.real()) * std::sin(phi), -z.imag() * std::cos(phi), 1e-15);
  EXPECT_EQ(sigma(pair, phi), sigma(pair, phi + 1.0));
}

TEST(OptimalPhase, MinimizesOverRandomPairs) {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 1000; ++i) {
    TransparencyPair pair = random_pair(gen);
    BoundBreakdown b = absorbed_photon_bound(pair, PriorPair(), ErrorProbability(0.1));
    EXPECT_LE(std::abs(1.0 - b.sigma), grid_min_distance(pair, 10000) + 1e-9);
    EXPECT_NEAR(std::abs(1.0 - b.sigma),
                std::abs(1.0 - std::conj(pair.alpha1()) * pair.alpha2()) - pair.beta_product(),
                1e-10);
  }
}

TEST(Gamma, FrozenValues) {
  EXPECT_NEAR(gamma(make_transparency_pair(0.2, 0.3)), 5.7071574006453529325e-3, 1e-14);
  EXPECT_NEAR(gamma(make_transparency_pair(0.2, 0.8)), 0.42886901662352055728, 1e-13);
  EXPECT_NEAR(gamma(make_transparency_pair(0.45, 0.45)), 0.0, 1e-15);
}

TEST(Gamma, InteractionFreeRegimeIsAnError) {
  EXPECT_THROW(gamma(make_transparency_pair(1.0, 0.3)), ValidationError);
}

TEST(AbsorbedPhotonBound, HeadlineNumbers) {
  auto b = absorbed_photon_bound(make_transparency_pair(0.2, 0.3), PriorPair(), ErrorProbability(0.0));
  EXPECT_NEAR(b.bound, 175.21857727052037803, 1e-9);
  EXPECT_FALSE(b.infinite);
  EXPECT_NEAR(absorbed_photon_bound(make_transparency_pair(0.2, 0.8), PriorPair(), ErrorProbability(0.0)).bound,
              2.3317142559585797350, 1e-12);
  EXPECT_NEAR(absorbed_photon_bound(make_transparency_pair(0.2, 0.3), PriorPair(), ErrorProbability(0.01)).bound,
              140.35052064414771336, 1e-9);
}

TEST(AbsorbedPhotonBound, ComplexPairUnequalPriors) {
  TransparencyPair pair = make_transparency_pair(std::polar(0.6, 0.7), std::polar(0.5, -1.1));
  EXPECT_NEAR(absorbed_photon_bound(pair, PriorPair::from_p1(0.3), ErrorProbability(0.05)).bound,
              0.80320346780554741290, 1e-12);
}

TEST(AbsorbedPhotonBound, VanishesAtHalfAndForZeroBeta) {
  EXPECT_EQ(absorbed_photon_bound(make_transparency_pair(0.2, 0.3), PriorPair(), ErrorProbability(0.5)).bound, 0.0);
  EXPECT_EQ(absorbed_photon_bound(make_transparency_pair(0.2, 1.0), PriorPair(), ErrorProbability(0.0)).bound, 0.0);
}

TEST(AbsorbedPhotonBound, OpaqueObjectGivesNonzeroBound) {
  // alpha1 = 0 does not make the formula vanish; only a zero beta does.
  auto b = absorbed_photon_bound(make_transparency_pair(0.0, 0.5), PriorPair(), ErrorProbability(0.0));
  EXPECT_GT(b.bound, 0.0);
  EXPECT_NEAR(b.bound, 2 * std::sqrt(0.75) * 0.5 / (1.0 - std::sqrt(0.75)), 1e-12);
}

TEST(AbsorbedPhotonBound, NegativeNumeratorClampsToZero) {
  // Unequal priors: sqrt(p1 p2) = 0.3 < sqrt(0.4 * 0.6).
  auto b = absorbed_photon_bound(make_transparency_pair(0.2, 0.3), PriorPair::from_p1(0.1), ErrorProbability(0.4));
  EXPECT_LT(b.numerator, 0.0);
  EXPECT_EQ(b.bound, 0.0);
}

TEST(AbsorbedPhotonBound, DegeneratePairIsTaggedInfinite) {
  auto b = absorbed_photon_bound(make_transparency_pair(0.4, 0.4), PriorPair(), ErrorProbability(0.1));
  EXPECT_TRUE(b.infinite);
  EXPECT_TRUE(std::isinf(b.bound));
  auto at_half = absorbed_photon_bound(make_transparency_pair(0.4, 0.4), PriorPair(), ErrorProbability(0.5));
  EXPECT_FALSE(at_half.infinite);
  EXPECT_EQ(at_half.bound, 0.0);
}

TEST(AbsorbedPhotonBound, StrictlyDecreasingInErrorProbability) {
  for (auto pair : {make_transparency_pair(0.2, 0.3), make_transparency_pair(0.2, 0.8), make_transparency_pair(Complex(0.1, 0.4), -0.7)}) {
    double prev = INFINITY;
    for (int i = 0; i <= 1000; ++i) {
      double pe = 0.5 * i / 1000.0;
      double b = absorbed_photon_bound(pair, PriorPair(), ErrorProbability(pe)).bound;
      if (prev > 0.0) EXPECT_LT(b, prev) << "pe=" << pe;
      prev = b;
    }
  }
}

TEST(AbsorbedPhotonBound, SymmetricUnderSwapAndConjugation) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    TransparencyPair pair = random_pair(gen);
    PriorPair priors = PriorPair::from_p1(u(gen));
    ErrorProbability pe(0.5 * u(gen) * std::min(priors.p1(), priors.p2()));
    double b = absorbed_photon_bound(pair, priors, pe).bound;
    double swapped = absorbed_photon_bound(pair.swapped(), priors.swapped(), pe).bound;
    TransparencyPair conj = make_transparency_pair(std::conj(pair.alpha1()), std::conj(pair.alpha2()));
    double conjugated = absorbed_photon_bound(conj, priors, pe).bound;
    EXPECT_NEAR(swapped, b, 1e-9 * std::max(1.0, b));
    EXPECT_NEAR(conjugated, b, 1e-9 * std::max(1.0, b));
  }
}

TEST(Lemma, EqualityAtFirstPower) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    EXPECT_NEAR(lemma_rhs_holds(random_pair(gen), 1).slack, 0.0, 1e-10);
  }
}

TEST(Lemma, HoldsForRealPairUpTo100) {
  for (int m = 2; m <= 100; ++m) {
    LemmaCheck c = lemma_rhs_holds(make_transparency_pair(0.2, 0.3), m);
    EXPECT_TRUE(c.holds) << m;
    EXPECT_GE(c.slack, 0.0) << m;
  }
}

TEST(Lemma, HoldsForComplexPair) {
  TransparencyPair pair = make_transparency_pair(std::polar(0.6, 0.7), std::polar(0.5, -1.1));
  for (int m = 1; m <= 50; ++m) EXPECT_TRUE(lemma_rhs_holds(pair, m).holds) << m;
}

TEST(Lemma, RandomPairsAllPowers) {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 1000; ++i) {
    TransparencyPair pair = random_pair(gen);
    for (int m = 1; m <= 64; ++m) ASSERT_GE(lemma_rhs_holds(pair, m).slack, -1e-10);
  }
}

TEST(Lemma, RejectsNonPositivePower) {
  EXPECT_THROW(lemma_rhs_holds(make_transparency_pair(0.2, 0.3), 0), ValidationError);
}

TEST(Helstrom, EndpointsAndKnownValue) {
  EXPECT_EQ(helstrom_error(0.0, PriorPair::from_p1(0.3)).value(), 0.0);
  EXPECT_DOUBLE_EQ(helstrom_error(1.0, PriorPair()).value(), 0.5);
  EXPECT_EQ(overlap_for_error(ErrorProbability(0.0), PriorPair()), 0.0);
  EXPECT_DOUBLE_EQ(overlap_for_error(ErrorProbability(0.5), PriorPair()), 1.0);
  EXPECT_NEAR(overlap_for_error(ErrorProbability(0.01), PriorPair()), 0.19899748742132399095, 1e-15);
}

TEST(Helstrom, RoundTripEqualPriors) {
  for (double x : {0.01, 0.1, 0.3}) {
    EXPECT_NEAR(helstrom_error(overlap_for_error(ErrorProbability(x), PriorPair()), PriorPair()).value(),
                x, 1e-12);
  }
}

TEST(Helstrom, RoundTripUnequalPriorsOnFeasibleRange) {
  PriorPair priors = PriorPair::from_p1(0.2);
  for (int i = 0; i <= 1000; ++i) {
    double pe = 0.2 * i / 1000.0;
    double f = overlap_for_error(ErrorProbability(pe), priors);
    EXPECT_NEAR(helstrom_error(f, priors).value(), pe, 1e-12);
  }
  EXPECT_THROW(overlap_for_error(ErrorProbability(0.3), priors), RangeError);
}

TEST(Helstrom, SmallOverlapKeepsRelativeAccuracy) {
  // Catalan series: P_E = u + u^2 + 2u^3 + 5u^4 + ... with u = p1 p2 f^2.
  for (double f : {1e-3, 1e-5, 1e-8}) {
    double u = 0.25 * f * f;
    double series = u + u * u + 2 * u * u * u;
    EXPECT_NEAR(helstrom_error(f, PriorPair()).value() / series, 1.0, 1e-14) << f;
  }
}

TEST(Helstrom, RejectsOverlapOutsideUnitInterval) {
  EXPECT_THROW(helstrom_error(1.1, PriorPair()), ValidationError);
  EXPECT_THROW(helstrom_error(-0.1, PriorPair()), ValidationError);
}

}  // namespace
}  // namespace minabs::bound
