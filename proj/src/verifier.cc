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

#include "minabs/verifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "minabs/bound.h"
#include "minabs/parallel.h"

namespace minabs::verifier {
namespace {

constexpr int kRecordVersion = 1;

void check_shape(Shape shape) {
  if (shape.k_max < 0 || shape.m_max < 0 || shape.k_max > kMaxPhotonIndex ||
      shape.m_max > kMaxPhotonIndex) {
    std::ostringstream msg;
    msg << "tensor shape (" << shape.k_max << ", " << shape.m_max << ") outside [0, "
        << kMaxPhotonIndex << "]";
    throw ValidationError(msg.str());
  }
}

void check_same_shape(const CoefficientTensor& c1, const CoefficientTensor& c2) {
  if (!(c1.shape() == c2.shape())) throw ValidationError("coefficient tensor shape mismatch");
}

Complex optimal_sigma(const TransparencyPair& pair) {
  return bound::sigma(pair, bound::optimal_phase(pair));
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }
Complex complex_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

CoefficientTensor::CoefficientTensor(Shape shape) : shape_(shape) {
  check_shape(shape);
  entries_.assign(static_cast<std::size_t>((shape.k_max + 1) * (shape.m_max + 1)), Complex{});
}

CoefficientTensor::CoefficientTensor(Shape shape, std::vector<Complex> entries)
    : shape_(shape), entries_(std::move(entries)) {
  check_shape(shape);
  if (entries_.size() != static_cast<std::size_t>((shape.k_max + 1) * (shape.m_max + 1))) {
    throw ValidationError("entry count does not match tensor shape");
  }
}

CoefficientTensor CoefficientTensor::random(Shape shape, SplitMix64& rng) {
  CoefficientTensor t(shape);
  std::normal_distribution<double> normal;
  for (Complex& c : t.entries_) c = {normal(rng), normal(rng)};
  return t.normalized();
}

double CoefficientTensor::norm() const {
  double s = 0;
  for (Complex c : entries_) s += std::norm(c);
  return std::sqrt(s);
}

CoefficientTensor CoefficientTensor::normalized() const {
  double n = norm();
  if (n == 0.0) throw ValidationError("cannot normalize a zero tensor");
  CoefficientTensor t = *this;
  for (Complex& c : t.entries_) c /= n;
  return t;
}

double CoefficientTensor::mean_probe_photons() const {
  double s = 0;
  for (int k = 0; k <= shape_.k_max; ++k) {
    for (int m = 1; m <= shape_.m_max; ++m) s += m * std::norm(at(k, m));
  }
  return s;
}

double overlap_of(const CoefficientTensor& c1, const CoefficientTensor& c2) {
  check_same_shape(c1, c2);
  Complex s{};
  for (std::size_t i = 0; i < c1.entries().size(); ++i) {
    s += std::conj(c1.entries()[i]) * c2.entries()[i];
  }
  return std::abs(s);
}

double post_interaction_overlap(const CoefficientTensor& c1, const CoefficientTensor& c2,
                                const TransparencyPair& pair) {
  check_same_shape(c1, c2);
  const Shape& shape = c1.shape();
  std::vector<Complex> power(static_cast<std::size_t>(shape.m_max + 1));
  Complex sigma = optimal_sigma(pair);
  power[0] = 1.0;
  for (int m = 1; m <= shape.m_max; ++m) power[m] = power[m - 1] * sigma;
  Complex s{};
  for (int k = 0; k <= shape.k_max; ++k) {
    for (int m = 0; m <= shape.m_max; ++m) {
      s += std::conj(c1.at(k, m)) * c2.at(k, m) * power[m];
    }
  }
  return std::abs(s);
}

DeltaFReport check_delta_f(const CoefficientTensor& c1, const CoefficientTensor& c2,
                           const TransparencyPair& pair, const PriorPair& priors) {
  check_same_shape(c1, c2);
  const Shape& shape = c1.shape();
  const Complex sigma = optimal_sigma(pair);
  const double denom = bound::bound_denominator(pair);

  DeltaFReport r;
  r.f_before = overlap_of(c1, c2);
  r.f_after = post_interaction_overlap(c1, c2, pair);
  r.delta = r.f_before - r.f_after;

  Complex triangle{};
  double weighted_m = 0;
  Complex power = 1.0;
  for (int m = 0; m <= shape.m_max; ++m) {
    Complex factor = 1.0 - power;
    for (int k = 0; k <= shape.k_max; ++k) {
      Complex w = std::conj(c1.at(k, m)) * c2.at(k, m);
      triangle += w * factor;
      r.termwise += std::abs(w) * std::abs(factor);
      weighted_m += std::abs(w) * m;
    }
    power *= sigma;
  }
  r.triangle = std::abs(triangle);
  r.lemma = denom * weighted_m;

  const double b1 = pair.beta1_mag();
  const double b2 = pair.beta2_mag();
  r.n1 = b1 * b1 * c1.mean_probe_photons();
  r.n2 = b2 * b2 * c2.mean_probe_photons();
  const double bb = b1 * b2;
  const double weighted = priors.p1() * r.n1 + priors.p2() * r.n2;
  if (bb > 0.0 && priors.product() > 0.0) {
    r.rhs = denom / bb * weighted / (2.0 * std::sqrt(priors.product()));
  } else {
    // gamma or the prior weighting is unbounded; only a zero numerator keeps rhs finite.
    r.rhs = (r.lemma > 0.0 || weighted > 0.0) ? std::numeric_limits<double>::infinity() : 0.0;
  }

  const double tol = kChainTolerance;
  r.chain_holds = r.delta <= r.triangle + tol && r.triangle <= r.termwise + tol &&
                  r.termwise <= r.lemma + tol && r.lemma <= r.rhs + tol;
  r.pass = r.delta <= r.rhs + tol;
  return r;
}

Complex random_transparency(SplitMix64& rng) {
  double mag = rng.uniform();
  double phase = 2.0 * std::numbers::pi * rng.uniform() - std::numbers::pi;
  return std::polar(mag, phase);
}

FuzzCase generate_case(Shape shape, std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng = SplitMix64::substream(seed, index);
  FuzzCase c;
  c.shape = shape;
  c.seed = seed;
  c.index = index;
  c.c1 = CoefficientTensor::random(shape, rng);
  if (index % 2 == 0) {
    c.c2 = CoefficientTensor::random(shape, rng);
  } else {
    // Near-identical states: the regime where the chain is tightest.
    double eps = std::pow(10.0, -6.0 * rng.uniform());
    CoefficientTensor noise = CoefficientTensor::random(shape, rng);
    CoefficientTensor mixed = c.c1;
    for (std::size_t i = 0; i < mixed.entries().size(); ++i) {
      mixed.at(static_cast<int>(i) / (shape.m_max + 1), static_cast<int>(i) % (shape.m_max + 1)) +=
          eps * noise.entries()[i];
    }
    c.c2 = mixed.normalized();
  }
  c.alpha1 = random_transparency(rng);
  c.alpha2 = random_transparency(rng);
  c.p1 = rng.uniform();
  return c;
}

DeltaFReport run_case(const FuzzCase& fuzz_case) {
  return check_delta_f(fuzz_case.c1, fuzz_case.c2, make_transparency_pair(fuzz_case.alpha1, fuzz_case.alpha2),
                       PriorPair::from_p1(fuzz_case.p1));
}

FuzzSummary fuzz(long n_cases, Shape shape, std::uint64_t seed) {
  if (n_cases < 1) throw ValidationError("fuzz needs n_cases >= 1");
  check_shape(shape);
  const auto n = static_cast<std::size_t>(n_cases);
  std::vector<DeltaFReport> reports(n);
  parallel_for(n, [&](std::size_t i) { reports[i] = run_case(generate_case(shape, seed, i)); });

  FuzzSummary summary;
  summary.cases = n_cases;
  summary.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const DeltaFReport& r = reports[i];
    summary.passes += r.pass;
    summary.chain_passes += r.chain_holds;
    if (r.slack() < summary.worst_slack) {
      summary.worst_slack = r.slack();
      summary.worst_index = i;
    }
    if (!r.pass || !r.chain_holds) summary.failures.push_back(generate_case(shape, seed, i));
  }
  return summary;
}

LemmaSummary lemma_suite(long n_pairs, int m_max, std::uint64_t seed) {
  if (n_pairs < 1 || m_max < 1) throw ValidationError("lemma suite needs n_pairs, m_max >= 1");
  LemmaSummary s;
  s.worst_slack = std::numeric_limits<double>::infinity();
  for (long i = 0; i < n_pairs; ++i) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(i));
    Complex a1 = random_transparency(rng);
    Complex a2 = random_transparency(rng);
    TransparencyPair pair = make_transparency_pair(a1, a2);
    for (int m = 1; m <= m_max; ++m) {
      bound::LemmaCheck check = bound::lemma_rhs_holds(pair, m);
      ++s.checks;
      s.failures += !check.holds;
      s.worst_slack = std::min(s.worst_slack, check.slack);
      if (m == 1) s.max_equality_error = std::max(s.max_equality_error, std::abs(check.slack));
    }
  }
  return s;
}

nlohmann::json to_json(const FuzzCase& c) {
  auto tensor = [](const CoefficientTensor& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (Complex z : t.entries()) rows.push_back(complex_json(z));
    return rows;
  };
  return {
      {"version", kRecordVersion},
      {"kind", "delta_f_case"},
      {"shape", {c.shape.k_max, c.shape.m_max}},
      {"seed", c.seed},
      {"index", c.index},
      {"alpha1", complex_json(c.alpha1)},
      {"alpha2", complex_json(c.alpha2)},
      {"p1", c.p1},
      {"c1", tensor(c.c1)},
      {"c2", tensor(c.c2)},
  };
}

FuzzCase case_from_json(const nlohmann::json& record) {
  try {
    if (record.at("version").get<int>() != kRecordVersion) {
      throw ValidationError("unsupported fuzz record version");
    }
    if (record.at("kind").get<std::string>() != "delta_f_case") {
      throw ValidationError("record kind is not delta_f_case");
    }
    FuzzCase c;
    c.shape = {record.at("shape").at(0).get<int>(), record.at("shape").at(1).get<int>()};
    c.seed = record.at("seed").get<std::uint64_t>();
    c.index = record.at("index").get<std::uint64_t>();
    c.alpha1 = complex_from(record.at("alpha1"));
    c.alpha2 = complex_from(record.at("alpha2"));
    c.p1 = record.at("p1").get<double>();
    auto tensor = [&](const char* key) {
      std::vector<Complex> entries;
      for (const auto& z : record.at(key)) entries.push_back(complex_from(z));
      return CoefficientTensor(c.shape, std::move(entries));
    };
    c.c1 = tensor("c1");
    c.c2 = tensor("c2");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed fuzz record: ") + e.what());
  }
}

nlohmann::json to_json(const DeltaFReport& r) {
  return {{"f_before", r.f_before}, {"f_after", r.f_after}, {"delta", r.delta},
          {"triangle", r.triangle}, {"termwise", r.termwise}, {"lemma", r.lemma},
          {"rhs", r.rhs},           {"n1", r.n1},             {"n2", r.n2},
          {"slack", r.slack()},     {"chain_holds", r.chain_holds}, {"pass", r.pass}};
}

}  // namespace minabs::verifier
