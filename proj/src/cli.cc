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

#include "minabs/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "minabs/bound.h"
#include "minabs/classical.h"
#include "minabs/parallel.h"
#include "minabs/rng.h"
#include "minabs/verifier.h"
#include "minabs/zeno.h"

namespace minabs::cli {
namespace {

using nlohmann::json;

const std::vector<double> kDefaultPeGrid = {0,    0.001, 0.005, 0.01, 0.02, 0.05,
                                            0.1,  0.2,   0.3,   0.4,  0.5};

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Where command output lands: the --out file if given, the caller's stream
// otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ValidationError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct CommonOptions {
  std::string alpha1 = "0.2";
  std::string alpha2 = "0.3";
  double p1 = 0.5;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";

  TransparencyPair pair() const { return make_transparency_pair(parse_complex(alpha1), parse_complex(alpha2)); }
  PriorPair priors() const { return PriorPair::from_p1(p1); }

  std::string header(const std::string& command, const std::string& extra,
                     bool with_pair = true) const {
    std::ostringstream h;
    h << "# minabs " << kToolVersion << " schema=" << kSchemaVersion << " command=" << command;
    if (with_pair) h << " alpha1=" << alpha1 << " alpha2=" << alpha2 << " p1=" << num(p1);
    h << " seed=" << seed;
    if (!extra.empty()) h << ' ' << extra;
    return h.str();
  }

  json meta(const std::string& command, bool with_pair = true) const {
    json m = {{"tool", "minabs"}, {"version", kToolVersion}, {"schema", kSchemaVersion},
              {"command", command}, {"seed", seed}};
    if (with_pair) {
      m["alpha1"] = alpha1;
      m["alpha2"] = alpha2;
      m["p1"] = p1;
    }
    return m;
  }
};

void add_common(CLI::App* app, CommonOptions& o, bool with_pair = true,
                std::vector<std::string> formats = {"csv", "json"}) {
  if (with_pair) {
    app->add_option("--alpha1", o.alpha1, "transmission amplitude of object 1 (a, a+bi)");
    app->add_option("--alpha2", o.alpha2, "transmission amplitude of object 2");
    app->add_option("--p1", o.p1, "prior probability of object 1");
  }
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--out", o.out, "output file (default stdout)");
  o.format = formats.front();
  app->add_option("--format", o.format, formats.front() + " or " + formats.back())
      ->check(CLI::IsMember(formats));
}

json num_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

// --- bound -----------------------------------------------------------------

struct BoundOptions {
  CommonOptions common;
  std::vector<double> pe = kDefaultPeGrid;
};

int cmd_bound(const BoundOptions& o, std::ostream& out, std::ostream& err) {
  TransparencyPair pair = o.common.pair();
  PriorPair priors = o.common.priors();
  if (pair.degenerate()) err << "warning: alpha1 == alpha2; the bound is infinite\n";
  Sink sink(o.common.out, out);
  json rows = json::array();
  std::ostringstream csv;
  for (double pe : o.pe) {
    auto b = bound::absorbed_photon_bound(pair, priors, ErrorProbability(pe));
    csv << num(pe) << ',' << num(b.bound) << '\n';
    rows.push_back({{"pe", pe}, {"bound", num_json(b.bound)}});
  }
  if (o.common.format == "json") {
    *sink << json{{"meta", o.common.meta("bound")}, {"rows", rows}}.dump(2) << '\n';
  } else {
    *sink << o.common.header("bound", "") << '\n' << "pe,bound\n" << csv.str();
  }
  return kSuccess;
}

// --- zeno-sweep --------------------------------------------------------------

struct ZenoOptions {
  CommonOptions common;
  double theta0_min = 1e-7;
  double theta0_max = 1e-2;
  int theta0_count = 100;
  std::vector<double> theta0;
  int k_stride = 1;
  bool filter = false;
  double tol = 1e-4;
  int max_steps = 100000;
};

std::vector<double> theta0_samples(const ZenoOptions& o, std::ostream& err) {
  std::vector<double> out;
  if (!o.theta0.empty()) {
    for (double t : o.theta0) {
      if (t == 0.0 || !std::isfinite(t)) {
        err << "warning: theta0 = " << num(t)
            << " rejected (protocol never couples to the object)\n";
        continue;
      }
      out.push_back(t);
    }
    return out;
  }
  if (!(o.theta0_min > 0.0 && o.theta0_max >= o.theta0_min) || o.theta0_count < 1) {
    throw ValidationError("theta0 range must satisfy 0 < min <= max and count >= 1");
  }
  double lo = std::log(o.theta0_min);
  double hi = std::log(o.theta0_max);
  for (int i = 0; i < o.theta0_count; ++i) {
    SplitMix64 rng = SplitMix64::substream(o.common.seed, static_cast<std::uint64_t>(i));
    out.push_back(std::exp(lo + (hi - lo) * rng.uniform()));
  }
  return out;
}

int cmd_zeno_sweep(const ZenoOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.tol > 0.0)) throw ValidationError("--tol must be > 0");
  if (o.max_steps < 1) throw ValidationError("--max-steps must be >= 1");
  TransparencyPair pair = o.common.pair();
  pair.require_real("zeno-sweep");
  PriorPair priors = o.common.priors();
  if (!priors.equal()) {
    err << "warning: the adaptive angle rule equalizes absorption for equal priors only; "
           "gaps may be loose\n";
  }
  std::vector<double> thetas = theta0_samples(o, err);

  std::vector<std::vector<zeno::RunResult>> per_theta(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) {
    per_theta[i] = zeno::run_all_steps(pair, priors, thetas[i], o.max_steps, o.k_stride);
  });

  std::vector<zeno::RunResult> rows;
  for (auto& runs : per_theta) {
    for (auto& r : runs) {
      if (o.filter && !(r.gap <= o.tol * std::max(1.0, r.bound_at_pe))) continue;
      rows.push_back(r);
    }
  }
  if (rows.empty()) {
    err << "error: no admissible protocols (check theta0 values, --max-steps and the filter)\n";
    return kValidationError;
  }

  double min_rel = std::numeric_limits<double>::infinity(), pe_lo = 0.5, pe_hi = 0.0;
  for (const auto& r : rows) {
    if (r.nabs_mean > 0) min_rel = std::min(min_rel, r.relative_gap());
    pe_lo = std::min(pe_lo, r.pe);
    pe_hi = std::max(pe_hi, r.pe);
  }
  err << "# rows=" << rows.size() << " theta0_samples=" << thetas.size()
      << " pe_range=[" << num(pe_lo) << ", " << num(pe_hi) << "] min_relative_gap="
      << num(min_rel) << '\n';

  Sink sink(o.common.out, out);
  if (o.common.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"theta0", r.theta0}, {"K", r.K}, {"fK", r.fK}, {"pe", r.pe},
                     {"nabs1", r.nabs1}, {"nabs2", r.nabs2}, {"nabs_mean", r.nabs_mean},
                     {"bound", num_json(r.bound_at_pe)}, {"gap", r.gap}});
    }
    *sink << json{{"meta", o.common.meta("zeno-sweep")}, {"rows", arr}}.dump(2) << '\n';
    return kSuccess;
  }
  std::ostringstream extra;
  extra << "theta0_count=" << thetas.size() << " theta0_min=" << num(o.theta0_min)
        << " theta0_max=" << num(o.theta0_max) << " k_stride=" << o.k_stride
        << " max_steps=" << o.max_steps << " filter=" << (o.filter ? 1 : 0)
        << " tol=" << num(o.tol);
  *sink << o.common.header("zeno-sweep", extra.str()) << '\n'
        << "theta0,K,fK,pe,nabs1,nabs2,nabs_mean,bound,gap\n";
  for (const auto& r : rows) {
    *sink << num(r.theta0) << ',' << r.K << ',' << num(r.fK) << ',' << num(r.pe) << ','
          << num(r.nabs1) << ',' << num(r.nabs2) << ',' << num(r.nabs_mean) << ','
          << num(r.bound_at_pe) << ',' << num(r.gap) << '\n';
  }
  return kSuccess;
}

// --- classical -------------------------------------------------------------

struct ClassicalOptions {
  CommonOptions common;
  std::vector<double> x_grid;
  long trials = 100000;
  long max_photons = 100000;
  int likelihood_exponent = 2;
};

int cmd_classical(const ClassicalOptions& o, std::ostream& out, std::ostream&) {
  classical::ClassicalConfig config{.pair = o.common.pair(),
                                    .priors = o.common.priors(),
                                    .x = 0.25,
                                    .max_photons = o.max_photons,
                                    .trials = o.trials,
                                    .seed = o.common.seed,
                                    .likelihood_exponent = o.likelihood_exponent};
  std::vector<double> grid =
      o.x_grid.empty() ? classical::log_grid(1e-4, 0.45, 20) : o.x_grid;
  for (double x : grid) {
    config.x = x;
    config.validate();
  }
  auto rows = classical::sweep(config, grid);

  Sink sink(o.common.out, out);
  if (o.common.format == "json") {
    json arr = json::array();
    for (const auto& e : rows) {
      arr.push_back({{"x", e.x},
                     {"pe_posterior", e.pe_posterior},
                     {"pe_frequency", e.pe_frequency},
                     {"pe_se", e.pe_posterior_se},
                     {"pe_frequency_se", e.pe_frequency_se},
                     {"nabs", e.nabs},
                     {"nabs_se", e.nabs_se},
                     {"undecided_frac", e.undecided_fraction}});
    }
    *sink << json{{"meta", o.common.meta("classical")}, {"rows", arr}}.dump(2) << '\n';
    return kSuccess;
  }
  std::ostringstream extra;
  extra << "trials=" << o.trials << " max_photons=" << o.max_photons
        << " likelihood_exponent=" << o.likelihood_exponent << " x_count=" << grid.size();
  *sink << o.common.header("classical", extra.str()) << '\n'
        << "x,pe_posterior,pe_frequency,pe_se,nabs,nabs_se,undecided_frac\n";
  for (const auto& e : rows) {
    *sink << num(e.x) << ',' << num(e.pe_posterior) << ',' << num(e.pe_frequency) << ','
          << num(e.pe_posterior_se) << ',' << num(e.nabs) << ',' << num(e.nabs_se) << ','
          << num(e.undecided_fraction) << '\n';
  }
  return kSuccess;
}

// --- verify ----------------------------------------------------------------

struct VerifyOptions {
  CommonOptions common;
  long n_cases = 10000;
  std::string shape = "4,6";
  std::string replay;
  long lemma_pairs = 1000;
  int lemma_m = 64;
};

verifier::Shape parse_shape(const std::string& text) {
  std::smatch m;
  static const std::regex re(R"(^\s*(\d+)\s*[,x]\s*(\d+)\s*$)");
  if (!std::regex_match(text, m, re)) throw ValidationError("--shape expects K_MAX,M_MAX");
  return {std::stoi(m[1]), std::stoi(m[2])};
}

int cmd_replay(const VerifyOptions& o, std::ostream& out) {
  std::ifstream in(o.replay);
  if (!in) throw ValidationError("cannot read replay file " + o.replay);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("replay file is not JSON: ") + e.what());
  }
  json records = doc.is_array() ? doc : json::array({doc});
  bool all_pass = true;
  json results = json::array();
  for (const auto& rec : records) {
    verifier::FuzzCase c = verifier::case_from_json(rec);
    verifier::DeltaFReport r = verifier::run_case(c);
    all_pass = all_pass && r.pass && r.chain_holds;
    json item = verifier::to_json(r);
    item["index"] = c.index;
    results.push_back(item);
  }
  if (o.common.format == "json") {
    out << json{{"replayed", results}}.dump(2) << '\n';
  } else {
    for (const auto& item : results) {
      out << "case " << item["index"] << ": delta=" << num(item["delta"].get<double>())
          << " rhs=" << (item["rhs"].is_null() ? "inf" : num(item["rhs"].get<double>()))
          << " chain=" << (item["chain_holds"].get<bool>() ? "ok" : "FAIL")
          << " result=" << (item["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
    }
  }
  return all_pass ? kSuccess : kVerificationFailure;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.replay.empty()) return cmd_replay(o, out);
  verifier::Shape shape = parse_shape(o.shape);
  verifier::LemmaSummary lemma = verifier::lemma_suite(o.lemma_pairs, o.lemma_m, o.common.seed);
  verifier::FuzzSummary fz = verifier::fuzz(o.n_cases, shape, o.common.seed);
  bool ok = lemma.failures == 0 && fz.passes == fz.cases && fz.chain_passes == fz.cases;

  if (!fz.failures.empty()) {
    std::string path = o.common.out.empty() ? "verify_failures.json" : o.common.out;
    json dump = json::array();
    for (const auto& c : fz.failures) dump.push_back(verifier::to_json(c));
    std::ofstream(path) << dump.dump(2) << '\n';
    err << "wrote " << fz.failures.size() << " failing case(s) to " << path << '\n';
  }

  if (o.common.format == "json") {
    out << json{{"meta", o.common.meta("verify", /*with_pair=*/false)},
                {"shape", {shape.k_max, shape.m_max}},
                {"lemma", {{"checks", lemma.checks},
                           {"failures", lemma.failures},
                           {"worst_slack", lemma.worst_slack},
                           {"max_equality_error", lemma.max_equality_error}}},
                {"delta_f", {{"cases", fz.cases},
                             {"passes", fz.passes},
                             {"chain_passes", fz.chain_passes},
                             {"worst_slack", fz.worst_slack},
                             {"worst_index", fz.worst_index}}},
                {"pass", ok}}
               .dump(2)
        << '\n';
  } else {
    out << o.common.header("verify", "shape=" + std::to_string(shape.k_max) + "," +
                                         std::to_string(shape.m_max),
                            /*with_pair=*/false)
        << '\n'
        << "lemma: " << lemma.checks - lemma.failures << "/" << lemma.checks
        << " hold, worst slack " << num(lemma.worst_slack) << ", m=1 equality error "
        << num(lemma.max_equality_error) << '\n'
        << "delta-f: " << fz.passes << "/" << fz.cases << " pass, chain " << fz.chain_passes
        << "/" << fz.cases << ", worst slack " << num(fz.worst_slack) << " (case "
        << fz.worst_index << ")\n"
        << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kSuccess : kVerificationFailure;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  static const std::regex re(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$)");
  static const std::regex pure_imag(
      R"(^\s*([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)\s*[ij]\s*$)");
  std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, pure_imag)) {
    std::string v = m[1].str();
    if (v.empty() || v == "+" || v == "-") v += "1";
    return {0.0, std::stod(v)};
  }
  if (std::regex_match(s, m, re) && m[1].matched) {
    double re_part = std::stod(m[1]);
    double im_part = 0.0;
    if (m[2].matched) {
      im_part = m[3].matched ? std::stod(m[3]) : 1.0;
      if (m[2] == "-") im_part = -im_part;
    }
    return {re_part, im_part};
  }
  throw ValidationError("cannot parse complex amplitude '" + s + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal-absorption discrimination of two transparencies", "minabs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  BoundOptions bound_opts;
  auto* bound_cmd = app.add_subcommand("bound", "absorbed-photon lower bound over a P_E grid");
  add_common(bound_cmd, bound_opts.common);
  bound_cmd->add_option("--pe", bound_opts.pe, "error probabilities")->delimiter(',');

  ZenoOptions zeno_opts;
  auto* zeno_cmd = app.add_subcommand("zeno-sweep", "variable-angle Zeno protocols over theta0 and K");
  add_common(zeno_cmd, zeno_opts.common);
  zeno_cmd->add_option("--theta0-min", zeno_opts.theta0_min);
  zeno_cmd->add_option("--theta0-max", zeno_opts.theta0_max);
  zeno_cmd->add_option("--theta0-count", zeno_opts.theta0_count);
  zeno_cmd->add_option("--theta0", zeno_opts.theta0, "explicit initial angles")->delimiter(',');
  zeno_cmd->add_option("--k-stride", zeno_opts.k_stride);
  zeno_cmd->add_flag("--filter-near-bound", zeno_opts.filter,
                     "keep rows with gap <= tol * max(1, bound)");
  zeno_cmd->add_option("--tol", zeno_opts.tol);
  zeno_cmd->add_option("--max-steps", zeno_opts.max_steps, "cap on protocol length");

  ClassicalOptions classical_opts;
  auto* classical_cmd = app.add_subcommand("classical", "sequential photon-counting baseline");
  add_common(classical_cmd, classical_opts.common);
  classical_cmd->add_option("--x-grid", classical_opts.x_grid, "posterior tolerances")
      ->delimiter(',');
  classical_cmd->add_option("--trials", classical_opts.trials);
  classical_cmd->add_option("--max-photons", classical_opts.max_photons);
  classical_cmd->add_option("--likelihood-exponent", classical_opts.likelihood_exponent)
      ->check(CLI::IsMember({1, 2}));

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "numerical checks of the bound's inequalities");
  add_common(verify_cmd, verify_opts.common, /*with_pair=*/false, {"text", "json"});
  verify_cmd->add_option("--n-cases", verify_opts.n_cases);
  verify_cmd->add_option("--shape", verify_opts.shape, "K_MAX,M_MAX (each <= 8)");
  verify_cmd->add_option("--replay", verify_opts.replay, "rerun dumped case(s)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  try {
    if (*bound_cmd) return cmd_bound(bound_opts, out, err);
    if (*zeno_cmd) return cmd_zeno_sweep(zeno_opts, out, err);
    if (*classical_cmd) return cmd_classical(classical_opts, out, err);
    if (*verify_cmd) return cmd_verify(verify_opts, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const zeno::SignConditionError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace minabs::cli
