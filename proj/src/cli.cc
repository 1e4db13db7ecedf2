// Copyright 2026 The SubDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subdp/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>

#include "subdp/audit_suite.h"
#include "subdp/auditor.h"
#include "subdp/errors.h"
#include "subdp/exact.h"
#include "subdp/graph_estimators.h"
#include "subdp/io.h"
#include "subdp/report.h"
#include "subdp/sketches.h"

namespace subdp {
namespace {

struct RunConfig {
  std::string subcommand;
  double epsilon = 1.0;
  double rho = 0.1;
  double beta = 1.0 / 3.0;
  double alpha = 3.0;
  int k = 1;
  std::optional<uint64_t> seed;
  std::string input;
  std::string output;
  int64_t trials = 0;
  bool oracle = false;
  bool force = false;
  // mech
  std::string dist = "zspareto";
  double scale = 1.0;
  // f2
  uint64_t universe = 0;
  int64_t max_delta = 1;
  // rank
  std::vector<double> queries;
  // matching
  int level = 1;
  // avgdeg
  double m_min = 1.0;
  // audit
  std::string target = "all";
  int bins = 40;
  // verify
  std::string lemma = "all";
  std::vector<double> alpha_grid{1.5, 2, 3, 5};
  std::vector<double> eps_grid{0, 0.1, 0.5, 1};
  std::vector<double> x_grid{0, 1, 10, 100};
  std::vector<double> diameters{0.1, 0.25, 0.5};
};

uint64_t DefaultSeed(std::ostream& err) {
  if (const char* env = std::getenv("SUBDP_SEED"); env != nullptr) {
    try {
      size_t used = 0;
      const uint64_t seed = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return seed;
    } catch (const std::exception&) {
    }
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "SUBDP_SEED is not an unsigned integer");
  }
  std::random_device device;
  const uint64_t seed =
      (static_cast<uint64_t>(device()) << 32) ^ static_cast<uint64_t>(device());
  err << "subdp: no seed given, using " << seed << "\n";
  return seed;
}

Json ConfigJson(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["epsilon"] = c.epsilon;
  j["rho"] = c.rho;
  j["beta"] = c.beta;
  j["alpha"] = c.alpha;
  j["k"] = c.k;
  j["seed"] = *c.seed;
  j["trials"] = c.trials;
  j["input"] = c.input;
  j["oracle"] = c.oracle;
  j["force"] = c.force;
  if (c.subcommand == "mech") {
    j["dist"] = c.dist;
    j["scale"] = c.scale;
  } else if (c.subcommand == "f2") {
    j["universe"] = c.universe;
    j["max_delta"] = c.max_delta;
  } else if (c.subcommand == "rank") {
    j["queries"] = c.queries;
  } else if (c.subcommand == "matching") {
    j["level"] = c.level;
  } else if (c.subcommand == "avgdeg") {
    j["m_min"] = c.m_min;
  } else if (c.subcommand == "audit") {
    j["target"] = c.target;
    j["bins"] = c.bins;
  } else if (c.subcommand == "verify") {
    j["lemma"] = c.lemma;
    j["alpha_grid"] = c.alpha_grid;
    j["eps_grid"] = c.eps_grid;
    j["x_grid"] = c.x_grid;
    j["diameters"] = c.diameters;
  }
  return j;
}

struct Outcome {
  Json result;
  int code = kExitOk;
};

int64_t TrialsOr(const RunConfig& c, int64_t fallback) {
  return c.trials > 0 ? c.trials : fallback;
}

Outcome RunMech(const RunConfig& c, RandomSource& rng) {
  const int64_t trials = TrialsOr(c, 1'000'000);
  std::vector<double> draws(trials);
  std::function<double(double)> cdf;
  if (c.dist == "laplace") {
    const LaplaceSpec spec{c.scale};
    ValidateSpec(spec);
    for (double& x : draws) x = SampleLaplace(spec, rng);
    cdf = [spec](double y) { return LaplaceCdf(spec, y); };
  } else if (c.dist == "zspareto") {
    const ZSParetoSpec spec{c.alpha, c.scale};
    ValidateSpec(spec);
    for (double& x : draws) x = SampleZSPareto(spec, rng);
    cdf = [spec](double y) { return ZSParetoCdf(spec, y); };
  } else {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "--dist must be laplace or zspareto");
  }
  double sum = 0.0;
  double sum_abs = 0.0;
  for (double x : draws) {
    sum += x;
    sum_abs += std::abs(x);
  }
  std::vector<double> sorted = draws;
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  const double n = static_cast<double>(trials);
  for (size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    ks = std::max({ks, f - i / n, (i + 1) / n - f});
  }
  Outcome o;
  o.result["dist"] = c.dist;
  o.result["scale"] = c.scale;
  if (c.dist == "zspareto") o.result["alpha"] = c.alpha;
  o.result["draws"] = trials;
  o.result["mean"] = sum / n;
  o.result["mean_abs"] = sum_abs / n;
  o.result["mean_abs_over_scale"] = sum_abs / n / c.scale;
  o.result["ks_statistic"] = ks;
  o.result["median"] = sorted[sorted.size() / 2];
  return o;
}

Json RegimeJson(double delta1, double epsilon, double rho,
                double error_scale) {
  return {{"delta1", delta1},
          {"epsilon", epsilon},
          {"rho", rho},
          {"error_scale", error_scale},
          {"holds", delta1 <= epsilon * error_scale}};
}

void AddTruth(Json& result, double estimate, double truth) {
  result["truth"] = truth;
  result["error"] = estimate - truth;
}

Outcome RunF2(const RunConfig& c, RandomSource& rng) {
  F2Stream stream;
  stream.updates = LoadStream(c.input);
  stream.max_delta = c.max_delta;
  stream.universe = c.universe;
  if (stream.universe == 0) {
    for (const StreamUpdate& u : stream.updates) {
      stream.universe = std::max(stream.universe, u.index + 1);
    }
  }
  stream.Validate();
  PrivatizeOptions opts = WithAccuracyDivisor(kF2AccuracyDivisor);
  opts.force = c.force;
  const PrivacyBudget budget(c.epsilon);
  const PrivateEstimate est =
      PrivateF2(stream, c.rho, budget, c.beta, rng, opts);
  Outcome o;
  o.result["estimate"] = ToJson(est);
  o.result["stream_length"] = stream.updates.size();
  o.result["universe"] = stream.universe;
  o.result["regime"] = RegimeJson(F2Sensitivity(stream), c.epsilon, c.rho,
                                  c.rho * F2Scale(stream));
  o.result["error_target"] = c.rho * F2Scale(stream);
  if (c.oracle) AddTruth(o.result, est.value, ExactF2(stream));
  return o;
}

Outcome RunRank(const RunConfig& c, RandomSource& rng) {
  const std::vector<double> data = LoadReals(c.input);
  if (c.queries.empty()) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "rank needs --queries");
  }
  const PrivacyBudget budget(c.epsilon);
  RankSession rs = PrivateRankSession(data, c.rho, budget, c.beta, c.k, rng);
  Json answers = Json::array();
  for (double q : c.queries) {
    const double a = rs.session.Ask(q);
    Json row{{"query", q}, {"answer", a}};
    if (c.oracle) {
      const double truth = static_cast<double>(ExactRank(data, q));
      row["truth"] = truth;
      row["error"] = a - truth;
    }
    answers.push_back(row);
  }
  Outcome o;
  o.result["answers"] = answers;
  o.result["n"] = data.size();
  o.result["k"] = c.k;
  o.result["rho_prime"] = rs.rho_prime;
  o.result["capacity"] = rs.capacity;
  o.result["noise_scale"] = rs.session.noise_spec().scale;
  o.result["delta1"] = rs.sensitivity.delta1;
  o.result["delta2"] = rs.sensitivity.delta2;
  o.result["error_radius"] = rs.error_radius;
  o.result["radius_constant"] = rs.radius_constant;
  o.result["epsilon_spent"] = c.epsilon;
  return o;
}

Outcome RunGraph(const RunConfig& c, RandomSource& rng) {
  const Graph g = LoadGraph(c.input);
  const PrivacyBudget budget(c.epsilon);
  Outcome o;
  o.result["n"] = g.n();
  o.result["m"] = g.m();
  if (c.subcommand == "cc") {
    PrivatizeOptions opts = WithAccuracyDivisor(kCcAccuracyDivisor);
    opts.force = c.force;
    const PrivateEstimate est = PrivateCc(g, c.rho, budget, c.beta, rng, opts);
    o.result["estimate"] = ToJson(est);
    o.result["regime"] = RegimeJson(1.0, c.epsilon, c.rho, c.rho * g.n());
    o.result["error_target"] = c.rho * g.n();
    if (c.oracle) {
      AddTruth(o.result, est.value, static_cast<double>(ComponentCount(g)));
    }
  } else if (c.subcommand == "matching") {
    PrivatizeOptions opts = WithAccuracyDivisor(kMatchingAccuracyDivisor);
    opts.force = c.force;
    MatchingOptions matching;
    matching.level = c.level;
    const PrivateEstimate est =
        PrivateMatching(g, c.rho, budget, c.beta, rng, opts, matching);
    o.result["estimate"] = ToJson(est);
    o.result["regime"] = RegimeJson(
        1.0, c.epsilon, c.rho, MatchingEstimator(matching).error_scale(g, c.rho));
    o.result["error_target"] = c.rho * g.n();
    if (c.oracle) {
      AddTruth(o.result, est.value,
               static_cast<double>(MaximumMatchingSize(g)));
    }
  } else {
    AvgDegreeOptions opts;
    opts.m_min = c.m_min;
    opts.force = c.force;
    const PrivateEstimate est =
        PrivateAvgDegree(g, c.rho, budget, c.beta, rng, opts);
    o.result["estimate"] = ToJson(est);
    o.result["regime"] = RegimeJson(2.0 / std::max(g.n(), 1), c.epsilon,
                                    c.rho, c.rho * g.AverageDegree());
    if (c.oracle) AddTruth(o.result, est.value, g.AverageDegree());
  }
  return o;
}

Outcome RunAudit(const RunConfig& c) {
  AuditOptions opts;
  opts.trials = TrialsOr(c, 100'000);
  opts.bins = c.bins;
  opts.epsilon_target = c.epsilon;
  opts.seed = *c.seed;
  Outcome o;
  Json audits = Json::array();
  bool as_expected = true;
  bool all_pass = true;
  for (const AuditScenario& s : DesignatedAudits()) {
    if (c.target != "all" && c.target != s.name) continue;
    const AuditReport r = RunDesignatedAudit(s.name, opts);
    Json j = ToJson(r);
    j["target"] = s.name;
    j["relation"] = s.relation;
    j["description"] = s.description;
    j["expected_verdict"] = s.expect_pass ? "pass" : "fail";
    audits.push_back(j);
    as_expected = as_expected && (r.pass == s.expect_pass);
    all_pass = all_pass && r.pass;
  }
  if (audits.empty()) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "unknown audit target " + c.target);
  }
  o.result["audits"] = audits;
  const bool ok = c.target == "all" ? as_expected : all_pass;
  o.result["verdict"] = ok ? "pass" : "fail";
  o.code = ok ? kExitOk : kExitAuditFailed;
  return o;
}

Outcome RunVerify(const RunConfig& c, RandomSource& rng) {
  const std::vector<std::string> known{"exp-expectation", "integral-bound",
                                       "subexp-sum", "median-expectation",
                                       "density-ratio"};
  if (c.lemma != "all" &&
      std::find(known.begin(), known.end(), c.lemma) == known.end()) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "unknown lemma " + c.lemma);
  }
  auto wanted = [&](const std::string& name) {
    return c.lemma == "all" || c.lemma == name;
  };
  const int64_t trials = TrialsOr(c, 1'000'000);
  Outcome o;
  bool ok = true;
  Json checks = Json::array();
  auto add = [&](const LemmaCheck& check, Json extra = Json::object()) {
    Json j = ToJson(check);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = *it;
    checks.push_back(j);
    ok = ok && check.pass;
  };
  if (wanted("exp-expectation")) {
    for (double d : c.diameters) {
      const LaplaceSpec spec{d};
      RandomSource child = rng.Fork();
      add(VerifyExpExpectationBounds(
              [spec](RandomSource& r) { return SampleLaplace(spec, r); }, d,
              trials, child),
          {{"sampler", "laplace"}, {"diameter", d}});
    }
  }
  if (wanted("integral-bound")) {
    Json table = Json::array();
    bool table_ok = true;
    for (const IntegralCase& ic :
         VerifyIntegralBound(c.alpha_grid, c.eps_grid, c.x_grid)) {
      table.push_back(ToJson(ic));
      table_ok = table_ok && ic.pass;
    }
    checks.push_back({{"name", "integral-bound"},
                      {"verdict", table_ok ? "pass" : "fail"},
                      {"tolerance", 1e-6},
                      {"table", table}});
    ok = ok && table_ok;
  }
  if (wanted("subexp-sum")) {
    const LaplaceSpec unit{1.0};
    Sampler lap = [unit](RandomSource& r) { return SampleLaplace(unit, r); };
    RandomSource child = rng.Fork();
    add(VerifySubexpSum({lap, lap}, {1.0, 1.0}, trials, child),
        {{"summands", "two independent Laplace(1)"}});
  }
  if (wanted("median-expectation")) {
    const ZSParetoSpec spec{3.0, 1.0};
    RandomSource child = rng.Fork();
    add(VerifyMedianExpectation(
            [spec](RandomSource& r) {
              return std::abs(SampleZSPareto(spec, r));
            },
            3, trials, child),
        {{"sampler", "|ZSPareto_3(1)|"}, {"k", 3}});
  }
  if (wanted("density-ratio")) {
    DensityRatioOptions dopts;
    dopts.draws = trials;
    const PrivacyBudget budget(c.epsilon);
    const LaplaceSpec y_lap = LaplaceScale({0.0, 1.0, 1}, budget);
    const LaplaceSpec x_lap{1.0};
    RandomSource child = rng.Fork();
    add(VerifyDensityRatio(
            y_lap, [x_lap](RandomSource& r) { return SampleLaplace(x_lap, r); },
            1.0, child, dopts),
        {{"contaminant", "Laplace(1)"}, {"noise_scale", y_lap.scale}});
    const ZSParetoSpec y_par = ZSParetoScale(3.0, {0.0, 1.0, 1}, budget);
    RandomSource child2 = rng.Fork();
    add(VerifyDensityRatio(
            y_par, [](RandomSource& r) { return r.Coin() ? 1.0 : -1.0; }, 1.0,
            child2, dopts),
        {{"contaminant", "+-1 with equal probability"},
         {"noise_scale", y_par.scale}});
  }
  o.result["checks"] = checks;
  o.result["verdict"] = ok ? "pass" : "fail";
  o.code = ok ? kExitOk : kExitAuditFailed;
  return o;
}

void AddCommon(CLI::App* sub, RunConfig& c) {
  sub->add_option("--epsilon", c.epsilon, "privacy budget, 0 < eps <= 1");
  sub->add_option("--rho", c.rho, "accuracy parameter in (0, 1]");
  sub->add_option("--beta", c.beta, "failure probability in (0, 1/2)");
  sub->add_option("--alpha", c.alpha, "Pareto shape");
  sub->add_option("--k", c.k, "number of queries");
  sub->add_option("--seed", c.seed, "64-bit seed (default: $SUBDP_SEED)");
  sub->add_option("--trials", c.trials, "Monte-Carlo trials");
  sub->add_option("--input", c.input, "input file");
  sub->add_option("--output", c.output, "report path (default: stdout)");
  sub->add_flag("--oracle", c.oracle, "also compute the exact answer");
  sub->add_flag("--force", c.force, "override regime errors");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  RunConfig c;
  CLI::App app{"subdp: differentially private sublinear estimators", "subdp"};
  app.require_subcommand(1);
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"mech", "sample a noise distribution and summarize it"},
      {"f2", "private F2 of an update stream"},
      {"rank", "private rank queries over a data file"},
      {"cc", "private number of connected components"},
      {"matching", "private maximum matching size"},
      {"avgdeg", "private average degree"},
      {"audit", "empirical epsilon audits on designated neighbor pairs"},
      {"verify", "numerical checks of the noise lemmas"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    AddCommon(sub, c);
    const std::string name = s.name;
    if (name == "mech") {
      sub->add_option("--dist", c.dist, "laplace or zspareto");
      sub->add_option("--scale", c.scale, "noise scale");
    } else if (name == "f2") {
      sub->add_option("--universe", c.universe,
                      "universe size (default: largest index + 1)");
      sub->add_option("--max-delta", c.max_delta, "bound on |delta|");
    } else if (name == "rank") {
      sub->add_option("--queries", c.queries, "query points")->delimiter(',');
    } else if (name == "matching") {
      sub->add_option("--level", c.level, "oracle level: 0 or 1");
    } else if (name == "avgdeg") {
      sub->add_option("--m-min", c.m_min, "declared lower bound on m");
    } else if (name == "audit") {
      sub->add_option("--target", c.target, "audit scenario or 'all'");
      sub->add_option("--bins", c.bins, "histogram bins");
    } else if (name == "verify") {
      sub->add_option("--lemma", c.lemma, "lemma name or 'all'");
      sub->add_option("--alpha-grid", c.alpha_grid)->delimiter(',');
      sub->add_option("--eps-grid", c.eps_grid)->delimiter(',');
      sub->add_option("--x-grid", c.x_grid)->delimiter(',');
      sub->add_option("--diameters", c.diameters)->delimiter(',');
    }
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "subdp: " << e.what() << "\n";
    return kExitValidation;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (!c.seed) c.seed = DefaultSeed(err);
    const auto start = std::chrono::steady_clock::now();
    RandomSource rng(*c.seed, 0);
    const bool needs_input = c.subcommand == "f2" || c.subcommand == "rank" ||
                             c.subcommand == "cc" ||
                             c.subcommand == "matching" ||
                             c.subcommand == "avgdeg";
    if (needs_input && c.input.empty()) {
      throw InvalidParameter(ErrorCode::kInvalidArgument,
                             c.subcommand + " needs --input");
    }
    Outcome outcome;
    if (c.subcommand == "mech") {
      outcome = RunMech(c, rng);
    } else if (c.subcommand == "f2") {
      outcome = RunF2(c, rng);
    } else if (c.subcommand == "rank") {
      outcome = RunRank(c, rng);
    } else if (c.subcommand == "audit") {
      outcome = RunAudit(c);
    } else if (c.subcommand == "verify") {
      outcome = RunVerify(c, rng);
    } else {
      outcome = RunGraph(c, rng);
    }
    const double elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    Json report;
    report["schema_version"] = kReportSchemaVersion;
    report["library_version"] = SUBDP_VERSION;
    report["command"] = c.subcommand;
    report["config"] = ConfigJson(c);
    report["seed"] = *c.seed;
    report["result"] = outcome.result;
    report["timing"] = {{"elapsed_seconds", elapsed}};
    const std::string text = report.dump(2) + "\n";
    if (c.output.empty()) {
      out << text;
    } else {
      std::ofstream file(c.output);
      if (!file) {
        throw InvalidParameter(ErrorCode::kInvalidArgument,
                               "cannot write " + c.output);
      }
      file << text;
    }
    return outcome.code;
  } catch (const RegimeViolation& e) {
    err << "subdp: regime violation: " << e.what() << "\n";
    return kExitRegime;
  } catch (const InvalidParameter& e) {
    err << "subdp: invalid parameter: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "subdp: parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "subdp: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace subdp
