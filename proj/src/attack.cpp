// Copyright 2026 The ttpa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttpa/attack.hpp"

#include <algorithm>
#include <cmath>

#include "json_detail.hpp"
#include "parallel.hpp"
#include "ttpa/error.hpp"

namespace ttpa {

TTQuerySource::TTQuerySource(EncScheme scheme, std::size_t kappa,
                             std::span<const TTCiphertext> batch, CircuitMode mode)
    : scheme_(std::move(scheme)), kappa_(kappa), batch_(batch), mode_(mode) {}

Circuit TTQuerySource::query(std::size_t j) const {
  require(j < batch_.size(), ErrorCode::kOutOfRange, "query index out of range");
  return tt_dec_circuit(scheme_, kappa_, batch_[j], mode_);
}

SanitizerFn make_sanitizer(const SanitizerConfig& cfg) {
  cfg.validate();
  return [cfg](const Database& db, const QuerySource& qs, Rng& rng) {
    return sanitize(cfg, db, qs, rng);
  };
}

std::uint8_t round_answer(double a, bool tie_to_one) noexcept {
  if (a == 0.5) return tie_to_one ? 1 : 0;
  return a > 0.5 ? 1 : 0;
}

std::vector<std::size_t> resolve_coalition(std::span<const std::size_t> coalition,
                                           std::size_t n) {
  std::vector<std::size_t> s;
  if (coalition.empty()) {
    s.resize(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = i;
    return s;
  }
  s.assign(coalition.begin(), coalition.end());
  std::sort(s.begin(), s.end());
  require(std::adjacent_find(s.begin(), s.end()) == s.end(), ErrorCode::kInvalidArgument,
          "coalition lists a user twice");
  require(s.back() < n, ErrorCode::kOutOfRange, "coalition member out of range");
  require(s.size() + 1 >= n, ErrorCode::kInvalidArgument,
          "coalition must contain at least n - 1 users");
  return s;
}

PirateOracle pirate_from_sanitizer(const PirateConfig& cfg, const TTKeySet& ks,
                                   SanitizerFn san, std::uint64_t seed,
                                   std::shared_ptr<PirateLog> log) {
  auto members = resolve_coalition(cfg.coalition, ks.n);
  auto db = std::make_shared<const Database>(ks.rows.select_rows(members));
  if (!log) log = std::make_shared<PirateLog>();
  return PirateOracle([db, san = std::move(san), seed, log, scheme = ks.scheme,
                       kappa = ks.kappa, tie = cfg.tie_to_one,
                       mode = cfg.mode](std::span<const TTCiphertext> batch) {
    // The queries see only the ciphertexts and the public scheme.
    TTQuerySource queries(scheme, kappa, batch, mode);
    Rng rng(seed);
    log->called = true;
    log->queries = batch.size();
    ++log->sanitize_calls;
    SanitizeResult res;
    try {
      res = san(*db, queries, rng);
    } catch (const std::exception& e) {
      log->failed = true;
      log->failure = e.what();
      throw;
    }
    if (res.answers.size() != batch.size()) {
      log->failed = true;
      log->failure = "sanitizer returned " + std::to_string(res.answers.size()) +
                     " answers for " + std::to_string(batch.size()) + " queries";
      fail(ErrorCode::kRuntime, log->failure);
    }
    if (res.truths.size() != batch.size()) {
      res.truths.clear();
      for (std::size_t j = 0; j < batch.size(); ++j) {
        res.truths.push_back(evaluate_query(queries.query(j), *db));
      }
    }
    log->max_error = accuracy_check(res, 1.0).max_error;
    Bits out(batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j) out[j] = round_answer(res.answers[j], tie);
    log->answers = std::move(res.answers);
    return out;
  });
}

PirateOracle pirate_from_sanitizer(const PirateConfig& cfg, const TTKeySet& ks,
                                   std::uint64_t seed, std::shared_ptr<PirateLog> log) {
  return pirate_from_sanitizer(cfg, ks, make_sanitizer(cfg.sanitizer), seed, std::move(log));
}

void AttackConfig::validate() const {
  tt_check_params(kappa, n);
  require(n >= 2, ErrorCode::kInvalidArgument, "the attack needs n >= 2 users");
  require(scheme == SchemeKind::kLocalPrg, ErrorCode::kUnsupported,
          "the attack evaluates decryption circuits and needs the local PRG scheme");
  fp_length(n, eps_fp, a);
  sanitizer.validate();
  require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be at least 1");
  require(audit_epsilon >= 0 && std::isfinite(audit_epsilon), ErrorCode::kInvalidArgument,
          "audit epsilon must be non-negative");
  require(audit_delta >= 0 && audit_delta < 1, ErrorCode::kInvalidArgument,
          "audit delta must be in [0, 1)");
}

std::vector<std::size_t> ExperimentResult::accused_counts(std::size_t n) const {
  std::vector<std::size_t> c(n, 0);
  for (const auto& r : records) {
    if (r.accused && *r.accused < n) ++c[*r.accused];
  }
  return c;
}

std::size_t ExperimentResult::none_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.accused; }));
}

std::size_t ExperimentResult::feasible_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.feasible; }));
}

std::size_t ExperimentResult::oracle_failures() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return r.oracle_failure; }));
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::kViolated: return "violated";
    case Verdict::kNotViolated: return "not_violated";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

Interval wilson_interval(std::size_t hits, std::size_t trials) {
  require(trials >= 1 && hits <= trials, ErrorCode::kInvalidArgument,
          "Wilson interval needs 0 <= hits <= trials, trials >= 1");
  constexpr double z = 1.959963984540054;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / t;
  const double z2 = z * z;
  const double denom = 1 + z2 / t;
  const double center = p + z2 / (2 * t);
  const double half = z * std::sqrt(p * (1 - p) / t + z2 / (4 * t * t));
  return {std::max(0.0, (center - half) / denom), std::min(1.0, (center + half) / denom)};
}

DpAudit dp_audit_counts(std::optional<std::size_t> i_star, std::size_t full_hits,
                        std::size_t full_trials, std::size_t minus_hits,
                        std::size_t minus_trials, double eps, double delta) {
  require(eps >= 0 && std::isfinite(eps), ErrorCode::kInvalidArgument,
          "audit epsilon must be non-negative");
  require(delta >= 0 && delta < 1, ErrorCode::kInvalidArgument, "audit delta must be in [0, 1)");
  require(full_hits <= full_trials && minus_hits <= minus_trials, ErrorCode::kInvalidArgument,
          "hit counts exceed trial counts");
  DpAudit a;
  a.epsilon = eps;
  a.delta = delta;
  a.i_star = i_star;
  a.full_hits = full_hits;
  a.full_trials = full_trials;
  a.minus_hits = minus_hits;
  a.minus_trials = minus_trials;
  if (!i_star) {
    a.reason = "no user was accused in experiment 1";
    return a;
  }
  if (full_trials == 0 || minus_trials == 0) {
    a.reason = "an experiment has no trials";
    return a;
  }
  const double growth = std::exp(eps);
  a.p_full = static_cast<double>(full_hits) / static_cast<double>(full_trials);
  a.p_minus = static_cast<double>(minus_hits) / static_cast<double>(minus_trials);
  a.full_lower = wilson_interval(full_hits, full_trials).lo;
  a.minus_upper = wilson_interval(minus_hits, minus_trials).hi;
  a.bound = growth * a.minus_upper + delta;
  a.margin = a.full_lower - a.bound;
  const double best = wilson_interval(full_trials, full_trials).lo -
                      (growth * wilson_interval(0, minus_trials).hi + delta);
  if (best <= 0) {
    a.reason = "too few trials: even a perfect separation could not show a violation";
    return a;
  }
  if (a.margin > 0) {
    a.verdict = Verdict::kViolated;
    a.reason = "accusation rate of i* drops by more than e^eps and delta allow";
  } else {
    a.verdict = Verdict::kNotViolated;
    a.reason = "accusation rates are consistent with the claimed (eps, delta)";
  }
  return a;
}

DpAudit dp_audit(const AttackReport& report, double eps, double delta) {
  if (!report.i_star || !report.exp2) {
    return dp_audit_counts(std::nullopt, 0, report.exp1.trials(), 0, 0, eps, delta);
  }
  const std::size_t i = *report.i_star;
  const std::size_t n = report.config.n;
  return dp_audit_counts(report.i_star, report.exp1.accused_counts(n)[i], report.exp1.trials(),
                         report.exp2->accused_counts(n)[i], report.exp2->trials(), eps, delta);
}

TrialRecord run_trial(const AttackConfig& cfg, std::span<const std::size_t> coalition,
                      std::string_view label, std::size_t trial) {
  const std::string l(label);
  Rng key_rng(derive_seed(cfg.seed, l + "/keys", trial));
  TTKeySet ks = tt_gen(cfg.kappa, cfg.n, cfg.scheme, key_rng);
  PirateConfig pc{cfg.sanitizer, std::vector<std::size_t>(coalition.begin(), coalition.end()),
                  cfg.tie_to_one, cfg.mode};
  auto log = std::make_shared<PirateLog>();
  PirateOracle pirate =
      pirate_from_sanitizer(pc, ks, derive_seed(cfg.seed, l + "/sanitizer", trial), log);
  Rng trace_rng(derive_seed(cfg.seed, l + "/trace", trial));
  TrialRecord rec;
  try {
    TraceResult tr = tt_trace(ks, pirate, cfg.eps_fp, trace_rng, cfg.a);
    auto members = resolve_coalition(coalition, cfg.n);
    rec.accused = tr.accused;
    rec.feasible = fp_feasible(tr.codebook.words.select_rows(members), tr.word);
    rec.max_error = log->max_error;
  } catch (const std::exception& e) {
    if (!log->failed) throw;
    rec.oracle_failure = true;
    rec.failure = log->failure;
  }
  return rec;
}

namespace {

ExperimentResult run_experiment(const AttackConfig& cfg, std::vector<std::size_t> coalition,
                                std::string_view label, std::size_t threads) {
  ExperimentResult ex;
  ex.coalition = std::move(coalition);
  ex.records.resize(cfg.trials);
  detail::parallel_for(cfg.trials, threads, [&](std::size_t t) {
    ex.records[t] = run_trial(cfg, ex.coalition, label, t);
  });
  return ex;
}

}  // namespace

AttackReport run_attack(const AttackConfig& cfg, std::size_t threads) {
  cfg.validate();
  AttackReport rep;
  rep.config = cfg;
  rep.exp1 = run_experiment(cfg, resolve_coalition({}, cfg.n), "exp1", threads);
  auto counts = rep.exp1.accused_counts(cfg.n);
  auto best = std::max_element(counts.begin(), counts.end());
  if (*best > 0) {
    rep.i_star = static_cast<std::size_t>(best - counts.begin());
    std::vector<std::size_t> minus;
    for (std::size_t i = 0; i < cfg.n; ++i) {
      if (i != *rep.i_star) minus.push_back(i);
    }
    rep.exp2 = run_experiment(cfg, std::move(minus), "exp2", threads);
  }
  rep.audit = dp_audit(rep, cfg.audit_epsilon, cfg.audit_delta);
  return rep;
}

namespace {

detail::json experiment_json(const ExperimentResult& ex, std::size_t n) {
  using detail::json;
  auto counts = ex.accused_counts(n);
  const double t = static_cast<double>(std::max<std::size_t>(ex.trials(), 1));
  json freq = json::object();
  for (std::size_t i = 0; i < n; ++i) freq[std::to_string(i)] = static_cast<double>(counts[i]) / t;
  json records = json::array();
  for (std::size_t k = 0; k < ex.records.size(); ++k) {
    const auto& r = ex.records[k];
    json rec = {{"trial", k},
                {"accused", r.accused ? json(*r.accused) : json(nullptr)},
                {"feasible", r.feasible},
                {"max_error", r.max_error},
                {"oracle_failure", r.oracle_failure}};
    if (r.oracle_failure) rec["failure"] = r.failure;
    records.push_back(std::move(rec));
  }
  return json{{"trials", ex.trials()},
              {"coalition", ex.coalition},
              {"accused_counts", counts},
              {"accused_freq", std::move(freq)},
              {"none_count", ex.none_count()},
              {"none_freq", static_cast<double>(ex.none_count()) / t},
              {"feasible_count", ex.feasible_count()},
              {"oracle_failures", ex.oracle_failures()},
              {"records", std::move(records)}};
}

}  // namespace

std::string attack_report_to_json(const AttackReport& r) {
  using detail::json;
  const auto& c = r.config;
  json params = {{"n", c.n},
                 {"kappa", c.kappa},
                 {"scheme", scheme_name(c.scheme)},
                 {"eps_fp", c.eps_fp},
                 {"a", c.a},
                 {"code_length", fp_length(c.n, c.eps_fp, c.a)},
                 {"sanitizer",
                  {{"kind", sanitizer_kind_name(c.sanitizer.kind)},
                   {"epsilon", c.sanitizer.epsilon},
                   {"delta", c.sanitizer.delta},
                   {"composition", composition_name(c.sanitizer.composition)},
                   {"rounds", c.sanitizer.rounds}}},
                 {"trials", c.trials},
                 {"seed", c.seed},
                 {"tie_rule", c.tie_to_one ? "half_to_one" : "half_to_zero"},
                 {"circuit_mode", circuit_mode_name(c.mode)},
                 {"index_collision_bound",
                  index_collision_bound(fp_length(c.n, c.eps_fp, c.a),
                                        default_stretch(c.kappa / 2))}};
  const auto& a = r.audit;
  json audit = {{"epsilon", a.epsilon},
                {"delta", a.delta},
                {"verdict", verdict_name(a.verdict)},
                {"violated", a.violated()},
                {"i_star", a.i_star ? json(*a.i_star) : json(nullptr)},
                {"p_full", a.p_full},
                {"p_minus", a.p_minus},
                {"full_hits", a.full_hits},
                {"full_trials", a.full_trials},
                {"minus_hits", a.minus_hits},
                {"minus_trials", a.minus_trials},
                {"full_lower95", a.full_lower},
                {"minus_upper95", a.minus_upper},
                {"bound", a.bound},
                {"margin", a.margin},
                {"reason", a.reason}};
  json j = {{"params", std::move(params)},
            {"exp1", experiment_json(r.exp1, c.n)},
            {"exp2", r.exp2 ? experiment_json(*r.exp2, c.n) : json(nullptr)},
            {"audit", std::move(audit)}};
  return j.dump(2);
}

}  // namespace ttpa
