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

// Sanitizer-to-pirate reduction and the two-experiment privacy audit.
//
// The pirate turns each ciphertext c into the counting query
// "row decrypts c to 1", asks the sanitizer for all of them at once over the
// database of coalition keys, and rounds. Experiment 1 traces pirates built
// from all n keys; experiment 2 removes the most accused user i* and
// measures how often i* is still accused.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttpa/sanitize.hpp"
#include "ttpa/ttscheme.hpp"

namespace ttpa {

/// Queries q_c = tt_dec_circuit(c) for a batch of ciphertexts, built on
/// demand from the ciphertexts and the public scheme alone.
class TTQuerySource final : public QuerySource {
 public:
  TTQuerySource(EncScheme scheme, std::size_t kappa, std::span<const TTCiphertext> batch,
                CircuitMode mode = CircuitMode::kCompact);

  std::size_t size() const override { return batch_.size(); }
  std::size_t input_width() const override { return kappa_; }
  Circuit query(std::size_t j) const override;

 private:
  EncScheme scheme_;
  std::size_t kappa_;
  std::span<const TTCiphertext> batch_;
  CircuitMode mode_;
};

/// Any batch sanitizer: database and queries in, one real answer per query.
/// `truths` may be left empty; the pirate then computes them itself for its
/// accuracy log.
using SanitizerFn =
    std::function<SanitizeResult(const Database&, const QuerySource&, Rng&)>;

SanitizerFn make_sanitizer(const SanitizerConfig& cfg);

struct PirateConfig {
  SanitizerConfig sanitizer;
  std::vector<std::size_t> coalition;  // empty means all users
  bool tie_to_one = true;              // rounding of answers equal to 1/2
  CircuitMode mode = CircuitMode::kCompact;
};

/// Diagnostics written by the pirate on its single call.
struct PirateLog {
  bool called = false;
  std::size_t sanitize_calls = 0;
  std::size_t queries = 0;
  double max_error = 0;  // against true query values
  std::vector<double> answers;
  bool failed = false;  // the sanitizer threw
  std::string failure;
};

/// Builds the coalition database and wraps `san` as a one-shot pirate.
/// Sanitizer exceptions propagate out of the oracle call. `log`, if given,
/// receives diagnostics.
PirateOracle pirate_from_sanitizer(const PirateConfig& cfg, const TTKeySet& ks,
                                   SanitizerFn san, std::uint64_t seed,
                                   std::shared_ptr<PirateLog> log = nullptr);
PirateOracle pirate_from_sanitizer(const PirateConfig& cfg, const TTKeySet& ks,
                                   std::uint64_t seed,
                                   std::shared_ptr<PirateLog> log = nullptr);

/// Rounds to the nearest bit; exactly 1/2 goes to `tie_to_one`.
std::uint8_t round_answer(double a, bool tie_to_one) noexcept;

/// Checks |S| >= n - 1, distinct members below n. Empty means all users.
std::vector<std::size_t> resolve_coalition(std::span<const std::size_t> coalition,
                                           std::size_t n);

struct AttackConfig {
  std::size_t n = 10;
  std::size_t kappa = 64;
  SchemeKind scheme = SchemeKind::kLocalPrg;
  double eps_fp = 0.05;
  double a = kDefaultTardosConstant;
  SanitizerConfig sanitizer;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  bool tie_to_one = true;
  CircuitMode mode = CircuitMode::kCompact;
  double audit_epsilon = 1.0;
  double audit_delta = 0.01;

  void validate() const;
};

struct TrialRecord {
  std::optional<std::size_t> accused;
  bool feasible = false;
  double max_error = 0;
  bool oracle_failure = false;
  std::string failure;  // message when oracle_failure
};

struct ExperimentResult {
  std::vector<std::size_t> coalition;
  std::vector<TrialRecord> records;

  std::size_t trials() const noexcept { return records.size(); }
  std::vector<std::size_t> accused_counts(std::size_t n) const;
  std::size_t none_count() const;
  std::size_t feasible_count() const;
  std::size_t oracle_failures() const;
};

enum class Verdict { kViolated, kNotViolated, kInconclusive };
const char* verdict_name(Verdict v) noexcept;

struct DpAudit {
  double epsilon = 0;
  double delta = 0;
  std::optional<std::size_t> i_star;
  std::size_t full_hits = 0, full_trials = 0;
  std::size_t minus_hits = 0, minus_trials = 0;
  double p_full = 0, p_minus = 0;
  double full_lower = 0;   // Wilson 95% lower bound on p_full
  double minus_upper = 0;  // Wilson 95% upper bound on p_minus
  double bound = 0;        // e^eps * minus_upper + delta
  double margin = 0;       // full_lower - bound
  Verdict verdict = Verdict::kInconclusive;
  std::string reason;
  bool violated() const noexcept { return verdict == Verdict::kViolated; }
};

/// Two-sided 95% Wilson score interval for hits / trials.
struct Interval {
  double lo, hi;
};
Interval wilson_interval(std::size_t hits, std::size_t trials);

/// Violated iff the Wilson lower bound on p_full exceeds
/// e^eps * (Wilson upper bound on p_minus) + delta. Inconclusive when there
/// is no i*, no trials, or even hits = trials against zero hits could not
/// show a violation at these trial counts.
DpAudit dp_audit_counts(std::optional<std::size_t> i_star, std::size_t full_hits,
                        std::size_t full_trials, std::size_t minus_hits,
                        std::size_t minus_trials, double eps, double delta);

struct AttackReport {
  AttackConfig config;
  ExperimentResult exp1;
  std::optional<std::size_t> i_star;
  std::optional<ExperimentResult> exp2;
  DpAudit audit;
};

DpAudit dp_audit(const AttackReport& report, double eps, double delta);

/// Runs one tracing trial: fresh keys, tracing batch, pirate, accusation.
TrialRecord run_trial(const AttackConfig& cfg, std::span<const std::size_t> coalition,
                      std::string_view label, std::size_t trial);

/// Both experiments and the audit. Trials run on `threads` workers; results
/// do not depend on the thread count.
AttackReport run_attack(const AttackConfig& cfg, std::size_t threads = 1);

std::string attack_report_to_json(const AttackReport& r);

}  // namespace ttpa
