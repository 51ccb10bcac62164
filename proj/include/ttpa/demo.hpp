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

// Monte Carlo harnesses behind `fpcode bench` and `demo laplace-tightness`.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ttpa/fpcode.hpp"
#include "ttpa/sanitize.hpp"

namespace ttpa {

struct FpBenchConfig {
  std::size_t n = 10;
  double eps = 0.05;
  double a = kDefaultTardosConstant;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  /// Coalition size; 0 draws it uniformly from [1, n - 1] per trial.
  std::size_t coalition_size = 0;
  std::vector<FpStrategy> strategies = {FpStrategy::kMajority, FpStrategy::kMinority,
                                        FpStrategy::kRandomFeasible, FpStrategy::kCopyOne};

  void validate() const;
};

struct FpBenchResult {
  FpStrategy strategy = FpStrategy::kMajority;
  std::size_t trials = 0;
  std::size_t feasible = 0;
  std::size_t accused_member = 0;
  std::size_t accused_innocent = 0;  // feasible output and accused outside S
  std::size_t none = 0;
};

/// Trial t of strategy s draws everything from derive_seed(seed, "fp-bench/<s>", t).
std::vector<FpBenchResult> run_fp_bench(const FpBenchConfig& cfg, std::size_t threads = 1);
std::string fp_bench_to_json(const FpBenchConfig& cfg, const std::vector<FpBenchResult>& r);

/// Dictator query x_{j mod d} over d-bit rows, produced on demand.
class DictatorQueries final : public QuerySource {
 public:
  DictatorQueries(std::size_t width, std::size_t count) : width_(width), count_(count) {}
  std::size_t size() const override { return count_; }
  std::size_t input_width() const override { return width_; }
  Circuit query(std::size_t j) const override;

 private:
  std::size_t width_;
  std::size_t count_;
};

struct LaplacePoint {
  std::size_t n = 0;
  double alpha = 0;
  /// Which outcome the point is meant to show.
  bool expect_accurate = true;
};

struct LaplaceDemoConfig {
  double epsilon = 1.0;
  double delta = 1e-9;
  std::size_t k = 10000;
  std::size_t d = 64;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::vector<LaplacePoint> points = {{100000, 0.1, true}, {100, 0.49, false}};
  /// Calibration: draws at `calibration_scale`, exceedance at `calibration_alpha`.
  std::size_t calibration_draws = 100000;
  double calibration_scale = 1.0;
  double calibration_alpha = 1.0;

  void validate() const;
};

struct LaplacePointResult {
  LaplacePoint point;
  double scale = 0;
  std::size_t accurate_trials = 0;
  std::size_t trials = 0;
  double mean_max_error = 0;
  /// Analytic probability that one clamped answer is off by more than alpha,
  /// ignoring clamping: exp(-alpha / scale).
  double per_query_exceedance = 0;
};

struct LaplaceCalibration {
  std::size_t draws = 0;
  double scale = 0;
  double mean_abs = 0;        // should be close to scale
  double relative_error = 0;  // |mean_abs - scale| / scale
  double alpha = 0;
  double exceed_rate = 0;      // empirical Pr[|X| > alpha]
  double exceed_expected = 0;  // exp(-alpha / scale)
  double exceed_sigma = 0;     // binomial standard deviation
};

struct LaplaceDemoResult {
  LaplaceCalibration calibration;
  std::vector<LaplacePointResult> points;
};

LaplaceCalibration laplace_calibration(std::size_t draws, double scale, double alpha,
                                       std::uint64_t seed);
LaplaceDemoResult run_laplace_demo(const LaplaceDemoConfig& cfg);
std::string laplace_demo_to_json(const LaplaceDemoConfig& cfg, const LaplaceDemoResult& r);

}  // namespace ttpa
