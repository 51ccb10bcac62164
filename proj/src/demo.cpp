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

#include "ttpa/demo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json_detail.hpp"
#include "parallel.hpp"
#include "ttpa/error.hpp"

namespace ttpa {

void FpBenchConfig::validate() const {
  fp_length(n, eps, a);
  require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be at least 1");
  require(coalition_size <= n, ErrorCode::kInvalidArgument, "coalition larger than n");
  require(!strategies.empty(), ErrorCode::kInvalidArgument, "no strategies selected");
}

std::vector<FpBenchResult> run_fp_bench(const FpBenchConfig& cfg, std::size_t threads) {
  cfg.validate();
  std::vector<FpBenchResult> out;
  for (auto strategy : cfg.strategies) {
    struct Outcome {
      bool feasible = false, member = false, innocent = false, none = false;
    };
    std::vector<Outcome> trials(cfg.trials);
    const std::string label = std::string("fp-bench/") + fp_strategy_name(strategy);
    detail::parallel_for(cfg.trials, threads, [&](std::size_t t) {
      Rng rng(derive_seed(cfg.seed, label, t));
      Codebook cb = fp_gen(cfg.n, cfg.eps, rng, cfg.a);
      std::size_t c = cfg.coalition_size ? cfg.coalition_size : 1 + rng.uniform_below(cfg.n - 1);
      std::vector<std::size_t> users(cfg.n);
      std::iota(users.begin(), users.end(), 0);
      for (std::size_t k = 0; k < c; ++k) {
        std::swap(users[k], users[k + rng.uniform_below(cfg.n - k)]);
      }
      users.resize(c);
      std::sort(users.begin(), users.end());
      BitMatrix ws = cb.words.select_rows(users);
      Bits w = fp_adversary(strategy, ws, rng);
      auto accused = fp_trace(cb, w);
      Outcome o;
      o.feasible = fp_feasible(ws, w);
      o.none = !accused;
      if (accused) {
        bool in = std::binary_search(users.begin(), users.end(), *accused);
        o.member = in;
        o.innocent = !in && o.feasible;
      }
      trials[t] = o;
    });
    FpBenchResult r;
    r.strategy = strategy;
    r.trials = cfg.trials;
    for (const auto& o : trials) {
      r.feasible += o.feasible;
      r.accused_member += o.member;
      r.accused_innocent += o.innocent;
      r.none += o.none;
    }
    out.push_back(r);
  }
  return out;
}

std::string fp_bench_to_json(const FpBenchConfig& cfg, const std::vector<FpBenchResult>& r) {
  using detail::json;
  json strategies = json::array();
  for (auto s : cfg.strategies) strategies.push_back(fp_strategy_name(s));
  json results = json::array();
  for (const auto& x : r) {
    const double t = static_cast<double>(x.trials);
    results.push_back({{"strategy", fp_strategy_name(x.strategy)},
                       {"trials", x.trials},
                       {"feasible", x.feasible},
                       {"accused_member", x.accused_member},
                       {"accused_innocent", x.accused_innocent},
                       {"none", x.none},
                       {"member_rate", static_cast<double>(x.accused_member) / t},
                       {"innocent_rate", static_cast<double>(x.accused_innocent) / t}});
  }
  json j = {{"params",
             {{"n", cfg.n},
              {"eps", cfg.eps},
              {"a", cfg.a},
              {"length", fp_length(cfg.n, cfg.eps, cfg.a)},
              {"threshold", fp_threshold(cfg.n, cfg.eps)},
              {"cutoff", fp_cutoff(cfg.n)},
              {"trials", cfg.trials},
              {"coalition_size", cfg.coalition_size},
              {"strategies", std::move(strategies)},
              {"seed", cfg.seed}}},
            {"results", std::move(results)}};
  return j.dump(2);
}

Circuit DictatorQueries::query(std::size_t j) const {
  require(j < count_, ErrorCode::kOutOfRange, "query index out of range");
  CircuitBuilder b(width_);
  return b.build(b.input(j % width_));
}

void LaplaceDemoConfig::validate() const {
  require(epsilon > 0, ErrorCode::kInvalidArgument, "epsilon must be positive");
  require(delta > 0 && delta < 1, ErrorCode::kInvalidArgument, "delta must be in (0, 1)");
  require(k >= 1 && d >= 1 && trials >= 1, ErrorCode::kInvalidArgument,
          "k, d and trials must be positive");
  require(calibration_draws >= 1 && calibration_scale > 0 && calibration_alpha >= 0,
          ErrorCode::kInvalidArgument, "bad calibration settings");
  for (const auto& p : points) {
    require(p.n >= 1 && p.alpha >= 0, ErrorCode::kInvalidArgument, "bad demo point");
  }
}

LaplaceCalibration laplace_calibration(std::size_t draws, double scale, double alpha,
                                       std::uint64_t seed) {
  require(draws >= 1 && scale > 0, ErrorCode::kInvalidArgument, "bad calibration settings");
  Rng rng(derive_seed(seed, "laplace-calibration"));
  LaplaceCalibration c;
  c.draws = draws;
  c.scale = scale;
  c.alpha = alpha;
  double sum = 0;
  std::size_t exceed = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    double x = std::abs(rng.laplace(scale));
    sum += x;
    exceed += x > alpha;
  }
  const double t = static_cast<double>(draws);
  c.mean_abs = sum / t;
  c.relative_error = std::abs(c.mean_abs - scale) / scale;
  c.exceed_rate = static_cast<double>(exceed) / t;
  c.exceed_expected = std::exp(-alpha / scale);
  c.exceed_sigma = std::sqrt(c.exceed_expected * (1 - c.exceed_expected) / t);
  return c;
}

LaplaceDemoResult run_laplace_demo(const LaplaceDemoConfig& cfg) {
  cfg.validate();
  LaplaceDemoResult res;
  res.calibration = laplace_calibration(cfg.calibration_draws, cfg.calibration_scale,
                                        cfg.calibration_alpha, cfg.seed);
  SanitizerConfig sc;
  sc.kind = SanitizerKind::kLaplace;
  sc.epsilon = cfg.epsilon;
  sc.delta = cfg.delta;
  sc.composition = Composition::kAdvanced;
  DictatorQueries queries(cfg.d, cfg.k);
  for (std::size_t p = 0; p < cfg.points.size(); ++p) {
    const auto& pt = cfg.points[p];
    Rng data_rng(derive_seed(cfg.seed, "laplace-demo/data", p));
    BitMatrix rows(pt.n, cfg.d);
    for (std::size_t r = 0; r < pt.n; ++r) {
      for (std::size_t k = 0; k < cfg.d; ++k) rows(r, k) = data_rng.bit();
    }
    Database db(std::move(rows));
    LaplacePointResult pr;
    pr.point = pt;
    pr.trials = cfg.trials;
    pr.scale = laplace_scale(Composition::kAdvanced, cfg.k, pt.n, cfg.epsilon, cfg.delta);
    pr.per_query_exceedance = std::exp(-pt.alpha / pr.scale);
    double err_sum = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng(derive_seed(cfg.seed, "laplace-demo/noise/" + std::to_string(p), t));
      auto acc = accuracy_check(sanitize(sc, db, queries, rng), pt.alpha);
      pr.accurate_trials += acc.ok;
      err_sum += acc.max_error;
    }
    pr.mean_max_error = err_sum / static_cast<double>(cfg.trials);
    res.points.push_back(pr);
  }
  return res;
}

std::string laplace_demo_to_json(const LaplaceDemoConfig& cfg, const LaplaceDemoResult& r) {
  using detail::json;
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back({{"n", p.point.n},
                      {"alpha", p.point.alpha},
                      {"expect_accurate", p.point.expect_accurate},
                      {"scale", p.scale},
                      {"trials", p.trials},
                      {"accurate_trials", p.accurate_trials},
                      {"accurate_rate",
                       static_cast<double>(p.accurate_trials) / static_cast<double>(p.trials)},
                      {"mean_max_error", p.mean_max_error},
                      {"per_query_exceedance", p.per_query_exceedance}});
  }
  const auto& c = r.calibration;
  json j = {{"params",
             {{"epsilon", cfg.epsilon},
              {"delta", cfg.delta},
              {"k", cfg.k},
              {"d", cfg.d},
              {"trials", cfg.trials},
              {"composition", "advanced"},
              {"seed", cfg.seed}}},
            {"calibration",
             {{"draws", c.draws},
              {"scale", c.scale},
              {"mean_abs", c.mean_abs},
              {"relative_error", c.relative_error},
              {"alpha", c.alpha},
              {"exceed_rate", c.exceed_rate},
              {"exceed_expected", c.exceed_expected},
              {"exceed_sigma", c.exceed_sigma}}},
            {"points", std::move(points)}};
  return j.dump(2);
}

}  // namespace ttpa
