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

#include "ttpa/ttpa.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "json_detail.hpp"
#include "ttpa/attack.hpp"
#include "ttpa/circuit.hpp"
#include "ttpa/demo.hpp"
#include "ttpa/error.hpp"
#include "ttpa/fpcode.hpp"
#include "ttpa/report.hpp"
#include "ttpa/sanitize.hpp"
#include "ttpa/ttscheme.hpp"

struct ttpa_circuit {
  ttpa::Circuit c;
};
struct ttpa_codebook {
  ttpa::Codebook cb;
};
struct ttpa_keyset {
  ttpa::TTKeySet ks;
};
struct ttpa_database {
  ttpa::Database db;
};

namespace {

using ttpa::ErrorCode;
using ttpa::detail::field;
using ttpa::detail::field_or;
using ttpa::detail::json;

thread_local std::string g_last_error;

ttpa_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return TTPA_ERR_INVALID_ARGUMENT;
    case ErrorCode::kShapeMismatch: return TTPA_ERR_SHAPE;
    case ErrorCode::kOutOfRange: return TTPA_ERR_OUT_OF_RANGE;
    case ErrorCode::kMalformed: return TTPA_ERR_MALFORMED;
    case ErrorCode::kUnsupported: return TTPA_ERR_UNSUPPORTED;
    case ErrorCode::kParse: return TTPA_ERR_PARSE;
    case ErrorCode::kIo: return TTPA_ERR_IO;
    case ErrorCode::kRuntime: return TTPA_ERR_RUNTIME;
  }
  return TTPA_ERR_RUNTIME;
}

template <typename F>
ttpa_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return TTPA_OK;
  } catch (const ttpa::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TTPA_ERR_RUNTIME;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TTPA_ERR_RUNTIME;
  } catch (...) {
    g_last_error = "unknown error";
    return TTPA_ERR_RUNTIME;
  }
}

void need(const void* p, const char* name) {
  if (!p) ttpa::fail(ErrorCode::kInvalidArgument, std::string(name) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_config(const char* text, const char* what) {
  if (!text || !*text) return json::object();
  json j = ttpa::detail::parse_json(text, what);
  if (!j.is_object()) ttpa::fail(ErrorCode::kParse, std::string(what) + ": expected an object");
  return j;
}

// Reads a non-negative integer field; negative JSON numbers are rejected as
// invalid arguments rather than wrapped.
std::size_t size_field(const json& j, const char* key, std::size_t fallback, const char* what) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  const json& v = j.at(key);
  if (v.is_number_integer() && v.get<long long>() < 0) {
    ttpa::fail(ErrorCode::kInvalidArgument, std::string(what) + ": '" + key + "' is negative");
  }
  return field<std::size_t>(j, key, what);
}

bool parse_tie(const json& j, const char* what) {
  auto tie = field_or<std::string>(j, "tie", "one", what);
  if (tie == "one") return true;
  if (tie == "zero") return false;
  ttpa::fail(ErrorCode::kInvalidArgument, "tie must be 'one' or 'zero'");
}

ttpa::SanitizerConfig parse_sanitizer(const json& j, const char* kind_key, const char* what) {
  ttpa::SanitizerConfig sc;
  sc.kind = ttpa::parse_sanitizer_kind(field_or<std::string>(j, kind_key, "exact", what));
  sc.epsilon = field_or<double>(j, "epsilon", sc.epsilon, what);
  sc.delta = field_or<double>(j, "delta", sc.delta, what);
  sc.composition =
      ttpa::parse_composition(field_or<std::string>(j, "composition", "advanced", what));
  sc.rounds = size_field(j, "rounds", sc.rounds, what);
  sc.validate();
  return sc;
}

json sanitizer_json(const ttpa::SanitizerConfig& sc) {
  return {{"kind", ttpa::sanitizer_kind_name(sc.kind)},
          {"epsilon", sc.epsilon},
          {"delta", sc.delta},
          {"composition", ttpa::composition_name(sc.composition)},
          {"rounds", sc.rounds}};
}

json ciphertext_value(const ttpa::TTCiphertext& c) {
  json comps = json::array();
  for (const auto& e : c.components) comps.push_back({{"r", e.r}, {"b", e.masked}});
  return {{"components", std::move(comps)}};
}

json opt_index(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

extern "C" {

const char* ttpa_version(void) { return "0.1.0"; }

const char* ttpa_status_name(ttpa_status status) {
  switch (status) {
    case TTPA_OK: return "ok";
    case TTPA_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case TTPA_ERR_SHAPE: return "shape_mismatch";
    case TTPA_ERR_OUT_OF_RANGE: return "out_of_range";
    case TTPA_ERR_MALFORMED: return "malformed";
    case TTPA_ERR_UNSUPPORTED: return "unsupported";
    case TTPA_ERR_PARSE: return "parse";
    case TTPA_ERR_IO: return "io";
    case TTPA_ERR_RUNTIME: return "runtime";
  }
  return "unknown";
}

int ttpa_status_is_validation(ttpa_status status) {
  return status != TTPA_OK && status != TTPA_ERR_IO && status != TTPA_ERR_RUNTIME;
}

const char* ttpa_last_error(void) { return g_last_error.c_str(); }

void ttpa_string_free(char* s) { std::free(s); }

// ---- circuits -------------------------------------------------------------

ttpa_status ttpa_circuit_from_json(const char* text, ttpa_circuit** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    *out = new ttpa_circuit{ttpa::circuit_from_json(text)};
  });
}

ttpa_status ttpa_circuit_to_json(const ttpa_circuit* c, char** out) {
  return guarded([&] {
    need(c, "circuit");
    need(out, "out");
    *out = dup(ttpa::circuit_to_json(c->c));
  });
}

ttpa_status ttpa_circuit_input_width(const ttpa_circuit* c, size_t* out) {
  return guarded([&] {
    need(c, "circuit");
    need(out, "out");
    *out = c->c.input_width();
  });
}

ttpa_status ttpa_circuit_eval(const ttpa_circuit* c, const uint8_t* bits, size_t len,
                              uint8_t* out) {
  return guarded([&] {
    need(c, "circuit");
    need(out, "out");
    if (len) need(bits, "bits");
    ttpa::Bits x(bits, bits + len);
    for (auto v : x) {
      ttpa::require(v <= 1, ErrorCode::kInvalidArgument, "input bytes must be 0 or 1");
    }
    *out = ttpa::eval_circuit(c->c, x);
  });
}

ttpa_status ttpa_circuit_metrics(const ttpa_circuit* c, size_t* size, size_t* depth) {
  return guarded([&] {
    need(c, "circuit");
    auto m = ttpa::circuit_metrics(c->c);
    if (size) *size = m.size;
    if (depth) *depth = m.depth;
  });
}

ttpa_status ttpa_circuit_fold(const ttpa_circuit* c, ttpa_circuit** out) {
  return guarded([&] {
    need(c, "circuit");
    need(out, "out");
    *out = new ttpa_circuit{ttpa::constant_fold(c->c)};
  });
}

void ttpa_circuit_free(ttpa_circuit* c) { delete c; }

// ---- fingerprinting codes -------------------------------------------------

ttpa_status ttpa_codebook_generate(size_t n, double eps, double a, uint64_t seed,
                                   ttpa_codebook** out) {
  return guarded([&] {
    need(out, "out");
    ttpa::Rng rng(ttpa::derive_seed(seed, "fpcode-gen"));
    *out = new ttpa_codebook{ttpa::fp_gen(n, eps, rng, a)};
  });
}

ttpa_status ttpa_codebook_from_json(const char* text, ttpa_codebook** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    *out = new ttpa_codebook{ttpa::codebook_from_json(text)};
  });
}

ttpa_status ttpa_codebook_to_json(const ttpa_codebook* cb, char** out) {
  return guarded([&] {
    need(cb, "codebook");
    need(out, "out");
    *out = dup(ttpa::codebook_to_json(cb->cb));
  });
}

ttpa_status ttpa_codebook_view_json(const ttpa_codebook* cb, const size_t* coalition,
                                    size_t count, char** out) {
  return guarded([&] {
    need(cb, "codebook");
    need(out, "out");
    if (count) need(coalition, "coalition");
    std::vector<std::size_t> s(coalition, coalition + count);
    *out = dup(ttpa::adversary_view_to_json(cb->cb, s));
  });
}

ttpa_status ttpa_codebook_length(const ttpa_codebook* cb, size_t* out) {
  return guarded([&] {
    need(cb, "codebook");
    need(out, "out");
    *out = cb->cb.length();
  });
}

ttpa_status ttpa_codebook_trace(const ttpa_codebook* cb, const char* word_hex,
                                int64_t* accused) {
  return guarded([&] {
    need(cb, "codebook");
    need(word_hex, "word");
    need(accused, "accused");
    ttpa::Bits w = ttpa::from_hex(word_hex, cb->cb.length());
    auto r = ttpa::fp_trace(cb->cb, w);
    *accused = r ? static_cast<int64_t>(*r) : -1;
  });
}

void ttpa_codebook_free(ttpa_codebook* cb) { delete cb; }

ttpa_status ttpa_fpcode_bench(const char* config_json, size_t threads, char** report_json) {
  return guarded([&] {
    need(report_json, "out");
    const char* what = "fpcode bench config";
    json j = parse_config(config_json, what);
    ttpa::FpBenchConfig cfg;
    cfg.n = size_field(j, "n", cfg.n, what);
    cfg.eps = field_or<double>(j, "eps", cfg.eps, what);
    cfg.a = field_or<double>(j, "a", cfg.a, what);
    cfg.trials = size_field(j, "trials", cfg.trials, what);
    cfg.seed = field_or<std::uint64_t>(j, "seed", cfg.seed, what);
    cfg.coalition_size = size_field(j, "coalition_size", cfg.coalition_size, what);
    if (j.contains("strategies") && !j.at("strategies").is_null()) {
      cfg.strategies.clear();
      for (const auto& s : field<std::vector<std::string>>(j, "strategies", what)) {
        cfg.strategies.push_back(ttpa::parse_fp_strategy(s));
      }
    }
    auto res = ttpa::run_fp_bench(cfg, threads);
    *report_json = dup(ttpa::fp_bench_to_json(cfg, res));
  });
}

// ---- traitor tracing ------------------------------------------------------

ttpa_status ttpa_keyset_generate(size_t kappa, size_t n, const char* scheme, uint64_t seed,
                                 ttpa_keyset** out) {
  return guarded([&] {
    need(scheme, "scheme");
    need(out, "out");
    ttpa::Rng rng(ttpa::derive_seed(seed, "tt-keygen"));
    *out = new ttpa_keyset{ttpa::tt_gen(kappa, n, ttpa::parse_scheme(scheme), rng)};
  });
}

ttpa_status ttpa_keyset_from_json(const char* text, ttpa_keyset** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    *out = new ttpa_keyset{ttpa::keyset_from_json(text)};
  });
}

ttpa_status ttpa_keyset_to_json(const ttpa_keyset* ks, char** out) {
  return guarded([&] {
    need(ks, "keyset");
    need(out, "out");
    *out = dup(ttpa::keyset_to_json(ks->ks));
  });
}

void ttpa_keyset_free(ttpa_keyset* ks) { delete ks; }

ttpa_status ttpa_tt_trace(const ttpa_keyset* ks, const char* config_json,
                          char** result_json) {
  return guarded([&] {
    need(ks, "keyset");
    need(result_json, "out");
    const char* what = "tt trace config";
    json j = parse_config(config_json, what);
    const auto& keys = ks->ks;
    const auto seed = field_or<std::uint64_t>(j, "seed", 0, what);
    const auto pirate_spec = field_or<std::string>(j, "pirate", "sanitizer:exact", what);
    const auto tracer = field_or<std::string>(j, "tracer", "fingerprint", what);
    const double eps_fp = field_or<double>(j, "eps_fp", 0.05, what);
    const double a = field_or<double>(j, "a", ttpa::kDefaultTardosConstant, what);
    if (tracer != "fingerprint" && tracer != "linear") {
      ttpa::fail(ErrorCode::kInvalidArgument, "tracer must be 'fingerprint' or 'linear'");
    }

    json pirate_json;
    auto log = std::make_shared<ttpa::PirateLog>();
    std::optional<ttpa::PirateOracle> pirate;
    std::vector<std::size_t> coalition;
    if (pirate_spec.rfind("honest:", 0) == 0) {
      std::size_t i = 0, used = 0;
      const std::string num = pirate_spec.substr(7);
      try {
        i = std::stoull(num, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (num.empty() || used != num.size()) {
        ttpa::fail(ErrorCode::kInvalidArgument, "pirate 'honest:<i>' needs a user index");
      }
      ttpa::require(i < keys.n, ErrorCode::kOutOfRange, "honest pirate index out of range");
      pirate.emplace(ttpa::honest_pirate(keys, i));
      pirate_json = {{"kind", "honest"}, {"user", i}};
    } else if (pirate_spec.rfind("sanitizer:", 0) == 0) {
      json sj = j;
      sj["kind"] = pirate_spec.substr(10);
      ttpa::PirateConfig pc;
      pc.sanitizer = parse_sanitizer(sj, "kind", what);
      coalition = ttpa::resolve_coalition(
          field_or<std::vector<std::size_t>>(j, "coalition", {}, what), keys.n);
      pc.coalition = coalition;
      pc.tie_to_one = parse_tie(j, what);
      pirate.emplace(ttpa::pirate_from_sanitizer(
          pc, keys, ttpa::derive_seed(seed, "tt-trace/pirate"), log));
      pirate_json = {{"kind", "sanitizer"},
                     {"sanitizer", sanitizer_json(pc.sanitizer)},
                     {"coalition", pc.coalition},
                     {"tie", pc.tie_to_one ? "one" : "zero"}};
    } else {
      ttpa::fail(ErrorCode::kInvalidArgument,
                 "pirate must be 'honest:<i>', 'sanitizer:exact' or 'sanitizer:laplace'");
    }

    ttpa::Rng rng(ttpa::derive_seed(seed, "tt-trace/" + tracer));
    json out = {{"params",
                 {{"kappa", keys.kappa},
                  {"n", keys.n},
                  {"scheme", ttpa::scheme_name(keys.scheme.kind)},
                  {"tracer", tracer},
                  {"pirate", pirate_json},
                  {"seed", seed}}}};
    if (tracer == "fingerprint") {
      auto r = ttpa::tt_trace(keys, *pirate, eps_fp, rng, a);
      out["params"]["eps_fp"] = eps_fp;
      out["params"]["a"] = a;
      out["code_length"] = r.codebook.length();
      out["accused"] = opt_index(r.accused);
      if (!coalition.empty()) {
        out["feasible"] = ttpa::fp_feasible(r.codebook.words.select_rows(coalition), r.word);
      }
      out["word"] = ttpa::to_hex(r.word);
    } else {
      std::size_t s = size_field(j, "s", 0, what);
      if (s == 0) s = ttpa::linear_scan_default_s(keys.n);
      auto r = ttpa::linear_scan_trace(keys, *pirate, s, rng);
      out["params"]["s"] = r.s;
      out["threshold"] = opt_index(r.threshold);
      out["accused"] = opt_index(r.accused);
      out["ones"] = r.ones;
      out["p"] = r.p();
    }
    if (log->called) {
      out["pirate_log"] = {{"queries", log->queries},
                           {"sanitize_calls", log->sanitize_calls},
                           {"max_error", log->max_error}};
    }
    *result_json = dup(out.dump(2));
  });
}

ttpa_status ttpa_tt_export_circuit(const ttpa_keyset* ks, int bit, const char* mode,
                                   uint64_t seed, ttpa_circuit** out, char** ciphertext_json) {
  return guarded([&] {
    need(ks, "keyset");
    need(mode, "mode");
    need(out, "out");
    ttpa::require(bit == 0 || bit == 1, ErrorCode::kInvalidArgument, "bit must be 0 or 1");
    const auto m = ttpa::parse_circuit_mode(mode);
    ttpa::Rng rng(ttpa::derive_seed(seed, "tt-export"));
    auto c = ttpa::tt_enc(ks->ks, static_cast<std::uint8_t>(bit), rng);
    auto circuit = std::make_unique<ttpa_circuit>(
        ttpa_circuit{ttpa::tt_dec_circuit(ks->ks.scheme, ks->ks.kappa, c, m)});
    if (ciphertext_json) {
      json cj = ciphertext_value(c);
      cj["bit"] = bit;
      cj["mode"] = ttpa::circuit_mode_name(m);
      cj["seed"] = seed;
      *ciphertext_json = dup(cj.dump(2));
    }
    *out = circuit.release();
  });
}

// ---- sanitizers -----------------------------------------------------------

ttpa_status ttpa_database_from_text(const char* text, ttpa_database** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new ttpa_database{ttpa::database_from_text(text)};
  });
}

ttpa_status ttpa_database_size(const ttpa_database* db, size_t* rows, size_t* width) {
  return guarded([&] {
    need(db, "database");
    if (rows) *rows = db->db.size();
    if (width) *width = db->db.width();
  });
}

void ttpa_database_free(ttpa_database* db) { delete db; }

ttpa_status ttpa_sanitize_run(const ttpa_database* db, const char* queries_json,
                              const char* config_json, uint64_t seed, char** result_json) {
  return guarded([&] {
    need(db, "database");
    need(queries_json, "queries");
    need(result_json, "out");
    const char* what = "sanitize config";
    json j = parse_config(config_json, what);
    auto sc = parse_sanitizer(j, "kind", what);
    const double alpha = field_or<double>(j, "alpha", 0.1, what);
    auto batch = ttpa::query_batch_from_json(queries_json);
    ttpa::Rng rng(ttpa::derive_seed(seed, "sanitize"));
    auto res = ttpa::sanitize(sc, db->db, batch, rng);
    auto acc = ttpa::accuracy_check(res, alpha);
    std::vector<double> truths;
    truths.reserve(res.truths.size());
    for (const auto& t : res.truths) truths.push_back(t.value());
    json params = sanitizer_json(sc);
    params["rows"] = db->db.size();
    params["width"] = db->db.width();
    params["queries"] = batch.size();
    params["alpha"] = alpha;
    params["seed"] = seed;
    if (sc.kind == ttpa::SanitizerKind::kLaplace && batch.size() > 0) {
      const double r = static_cast<double>(std::max<std::size_t>(sc.rounds, 1));
      params["scale"] = ttpa::laplace_scale(sc.composition, batch.size(), db->db.size(),
                                            sc.epsilon / r, sc.delta / r);
    }
    json out = {{"params", std::move(params)},
                {"answers", res.answers},
                {"truths", std::move(truths)},
                {"max_error", acc.max_error},
                {"accurate", acc.ok}};
    *result_json = dup(out.dump(2));
  });
}

// ---- experiments ----------------------------------------------------------

ttpa_status ttpa_attack_run(const char* config_json, size_t threads, char** report_json) {
  return guarded([&] {
    need(report_json, "out");
    const char* what = "attack config";
    json j = parse_config(config_json, what);
    ttpa::AttackConfig cfg;
    cfg.n = size_field(j, "n", cfg.n, what);
    cfg.kappa = size_field(j, "kappa", cfg.kappa, what);
    if (j.contains("scheme")) cfg.scheme = ttpa::parse_scheme(field<std::string>(j, "scheme", what));
    cfg.eps_fp = field_or<double>(j, "eps_fp", cfg.eps_fp, what);
    cfg.a = field_or<double>(j, "a", cfg.a, what);
    cfg.sanitizer = parse_sanitizer(j, "sanitizer", what);
    cfg.trials = size_field(j, "trials", cfg.trials, what);
    cfg.seed = field_or<std::uint64_t>(j, "seed", cfg.seed, what);
    cfg.tie_to_one = parse_tie(j, what);
    if (j.contains("mode")) cfg.mode = ttpa::parse_circuit_mode(field<std::string>(j, "mode", what));
    cfg.audit_epsilon = field_or<double>(j, "audit_epsilon", cfg.audit_epsilon, what);
    cfg.audit_delta = field_or<double>(j, "audit_delta", cfg.audit_delta, what);
    auto report = ttpa::run_attack(cfg, threads);
    *report_json = dup(ttpa::attack_report_to_json(report));
  });
}

ttpa_status ttpa_report_summary(const char* report_json, char** table, char** csv) {
  return guarded([&] {
    need(report_json, "report");
    auto s = ttpa::emit_summary(report_json);
    std::unique_ptr<char, decltype(&std::free)> t(table ? dup(s.table) : nullptr, &std::free);
    if (csv) *csv = dup(s.csv);
    if (table) *table = t.release();
  });
}

ttpa_status ttpa_demo_laplace_tightness(const char* config_json, char** report_json) {
  return guarded([&] {
    need(report_json, "out");
    const char* what = "laplace demo config";
    json j = parse_config(config_json, what);
    ttpa::LaplaceDemoConfig cfg;
    cfg.epsilon = field_or<double>(j, "epsilon", cfg.epsilon, what);
    cfg.delta = field_or<double>(j, "delta", cfg.delta, what);
    cfg.k = size_field(j, "k", cfg.k, what);
    cfg.d = size_field(j, "d", cfg.d, what);
    cfg.trials = size_field(j, "trials", cfg.trials, what);
    cfg.seed = field_or<std::uint64_t>(j, "seed", cfg.seed, what);
    if (j.contains("points") && !j.at("points").is_null()) {
      const json& pts = j.at("points");
      if (!pts.is_array()) ttpa::fail(ErrorCode::kParse, "points must be an array");
      cfg.points.clear();
      for (const auto& p : pts) {
        cfg.points.push_back({size_field(p, "n", 0, what), field<double>(p, "alpha", what),
                              field_or<bool>(p, "expect_accurate", true, what)});
      }
    }
    cfg.calibration_draws = size_field(j, "calibration_draws", cfg.calibration_draws, what);
    cfg.calibration_scale = field_or<double>(j, "calibration_scale", cfg.calibration_scale, what);
    cfg.calibration_alpha = field_or<double>(j, "calibration_alpha", cfg.calibration_alpha, what);
    auto res = ttpa::run_laplace_demo(cfg);
    *report_json = dup(ttpa::laplace_demo_to_json(cfg, res));
  });
}

}  // extern "C"
