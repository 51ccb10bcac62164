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

// Command-line front end. Everything goes through the C API in ttpa/ttpa.h.
//
// Exit codes: 0 success, 1 runtime or I/O failure, 2 invalid input.
// TTPA_SEED, when set, overrides --seed. Outputs carry a "run" object with
// the subcommand, the resolved config and the master seed. The thread count
// is left out so that reports do not depend on it.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ttpa/ttpa.h"

namespace {

using json = nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void invalid(const std::string& msg) { throw CliError{kExitValidation, msg}; }

void check(ttpa_status st) {
  if (st == TTPA_OK) return;
  throw CliError{ttpa_status_is_validation(st) ? kExitValidation : kExitRuntime,
                 std::string(ttpa_status_name(st)) + ": " + ttpa_last_error()};
}

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { ttpa_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

template <typename T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p_); }
  T** out() { return &p_; }
  T* get() const { return p_; }

 private:
  T* p_ = nullptr;
};

using Circuit = Handle<ttpa_circuit, ttpa_circuit_free>;
using Codebook = Handle<ttpa_codebook, ttpa_codebook_free>;
using Keyset = Handle<ttpa_keyset, ttpa_keyset_free>;
using Database = Handle<ttpa_database, ttpa_database_free>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or stdout when the path is empty or "-".
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  out.close();
  if (!out) throw CliError{kExitRuntime, "failed to write '" + path + "'"};
}

json parse_lib_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw CliError{kExitRuntime, std::string("library returned bad JSON: ") + e.what()};
  }
}

json parse_input_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    invalid(what + ": " + e.what());
  }
}

struct Globals {
  std::uint64_t seed = 0;
  bool verbose = false;
};

std::uint64_t resolve_seed(std::uint64_t flag) {
  const char* env = std::getenv("TTPA_SEED");
  if (!env || !*env) return flag;
  std::string s(env);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used, 10);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used != s.size() || s[0] == '-') invalid("TTPA_SEED must be an unsigned integer");
  return v;
}

// Adds the "run" record and renders the document.
std::string with_run(json doc, const std::string& command, const json& config,
                     std::uint64_t seed) {
  doc["run"] = {{"command", command},
                {"config", config},
                {"seed", seed},
                {"version", ttpa_version()}};
  return doc.dump(2) + "\n";
}

void log_config(const Globals& g, const std::string& command, const json& config) {
  if (g.verbose) {
    std::cerr << command << " seed=" << g.seed << " config=" << config.dump() << "\n";
  }
}

json sanitizer_options(const std::string& kind, double eps, double delta,
                       const std::string& composition, std::size_t rounds) {
  return {{"epsilon", eps}, {"delta", delta}, {"composition", composition},
          {"rounds", rounds}, {"kind", kind}};
}

// ---- fpcode ---------------------------------------------------------------

struct FpGenOpts {
  std::size_t n = 10;
  double eps = 0.05, a = 100;
  std::vector<std::size_t> coalition;
  std::string out, view_out;
};

int fpcode_gen(const FpGenOpts& o, const Globals& g) {
  json config = {{"n", o.n}, {"eps", o.eps}, {"a", o.a}, {"coalition", o.coalition}};
  log_config(g, "fpcode gen", config);
  Codebook cb;
  check(ttpa_codebook_generate(o.n, o.eps, o.a, g.seed, cb.out()));
  LibString text;
  check(ttpa_codebook_to_json(cb.get(), text.out()));
  write_output(o.out, with_run(parse_lib_json(text.str()), "fpcode gen", config, g.seed));
  if (!o.view_out.empty()) {
    LibString view;
    check(ttpa_codebook_view_json(cb.get(), o.coalition.data(), o.coalition.size(),
                                  view.out()));
    write_output(o.view_out,
                 with_run(parse_lib_json(view.str()), "fpcode gen", config, g.seed));
  }
  return 0;
}

struct FpTraceOpts {
  std::string codebook, word, word_file, out;
};

int fpcode_trace(const FpTraceOpts& o, const Globals& g) {
  if (o.word.empty() == o.word_file.empty()) invalid("give exactly one of --word, --word-file");
  std::string word = o.word;
  if (!o.word_file.empty()) {
    word = read_file(o.word_file);
    while (!word.empty() && std::isspace(static_cast<unsigned char>(word.back()))) {
      word.pop_back();
    }
  }
  json config = {{"codebook", o.codebook}, {"word", word}};
  log_config(g, "fpcode trace", config);
  Codebook cb;
  check(ttpa_codebook_from_json(read_file(o.codebook).c_str(), cb.out()));
  std::int64_t accused = -1;
  check(ttpa_codebook_trace(cb.get(), word.c_str(), &accused));
  json doc = {{"accused", accused < 0 ? json(nullptr) : json(accused)}};
  write_output(o.out, with_run(doc, "fpcode trace", config, g.seed));
  return 0;
}

struct FpBenchOpts {
  std::size_t n = 10, trials = 200, coalition_size = 0, threads = 1;
  double eps = 0.05, a = 100;
  std::vector<std::string> strategies = {"majority", "minority", "random_feasible",
                                         "copy_one"};
  std::string out;
};

int fpcode_bench(const FpBenchOpts& o, const Globals& g) {
  json config = {{"n", o.n},           {"eps", o.eps},
                 {"a", o.a},           {"trials", o.trials},
                 {"seed", g.seed},     {"coalition_size", o.coalition_size},
                 {"strategies", o.strategies}};
  log_config(g, "fpcode bench", config);
  LibString report;
  check(ttpa_fpcode_bench(config.dump().c_str(), o.threads, report.out()));
  write_output(o.out, with_run(parse_lib_json(report.str()), "fpcode bench", config, g.seed));
  return 0;
}

// ---- tt -------------------------------------------------------------------

struct TtKeygenOpts {
  std::size_t kappa = 64, n = 10;
  std::string scheme = "local_prg", out;
};

int tt_keygen(const TtKeygenOpts& o, const Globals& g) {
  json config = {{"kappa", o.kappa}, {"n", o.n}, {"scheme", o.scheme}};
  log_config(g, "tt keygen", config);
  Keyset ks;
  check(ttpa_keyset_generate(o.kappa, o.n, o.scheme.c_str(), g.seed, ks.out()));
  LibString text;
  check(ttpa_keyset_to_json(ks.get(), text.out()));
  write_output(o.out, with_run(parse_lib_json(text.str()), "tt keygen", config, g.seed));
  return 0;
}

struct TtTraceOpts {
  std::string keys, pirate = "sanitizer:exact", tracer = "fingerprint";
  double eps_fp = 0.05, a = 100, eps = 1.0, delta = 1e-6;
  std::string composition = "advanced", tie = "one", out;
  std::size_t rounds = 1, s = 0;
  std::vector<std::size_t> coalition;
};

int tt_trace(const TtTraceOpts& o, const Globals& g) {
  json config = {{"keys", o.keys},     {"pirate", o.pirate},   {"tracer", o.tracer},
                 {"eps_fp", o.eps_fp}, {"a", o.a},             {"s", o.s},
                 {"epsilon", o.eps},   {"delta", o.delta},     {"composition", o.composition},
                 {"rounds", o.rounds}, {"tie", o.tie},         {"coalition", o.coalition},
                 {"seed", g.seed}};
  log_config(g, "tt trace", config);
  Keyset ks;
  check(ttpa_keyset_from_json(read_file(o.keys).c_str(), ks.out()));
  LibString result;
  check(ttpa_tt_trace(ks.get(), config.dump().c_str(), result.out()));
  write_output(o.out, with_run(parse_lib_json(result.str()), "tt trace", config, g.seed));
  return 0;
}

struct TtExportOpts {
  std::string keys, mode = "literal", out, ciphertext_out;
  int bit = 0;
};

int tt_export(const TtExportOpts& o, const Globals& g) {
  json config = {{"keys", o.keys}, {"mode", o.mode}, {"bit", o.bit}};
  log_config(g, "tt export-circuit", config);
  Keyset ks;
  check(ttpa_keyset_from_json(read_file(o.keys).c_str(), ks.out()));
  Circuit c;
  LibString ct;
  check(ttpa_tt_export_circuit(ks.get(), o.bit, o.mode.c_str(), g.seed, c.out(), ct.out()));
  std::size_t size = 0, depth = 0;
  check(ttpa_circuit_metrics(c.get(), &size, &depth));
  LibString netlist;
  check(ttpa_circuit_to_json(c.get(), netlist.out()));
  json doc = parse_lib_json(netlist.str());
  doc["metrics"] = {{"size", size}, {"depth", depth}};
  write_output(o.out, with_run(std::move(doc), "tt export-circuit", config, g.seed));
  if (!o.ciphertext_out.empty()) {
    write_output(o.ciphertext_out,
                 with_run(parse_lib_json(ct.str()), "tt export-circuit", config, g.seed));
  }
  if (!o.out.empty() && o.out != "-") {
    std::cout << "size=" << size << " depth=" << depth << "\n";
  }
  return 0;
}

// ---- sanitize -------------------------------------------------------------

struct SanitizeOpts {
  std::string db, kind = "exact", composition = "advanced", out;
  std::vector<std::string> queries;
  double eps = 1.0, delta = 1e-6, alpha = 0.1;
  std::size_t rounds = 1;
};

// Each --queries entry is a netlist file, a file holding a JSON array of
// netlists, or an inline JSON array.
json collect_queries(const std::vector<std::string>& entries) {
  json batch = json::array();
  for (const auto& e : entries) {
    const bool inline_json = !e.empty() && e.front() == '[';
    json j = parse_input_json(inline_json ? e : read_file(e),
                              inline_json ? "inline queries" : e);
    if (j.is_array()) {
      for (auto& q : j) batch.push_back(std::move(q));
    } else {
      batch.push_back(std::move(j));
    }
  }
  return batch;
}

int sanitize_run(const SanitizeOpts& o, const Globals& g) {
  json config = sanitizer_options(o.kind, o.eps, o.delta, o.composition, o.rounds);
  config["alpha"] = o.alpha;
  config["db"] = o.db;
  config["queries"] = o.queries;
  log_config(g, "sanitize run", config);
  Database db;
  check(ttpa_database_from_text(read_file(o.db).c_str(), db.out()));
  const std::string queries = collect_queries(o.queries).dump();
  LibString result;
  check(ttpa_sanitize_run(db.get(), queries.c_str(), config.dump().c_str(), g.seed,
                          result.out()));
  write_output(o.out, with_run(parse_lib_json(result.str()), "sanitize run", config, g.seed));
  return 0;
}

// ---- attack ---------------------------------------------------------------

struct AttackOpts {
  std::size_t n = 10, kappa = 64, trials = 200, rounds = 1, threads = 1;
  double eps_fp = 0.05, a = 100, eps = 1.0, delta = 1e-6;
  double audit_eps = 1.0, audit_delta = 0.01;
  std::string sanitizer = "exact", composition = "advanced", tie = "one", mode = "compact";
  std::string out = "report.json", csv;
  bool quiet = false;
};

void print_summary(const std::string& report, const std::string& csv_path, bool quiet) {
  LibString table, csv;
  check(ttpa_report_summary(report.c_str(), table.out(), csv.out()));
  if (!quiet) std::cout << table.str();
  if (!csv_path.empty()) write_output(csv_path, csv.str());
}

int attack_run(const AttackOpts& o, const Globals& g) {
  json config = sanitizer_options(o.sanitizer, o.eps, o.delta, o.composition, o.rounds);
  config.erase("kind");
  config.update({{"n", o.n},
                 {"kappa", o.kappa},
                 {"eps_fp", o.eps_fp},
                 {"a", o.a},
                 {"sanitizer", o.sanitizer},
                 {"trials", o.trials},
                 {"seed", g.seed},
                 {"tie", o.tie},
                 {"mode", o.mode},
                 {"audit_epsilon", o.audit_eps},
                 {"audit_delta", o.audit_delta}});
  log_config(g, "attack run", config);
  LibString report;
  check(ttpa_attack_run(config.dump().c_str(), o.threads, report.out()));
  const std::string text =
      with_run(parse_lib_json(report.str()), "attack run", config, g.seed);
  write_output(o.out, text);
  print_summary(text, o.csv, o.quiet || o.out.empty() || o.out == "-");
  return 0;
}

struct SummaryOpts {
  std::string report, csv;
};

int attack_summary(const SummaryOpts& o, const Globals&) {
  print_summary(read_file(o.report), o.csv, false);
  return 0;
}

// ---- demo -----------------------------------------------------------------

struct LaplaceOpts {
  double eps = 1.0, delta = 1e-9;
  std::size_t k = 10000, d = 64, trials = 20, calibration_draws = 100000;
  std::string out;
};

int demo_laplace(const LaplaceOpts& o, const Globals& g) {
  json config = {{"epsilon", o.eps}, {"delta", o.delta},   {"k", o.k},
                 {"d", o.d},         {"trials", o.trials}, {"seed", g.seed},
                 {"calibration_draws", o.calibration_draws}};
  log_config(g, "demo laplace-tightness", config);
  LibString report;
  check(ttpa_demo_laplace_tightness(config.dump().c_str(), report.out()));
  write_output(o.out,
               with_run(parse_lib_json(report.str()), "demo laplace-tightness", config, g.seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ttpa: traitor tracing, fingerprinting codes and sanitizer attacks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ttpa_version()));

  Globals g;
  std::uint64_t seed_flag = 0;
  std::function<int()> action;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_flag, "Master seed (TTPA_SEED overrides)");
    sub->add_flag("-v,--verbose", g.verbose, "Log the resolved config to stderr");
  };
  auto bind = [&](CLI::App* sub, auto fn, auto& opts) {
    add_seed(sub);
    sub->callback([&action, &g, fn, &opts] { action = [fn, &opts, &g] { return fn(opts, g); }; });
  };

  // fpcode
  auto* fpcode = app.add_subcommand("fpcode", "Fingerprinting codes");
  fpcode->require_subcommand(1);

  FpGenOpts gen;
  auto* gen_cmd = fpcode->add_subcommand("gen", "Generate a codebook");
  gen_cmd->add_option("--n", gen.n, "Number of users")->required();
  gen_cmd->add_option("--eps-fp", gen.eps, "Tracing failure probability");
  gen_cmd->add_option("--a", gen.a, "Code length constant");
  gen_cmd->add_option("--coalition", gen.coalition, "Coalition for --view-out")->delimiter(',');
  gen_cmd->add_option("--out", gen.out, "Codebook output (default stdout)");
  gen_cmd->add_option("--view-out", gen.view_out, "Adversary view output");
  bind(gen_cmd, fpcode_gen, gen);

  FpTraceOpts ftrace;
  auto* ftrace_cmd = fpcode->add_subcommand("trace", "Trace a pirate word");
  ftrace_cmd->add_option("--codebook", ftrace.codebook, "Codebook JSON")->required();
  ftrace_cmd->add_option("--word", ftrace.word, "Pirate word, hex");
  ftrace_cmd->add_option("--word-file", ftrace.word_file, "File holding the hex word");
  ftrace_cmd->add_option("--out", ftrace.out, "Output (default stdout)");
  bind(ftrace_cmd, fpcode_trace, ftrace);

  FpBenchOpts bench;
  auto* bench_cmd = fpcode->add_subcommand("bench", "Adversary strategy benchmark");
  bench_cmd->add_option("--n", bench.n, "Number of users");
  bench_cmd->add_option("--eps-fp", bench.eps, "Tracing failure probability");
  bench_cmd->add_option("--a", bench.a, "Code length constant");
  bench_cmd->add_option("--trials", bench.trials, "Trials per strategy");
  bench_cmd->add_option("--coalition-size", bench.coalition_size,
                        "Coalition size (0 draws one per trial)");
  bench_cmd->add_option("--strategies", bench.strategies, "Adversary strategies")
      ->delimiter(',');
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_option("--out", bench.out, "Report output (default stdout)");
  bind(bench_cmd, fpcode_bench, bench);

  // tt
  auto* tt = app.add_subcommand("tt", "Traitor-tracing scheme");
  tt->require_subcommand(1);

  TtKeygenOpts keygen;
  auto* keygen_cmd = tt->add_subcommand("keygen", "Generate user keys");
  keygen_cmd->add_option("--kappa", keygen.kappa, "Key row length in bits");
  keygen_cmd->add_option("--n", keygen.n, "Number of users");
  keygen_cmd->add_option("--scheme", keygen.scheme, "local_prg or prf");
  keygen_cmd->add_option("--out", keygen.out, "Keyset output (default stdout)");
  bind(keygen_cmd, tt_keygen, keygen);

  TtTraceOpts ttrace;
  auto* ttrace_cmd = tt->add_subcommand("trace", "Trace a pirate decoder");
  ttrace_cmd->add_option("--keys", ttrace.keys, "Keyset JSON")->required();
  ttrace_cmd->add_option("--pirate", ttrace.pirate,
                         "honest:<i>, sanitizer:exact or sanitizer:laplace");
  ttrace_cmd->add_option("--tracer", ttrace.tracer, "fingerprint or linear");
  ttrace_cmd->add_option("--eps-fp", ttrace.eps_fp, "Tracing failure probability");
  ttrace_cmd->add_option("--a", ttrace.a, "Code length constant");
  ttrace_cmd->add_option("--s", ttrace.s, "Linear-scan samples per index (0 = default)");
  ttrace_cmd->add_option("--eps", ttrace.eps, "Sanitizer epsilon");
  ttrace_cmd->add_option("--delta", ttrace.delta, "Sanitizer delta");
  ttrace_cmd->add_option("--composition", ttrace.composition, "basic or advanced");
  ttrace_cmd->add_option("--rounds", ttrace.rounds, "Sanitizer repetitions (median)");
  ttrace_cmd->add_option("--tie", ttrace.tie, "Rounding of 1/2: one or zero");
  ttrace_cmd->add_option("--coalition", ttrace.coalition, "Coalition users")->delimiter(',');
  ttrace_cmd->add_option("--out", ttrace.out, "Output (default stdout)");
  bind(ttrace_cmd, tt_trace, ttrace);

  TtExportOpts texport;
  auto* export_cmd = tt->add_subcommand("export-circuit", "Export a decryption circuit");
  export_cmd->add_option("--keys", texport.keys, "Keyset JSON")->required();
  export_cmd->add_option("--bit", texport.bit, "Plaintext bit");
  export_cmd->add_option("--mode", texport.mode, "literal or compact");
  export_cmd->add_option("--out", texport.out, "Netlist output (default stdout)");
  export_cmd->add_option("--ciphertext-out", texport.ciphertext_out, "Ciphertext output");
  bind(export_cmd, tt_export, texport);

  // sanitize
  auto* sanitize = app.add_subcommand("sanitize", "Counting-query sanitizers");
  sanitize->require_subcommand(1);
  SanitizeOpts san;
  auto* san_cmd = sanitize->add_subcommand("run", "Answer a query batch");
  san_cmd->add_option("--db", san.db, "Database file")->required();
  san_cmd->add_option("--queries", san.queries, "Netlist files or an inline JSON array")
      ->required();
  san_cmd->add_option("--kind", san.kind, "exact or laplace");
  san_cmd->add_option("--eps", san.eps, "Epsilon");
  san_cmd->add_option("--delta", san.delta, "Delta");
  san_cmd->add_option("--composition", san.composition, "basic or advanced");
  san_cmd->add_option("--rounds", san.rounds, "Repetitions (median)");
  san_cmd->add_option("--alpha", san.alpha, "Accuracy target for the report");
  san_cmd->add_option("--out", san.out, "Output (default stdout)");
  bind(san_cmd, sanitize_run, san);

  // attack
  auto* attack = app.add_subcommand("attack", "Sanitizer-to-pirate reduction");
  attack->require_subcommand(1);
  AttackOpts atk;
  auto* atk_cmd = attack->add_subcommand("run", "Run both experiments and the audit");
  atk_cmd->add_option("--n", atk.n, "Number of users");
  atk_cmd->add_option("--kappa", atk.kappa, "Key row length in bits");
  atk_cmd->add_option("--eps-fp", atk.eps_fp, "Tracing failure probability");
  atk_cmd->add_option("--a", atk.a, "Code length constant");
  atk_cmd->add_option("--sanitizer", atk.sanitizer, "exact or laplace");
  atk_cmd->add_option("--eps", atk.eps, "Sanitizer epsilon");
  atk_cmd->add_option("--delta", atk.delta, "Sanitizer delta");
  atk_cmd->add_option("--composition", atk.composition, "basic or advanced");
  atk_cmd->add_option("--rounds", atk.rounds, "Sanitizer repetitions (median)");
  atk_cmd->add_option("--trials", atk.trials, "Trials per experiment");
  atk_cmd->add_option("--tie", atk.tie, "Rounding of 1/2: one or zero");
  atk_cmd->add_option("--mode", atk.mode, "Query circuits: compact or literal");
  atk_cmd->add_option("--audit-eps", atk.audit_eps, "Audited epsilon");
  atk_cmd->add_option("--audit-delta", atk.audit_delta, "Audited delta");
  atk_cmd->add_option("--threads", atk.threads, "Worker threads");
  atk_cmd->add_option("--out", atk.out, "Report output");
  atk_cmd->add_option("--csv", atk.csv, "Summary CSV output");
  atk_cmd->add_flag("--quiet", atk.quiet, "Skip the summary table");
  bind(atk_cmd, attack_run, atk);

  SummaryOpts summ;
  auto* summ_cmd = attack->add_subcommand("summary", "Summarize a saved report");
  summ_cmd->add_option("--report", summ.report, "Report JSON")->required();
  summ_cmd->add_option("--csv", summ.csv, "Summary CSV output");
  bind(summ_cmd, attack_summary, summ);

  // demo
  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  LaplaceOpts lap;
  auto* lap_cmd = demo->add_subcommand("laplace-tightness", "Laplace accuracy at two scales");
  lap_cmd->add_option("--eps", lap.eps, "Epsilon");
  lap_cmd->add_option("--delta", lap.delta, "Delta");
  lap_cmd->add_option("--k", lap.k, "Queries per batch");
  lap_cmd->add_option("--d", lap.d, "Row width");
  lap_cmd->add_option("--trials", lap.trials, "Batches per point");
  lap_cmd->add_option("--calibration-draws", lap.calibration_draws, "Calibration draws");
  lap_cmd->add_option("--out", lap.out, "Report output (default stdout)");
  bind(lap_cmd, demo_laplace, lap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    g.seed = resolve_seed(seed_flag);
    return action ? action() : kExitValidation;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
