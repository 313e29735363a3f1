// Copyright 2026 The spinpauli Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// spinpauli command-line driver.
//
//   verify   identity, product-form and lemma checks over an N range
//   syndrome stabilizer readout on a chosen input state
//   parity   Z-parity readout
//   prepare  code-state preparation from a JSON plan
//   compile  gate schedule for one stabilizer
//   bench    gate-count sweep as CSV
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "spinpauli/json_io.hpp"
#include "spinpauli/ms_compiler.hpp"
#include "spinpauli/protocol.hpp"
#include "spinpauli/verify.hpp"

namespace {

using namespace spinpauli;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1234567;
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

Range parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("invalid N range '" + text + "'");
    }
    return static_cast<std::size_t>(std::stoull(s));
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = number(text);
  } else {
    r.lo = number(text.substr(0, dots));
    r.hi = number(text.substr(dots + 2));
  }
  if (r.lo == 0 || r.hi < r.lo) throw UsageError("invalid N range '" + text + "'");
  return r;
}

/// Output sink honoring --out.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
  std::string n = "1..10";
  std::string axes;
  std::size_t samples = 50;
  std::uint64_t seed = kDefaultSeed;
  double tol = dense::kDefaultTolerance;
  bool json = false;
  std::string out;
};

/// Worst report over a batch; axes and seed point at the worst case.
dense::VerificationReport worst_of(const std::vector<dense::VerificationReport>& rs) {
  auto worst = rs.front();
  for (const auto& r : rs) {
    if (r.max_dev > worst.max_dev) worst = r;
  }
  bool pass = true;
  for (const auto& r : rs) pass = pass && r.pass;
  worst.pass = pass;
  return worst;
}

int cmd_verify(const VerifyConfig& cfg) {
  const auto range = parse_range(cfg.n);
  if (range.hi > dense::kMaxOperatorQubits) {
    throw UsageError("N = " + std::to_string(range.hi) + " exceeds the dense operator limit of " +
                     std::to_string(dense::kMaxOperatorQubits));
  }
  std::optional<DGenerator> fixed;
  if (!cfg.axes.empty()) {
    fixed = DGenerator::parse(cfg.axes);
    if (fixed->has_identity()) throw UsageError("--axes must not contain identities");
    if (range.lo != range.hi || range.lo != fixed->size()) throw UsageError("--axes length must equal --n");
  }
  if (cfg.samples == 0) throw UsageError("--samples must be positive");
  const std::size_t small = std::min<std::size_t>(cfg.samples, 10);

  std::vector<dense::VerificationReport> reports;
  for (std::size_t n = range.lo; n <= range.hi; ++n) {
    auto generator_for = [&](std::uint64_t s) {
      if (fixed) return *fixed;
      std::mt19937_64 rng(s);
      return dense::random_generator(n, rng);
    };
    std::vector<dense::VerificationReport> batch;
    for (std::size_t k = 0; k < (fixed ? 1 : cfg.samples); ++k) {
      const auto s = shot_seed(cfg.seed, n * 1000 + k);
      batch.push_back(dense::verify_main_identity(generator_for(s), cfg.tol, s));
    }
    reports.push_back(worst_of(batch));
    if (n >= 2) {
      batch.clear();
      for (std::size_t k = 0; k < (fixed ? 1 : small); ++k) {
        const auto s = shot_seed(cfg.seed, 100000 + n * 1000 + k);
        batch.push_back(dense::verify_product_form(generator_for(s), cfg.tol, s));
      }
      reports.push_back(worst_of(batch));
    }
    if (n + 2 <= dense::kMaxOperatorQubits) {
      batch.clear();
      for (std::size_t k = 0; k < small; ++k) {
        const auto s = shot_seed(cfg.seed, 200000 + n * 1000 + k);
        std::mt19937_64 rng(s);
        const auto d = generator_for(s);
        const auto ab = dense::random_involutions(rng);
        batch.push_back(n % 2 == 0 ? dense::verify_lemma_even_with(d.axes(), ab, cfg.tol, s)
                                   : dense::verify_lemma_odd_with(d.axes(), ab, cfg.tol, s));
      }
      reports.push_back(worst_of(batch));
    }
  }

  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  Output out(cfg.out);
  if (cfg.json) {
    json reps = json::array();
    for (const auto& r : reports) reps.push_back(to_json(r));
    out.stream() << json{{"command", "verify"}, {"seed", cfg.seed}, {"tol", cfg.tol},
                         {"reports", reps},     {"pass", pass}}.dump(2)
                 << "\n";
  } else {
    auto& os = out.stream();
    os << "check           N  branch  max_dev    result  axes\n";
    for (const auto& r : reports) {
      std::string check = r.check;
      check.resize(14, ' ');
      std::string n = std::to_string(r.n);
      n.insert(0, 3 - std::min<std::size_t>(3, n.size()), ' ');
      os << check << n << "  " << (r.branch == "even" ? "even  " : "odd   ") << "  " << fmt_double(r.max_dev) << "  "
         << (r.pass ? "PASS  " : "FAIL  ") << r.axes << "\n";
    }
    os << (pass ? "all checks passed" : "verification FAILED") << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// Input states.

struct StateSpec {
  std::string text;

  bool is_file() const { return text != "down" && text != "ghz+" && text.find_first_not_of("01du") != std::string::npos; }

  dense::StateVector dense_state(std::size_t n) const {
    if (text == "down") return dense::StateVector(n);
    if (text == "ghz+") return dense::StateVector::ghz(n);
    if (!is_file()) {
      if (text.size() != n) throw UsageError("state bitstring length does not match the stabilizer");
      return dense::StateVector::basis(text);
    }
    std::ifstream in(text);
    if (!in) throw UsageError("cannot read state '" + text + "': not down, ghz+, a bitstring or a file");
    std::vector<dense::Complex> amps;
    double re = 0, im = 0;
    while (in >> re >> im) amps.emplace_back(re, im);
    if (amps.size() != (std::size_t{1} << n)) throw UsageError("amplitude file must hold 2^N lines of 're im'");
    return dense::StateVector::from_amplitudes(n, std::move(amps));
  }

  clifford::StabilizerTableau tableau_state(std::size_t n) const {
    clifford::StabilizerTableau t(n);
    if (text == "down") return t;
    if (text == "ghz+") {
      // H|↓⟩ = (|↑⟩ − |↓⟩)/√2; σz fixes the sign, the CNOTs spread it.
      t.h(0);
      t.pauli(PauliString::single(n, 0, PauliAxis::Z));
      for (std::size_t q = 1; q < n; ++q) t.cnot(0, q);
      return t;
    }
    if (is_file()) throw UsageError("amplitude files are only supported on the dense backend");
    if (text.size() != n) throw UsageError("state bitstring length does not match the stabilizer");
    for (std::size_t q = 0; q < n; ++q) {
      if (text[q] == '1' || text[q] == 'u') t.pauli(PauliString::single(n, q, PauliAxis::X));
    }
    return t;
  }
};

// ---------------------------------------------------------------------------
// syndrome / parity

struct RunConfig {
  std::string stab;
  std::string n;
  std::string state = "down";
  std::string backend = "dense";
  std::uint64_t seed = kDefaultSeed;
  std::size_t shots = 1;
  bool json = false;
  std::string out;
};

json backend_result(const std::string& name, const PauliString& stab, const StateSpec& spec, const RunConfig& cfg) {
  const std::size_t n = stab.size();
  std::optional<protocol::SyndromeResult> first;
  std::size_t plus = 0;
  if (name == "dense") {
    if (n + 1 > dense::kMaxStateQubits) {
      throw UsageError("dense backend supports at most " + std::to_string(dense::kMaxStateQubits - 1) +
                       " data qubits; use --backend tableau");
    }
    const auto state = spec.dense_state(n);
    for (std::size_t s = 0; s < cfg.shots; ++s) {
      const auto r = protocol::run_syndrome(state, stab, shot_seed(cfg.seed, s)).result;
      if (!first) first = r;
      plus += r.outcome == 1;
    }
  } else {
    const auto state = spec.tableau_state(n);
    for (std::size_t s = 0; s < cfg.shots; ++s) {
      const auto r = protocol::run_syndrome(state, stab, shot_seed(cfg.seed, s)).result;
      if (!first) first = r;
      plus += r.outcome == 1;
    }
  }
  json j = to_json(*first);
  j["backend"] = name;
  j["plus_count"] = plus;
  j["minus_count"] = cfg.shots - plus;
  return j;
}

std::vector<std::string> backends_of(const std::string& b) {
  if (b == "dense" || b == "tableau") return {b};
  if (b == "both") return {"dense", "tableau"};
  throw UsageError("--backend must be dense, tableau or both");
}

int run_readout(const std::string& command, const PauliString& stab, const RunConfig& cfg) {
  if (cfg.shots == 0) throw UsageError("--shots must be positive");
  const StateSpec spec{cfg.state};
  json results = json::array();
  for (const auto& b : backends_of(cfg.backend)) results.push_back(backend_result(b, stab, spec, cfg));
  bool agree = true;
  for (const auto& r : results) {
    agree = agree && r["outcome"] == results[0]["outcome"] && r["plus_count"] == results[0]["plus_count"];
  }
  Output out(cfg.out);
  if (cfg.json) {
    json j = {{"command", command}, {"stabilizer", stab.str()}, {"state", cfg.state}, {"seed", cfg.seed},
              {"shots", cfg.shots}, {"results", results},      {"agree", agree}};
    if (command == "parity") j["n"] = stab.size();
    out.stream() << j.dump(2) << "\n";
  } else {
    auto& os = out.stream();
    os << command << " " << (command == "parity" ? "N=" + std::to_string(stab.size()) : stab.str())
       << "  state=" << cfg.state << "  seed=" << cfg.seed << "\n";
    for (const auto& r : results) {
      os << "  " << r["backend"].get<std::string>() << ": outcome " << (r["outcome"].get<int>() == 1 ? "+1" : "-1")
         << "  ancilla " << r["ancilla"].get<std::string>() << "  collective " << r["collective_ops"].get<int>()
         << "  total ops " << r["total_ops"].get<int>();
      if (!r["fidelity"].is_null()) os << "  fidelity " << r["fidelity"].get<double>();
      if (cfg.shots > 1) os << "  +1:" << r["plus_count"].get<int>() << " -1:" << r["minus_count"].get<int>();
      os << "\n";
    }
    if (results.size() > 1) os << (agree ? "backends agree" : "backends DISAGREE") << "\n";
  }
  return agree ? kExitPass : kExitFail;
}

int cmd_syndrome(const RunConfig& cfg) { return run_readout("syndrome", PauliString::parse(cfg.stab), cfg); }

int cmd_parity(const RunConfig& cfg) {
  const auto r = parse_range(cfg.n);
  if (r.lo != r.hi) throw UsageError("parity takes a single N");
  return run_readout("parity", protocol::parity_observable(r.lo), cfg);
}

// ---------------------------------------------------------------------------
// prepare

struct PrepareConfig {
  std::string plan;
  std::string backend = "tableau";
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  std::string out;
};

int cmd_prepare(const PrepareConfig& cfg) {
  std::ifstream in(cfg.plan);
  if (!in) throw UsageError("cannot read plan '" + cfg.plan + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("plan is not valid JSON: ") + e.what());
  }
  const auto plan = plan_from_json(doc);
  json results = json::array();
  for (const auto& b : backends_of(cfg.backend)) {
    protocol::PrepRecord rec;
    if (b == "dense") {
      if (plan.n + 1 > dense::kMaxStateQubits) throw UsageError("plan too large for the dense backend");
      rec = protocol::prepare_code_state<DenseSimulator>(plan, cfg.seed).second;
    } else {
      rec = protocol::prepare_code_state<TableauSimulator>(plan, cfg.seed).second;
    }
    json j = to_json(rec);
    j["backend"] = b;
    results.push_back(j);
  }
  bool pass = true;
  for (const auto& r : results) pass = pass && r["verified"].get<bool>() && r["syndromes"] == results[0]["syndromes"];
  Output out(cfg.out);
  if (cfg.json) {
    out.stream() << json{{"command", "prepare"}, {"plan", to_json(plan)}, {"seed", cfg.seed},
                         {"results", results},   {"pass", pass}}.dump(2)
                 << "\n";
  } else {
    for (const auto& r : results) {
      out.stream() << r["backend"].get<std::string>() << ": syndrome " << r["syndrome_key"].get<std::string>()
                   << "  correction " << (r["correction"].is_null() ? "none" : r["correction"].get<std::string>())
                   << "  verified " << (r["verified"].get<bool>() ? "yes" : "NO") << "\n";
    }
  }
  return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// compile / bench

struct CompileConfig {
  std::string stab;
  std::string strategy = "conjugated";
  bool json = false;
  std::string out;
};

compiler::Strategy strategy_of(const std::string& s) {
  const auto st = compiler::strategy_from_string(s);
  if (!st) throw UsageError("unknown strategy '" + s + "'");
  return *st;
}

int cmd_compile(const CompileConfig& cfg) {
  const auto stab = PauliString::parse(cfg.stab);
  const auto g = compiler::compile(stab, strategy_of(cfg.strategy));
  Output out(cfg.out);
  if (cfg.json) {
    const auto report = compiler::cost_compare({stab}, {g.strategy}).front();
    out.stream() << json{{"command", "compile"}, {"schedule", to_json(g)}, {"report", to_json(report)}}.dump(2)
                 << "\n";
  } else {
    out.stream() << compiler::render(g);
  }
  return kExitPass;
}

struct BenchConfig {
  bool parity = false;
  std::vector<std::string> stabs;
  std::string n = "2..64";
  std::string strategy = "conjugated";
  bool json = false;
  std::string out;
};

int cmd_bench(const BenchConfig& cfg) {
  std::vector<PauliString> stabs;
  if (cfg.parity) {
    const auto r = parse_range(cfg.n);
    for (std::size_t n = r.lo; n <= r.hi; ++n) stabs.push_back(protocol::parity_observable(n));
  }
  for (const auto& s : cfg.stabs) stabs.push_back(PauliString::parse(s));
  if (stabs.empty()) throw UsageError("bench needs --parity or at least one --stab");
  const auto st = strategy_of(cfg.strategy);
  if (st == compiler::Strategy::Baseline) throw UsageError("bench compares a spin-spin strategy against the baseline");
  const auto reports = compiler::cost_compare(stabs, {st});
  Output out(cfg.out);
  if (cfg.json) {
    json reps = json::array();
    for (const auto& r : reports) reps.push_back(to_json(r));
    out.stream() << json{{"command", "bench"}, {"strategy", cfg.strategy}, {"reports", reps}}.dump(2) << "\n";
  } else {
    auto& os = out.stream();
    os << "n,weight,stabilizer,strategy,spin_spin_collective,spin_spin_single_qubit,spin_spin_depth,"
          "baseline_two_qubit,baseline_depth,classical_parity_depth\n";
    for (const auto& r : reports) {
      os << r.n << "," << r.weight << "," << r.stabilizer << "," << compiler::to_string(r.strategy) << ","
         << r.cost.collective_ops << "," << r.cost.single_qubit_ops << "," << r.cost.depth << ","
         << r.baseline_two_qubit << "," << r.baseline_depth << "," << r.classical_parity_depth << "\n";
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinpauli: Pauli products from collective spin-spin gates"};
  app.require_subcommand(1);

  VerifyConfig vc;
  auto* verify = app.add_subcommand("verify", "Check the closed form, product form and lemmas over an N range");
  verify->add_option("--n", vc.n, "N or N range a..b")->capture_default_str();
  verify->add_option("--axes", vc.axes, "Fixed axis string instead of random samples");
  verify->add_option("--samples", vc.samples, "Random axis strings per N")->capture_default_str();
  verify->add_option("--seed", vc.seed, "RNG seed")->capture_default_str();
  verify->add_option("--tol", vc.tol, "Tolerance")->capture_default_str();
  verify->add_flag("--json", vc.json, "Emit JSON");
  verify->add_option("--out", vc.out, "Write output to a file");

  RunConfig sc;
  auto* syndrome = app.add_subcommand("syndrome", "Measure a stabilizer through the ancilla protocol");
  syndrome->add_option("--stab", sc.stab, "Stabilizer, e.g. XIZ")->required();
  syndrome->add_option("--state", sc.state, "down, ghz+, a bitstring, or an amplitude file")->capture_default_str();
  syndrome->add_option("--backend", sc.backend, "dense, tableau or both")->capture_default_str();
  syndrome->add_option("--seed", sc.seed, "RNG seed")->capture_default_str();
  syndrome->add_option("--shots", sc.shots, "Independent repetitions")->capture_default_str();
  syndrome->add_flag("--json", sc.json, "Emit JSON");
  syndrome->add_option("--out", sc.out, "Write output to a file");

  RunConfig pc;
  auto* parity = app.add_subcommand("parity", "Measure the Z parity of N qubits");
  parity->add_option("--n", pc.n, "Number of qubits")->required();
  parity->add_option("--state", pc.state, "down, ghz+, a bitstring, or an amplitude file")->capture_default_str();
  parity->add_option("--backend", pc.backend, "dense, tableau or both")->capture_default_str();
  parity->add_option("--seed", pc.seed, "RNG seed")->capture_default_str();
  parity->add_option("--shots", pc.shots, "Independent repetitions")->capture_default_str();
  parity->add_flag("--json", pc.json, "Emit JSON");
  parity->add_option("--out", pc.out, "Write output to a file");

  PrepareConfig prc;
  auto* prepare = app.add_subcommand("prepare", "Prepare a code state from a JSON plan");
  prepare->add_option("--plan", prc.plan, "Plan file")->required();
  prepare->add_option("--backend", prc.backend, "dense, tableau or both")->capture_default_str();
  prepare->add_option("--seed", prc.seed, "RNG seed")->capture_default_str();
  prepare->add_flag("--json", prc.json, "Emit JSON");
  prepare->add_option("--out", prc.out, "Write output to a file");

  CompileConfig cc;
  auto* compile = app.add_subcommand("compile", "Compile a stabilizer readout into a gate schedule");
  compile->add_option("--stab", cc.stab, "Stabilizer")->required();
  compile->add_option("--strategy", cc.strategy, "conjugated, refocused, css, addressed or baseline")
      ->capture_default_str();
  compile->add_flag("--json", cc.json, "Emit JSON instead of the schedule text");
  compile->add_option("--out", cc.out, "Write output to a file");

  BenchConfig bc;
  auto* bench = app.add_subcommand("bench", "Sweep gate counts against the CNOT baseline (CSV)");
  bench->add_flag("--parity", bc.parity, "Sweep Z parity over --n");
  bench->add_option("--stab", bc.stabs, "Stabilizers to include");
  bench->add_option("--n", bc.n, "N range for --parity")->capture_default_str();
  bench->add_option("--strategy", bc.strategy, "Spin-spin strategy to compare")->capture_default_str();
  bench->add_flag("--json", bc.json, "Emit JSON instead of CSV");
  bench->add_option("--out", bc.out, "Write output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(vc);
    if (*syndrome) return cmd_syndrome(sc);
    if (*parity) return cmd_parity(pc);
    if (*prepare) return cmd_prepare(prc);
    if (*compile) return cmd_compile(cc);
    if (*bench) return cmd_bench(bc);
  } catch (const std::invalid_argument& e) {
    // Bad Pauli text, dense limits, incompatible strategies, invalid plans.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
