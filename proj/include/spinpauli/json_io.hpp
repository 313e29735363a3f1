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

#pragma once

// JSON forms of reports and plans. Object keys are emitted in sorted order, so
// dumps are byte-stable.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinpauli/ms_compiler.hpp"
#include "spinpauli/protocol.hpp"
#include "spinpauli/simulator.hpp"
#include "spinpauli/verify.hpp"

namespace spinpauli {

inline nlohmann::json to_json(const dense::VerificationReport& r) {
  return {{"check", r.check}, {"n", r.n},     {"axes", r.axes}, {"branch", r.branch},
          {"max_dev", r.max_dev}, {"tol", r.tol}, {"seed", r.seed}, {"pass", r.pass}};
}

inline nlohmann::json to_json(const GateCounts& c) {
  return {{"collective", c.collective},
          {"single_qubit", c.single_qubit},
          {"two_qubit", c.two_qubit},
          {"pauli", c.pauli},
          {"measurements", c.measurements}};
}

inline nlohmann::json to_json(const protocol::SyndromeResult& r) {
  nlohmann::json j = {{"outcome", r.outcome},
                      {"ancilla", r.ancilla_up ? "up" : "down"},
                      {"counts", to_json(r.counts)},
                      {"collective_ops", r.collective_ops},
                      {"total_ops", r.total_ops},
                      {"residue_class", r.residue_class}};
  j["fidelity"] = r.fidelity ? nlohmann::json(*r.fidelity) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const CrossCheckReport& r) {
  return {{"n", r.n},
          {"seed", r.seed},
          {"dense_outcomes", r.dense_outcomes},
          {"tableau_outcomes", r.tableau_outcomes},
          {"stabilizer_residual", r.stabilizer_residual},
          {"pass", r.pass}};
}

inline nlohmann::json to_json(const protocol::PrepRecord& r) {
  nlohmann::json j = {{"syndromes", r.syndromes},
                      {"syndrome_key", r.syndrome_key},
                      {"verification", r.verification},
                      {"verified", r.verified()}};
  j["correction"] = r.correction ? nlohmann::json(r.correction->str()) : nlohmann::json(nullptr);
  j["logical_outcome"] = r.logical_outcome ? nlohmann::json(*r.logical_outcome) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const compiler::CostReport& r) {
  return {{"strategy", compiler::to_string(r.strategy)},
          {"stabilizer", r.stabilizer},
          {"n", r.n},
          {"weight", r.weight},
          {"cost", compiler::cost_json(r.cost)},
          {"baseline_two_qubit", r.baseline_two_qubit},
          {"baseline_depth", r.baseline_depth},
          {"classical_parity_depth", r.classical_parity_depth}};
}

inline nlohmann::json to_json(const compiler::GateSchedule& g) {
  std::vector<std::string> lines;
  for (const auto& op : g.ops) lines.push_back(compiler::render_op(op));
  return {{"strategy", compiler::to_string(g.strategy)},
          {"stabilizer", g.stabilizer.str()},
          {"qubits", g.num_qubits},
          {"operations", lines},
          {"cost", compiler::cost_json(g.cost())}};
}

inline nlohmann::json to_json(const protocol::CodePrepPlan& p) {
  std::vector<std::string> gens;
  for (const auto& g : p.generators) gens.push_back(g.str());
  nlohmann::json corr = nlohmann::json::object();
  for (const auto& [k, v] : p.corrections) corr[k] = v.str();
  nlohmann::json j = {{"n", p.n}, {"generators", gens}, {"corrections", corr}};
  if (p.logical_z) j["logical_z"] = p.logical_z->str();
  return j;
}

/// {generators: [pauli], logical_z?: pauli, corrections?: {bits: pauli}, n?: int}.
inline protocol::CodePrepPlan plan_from_json(const nlohmann::json& j) {
  using protocol::PlanError;
  if (!j.is_object()) throw PlanError("plan must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "generators" && key != "logical_z" && key != "corrections" && key != "n") {
      throw PlanError("unknown plan key '" + key + "'");
    }
  }
  std::vector<PauliString> gens;
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) throw PlanError("generators must be an array");
    for (const auto& g : j["generators"]) {
      if (!g.is_string()) throw PlanError("generators must be Pauli strings");
      gens.push_back(PauliString::parse(g.get<std::string>()));
    }
  }
  std::optional<PauliString> logical;
  if (j.contains("logical_z") && !j["logical_z"].is_null()) {
    if (!j["logical_z"].is_string()) throw PlanError("logical_z must be a Pauli string");
    logical = PauliString::parse(j["logical_z"].get<std::string>());
  }
  std::map<std::string, PauliString> corr;
  if (j.contains("corrections")) {
    if (!j["corrections"].is_object()) throw PlanError("corrections must be an object");
    for (const auto& [k, v] : j["corrections"].items()) {
      if (!v.is_string()) throw PlanError("correction for '" + k + "' must be a Pauli string");
      corr.emplace(k, PauliString::parse(v.get<std::string>()));
    }
  }
  std::size_t n = 0;
  if (j.contains("n")) {
    if (!j["n"].is_number_unsigned()) throw PlanError("n must be a positive integer");
    n = j["n"].get<std::size_t>();
  }
  return protocol::CodePrepPlan::make(std::move(gens), std::move(logical), std::move(corr), n);
}

}  // namespace spinpauli
