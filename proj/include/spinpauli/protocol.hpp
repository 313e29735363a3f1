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

// Ancilla-based stabilizer readout with one collective spin-spin gate (plus a
// linear term when the interaction has odd weight), parity measurement, and
// code-state preparation by successive syndrome readout.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinpauli/circuit.hpp"
#include "spinpauli/clifford.hpp"
#include "spinpauli/dense.hpp"
#include "spinpauli/pauli.hpp"
#include "spinpauli/simulator.hpp"

namespace spinpauli::protocol {

class ProtocolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AncillaRotation {
  PauliAxis axis;
  bool adjoint;
  friend bool operator==(const AncillaRotation&, const AncillaRotation&) = default;
};

/// Final ancilla rotation indexed by (N'+1) mod 4, where N' counts the
/// non-identity positions of the stabilizer. With the ancilla prepared in |↑⟩,
/// each entry sends the +1 branch to |↑⟩ and the −1 branch to |↓⟩.
inline constexpr std::array<AncillaRotation, 4> kFinalRotation = {{
    {PauliAxis::X, true},
    {PauliAxis::X, false},
    {PauliAxis::X, false},
    {PauliAxis::X, true},
}};

struct SyndromeCircuit {
  PauliString stabilizer;
  std::size_t ancilla;
  /// Stabilizer axes with identities kept (they contribute nothing), z on the ancilla.
  DGenerator generator;
  std::vector<std::size_t> participants;
  /// (N'+1) mod 4.
  std::size_t residue_class;
  AncillaRotation final_rotation;
  /// Ancilla preparation, R_y, U, optional linear term, final rotation, measurement.
  Circuit operations;

  std::size_t num_qubits() const { return ancilla + 1; }
  std::size_t collective_ops() const { return count_gates(operations).collective; }
  /// Collective plus ancilla rotations; preparation and measurement excluded.
  std::size_t total_ops() const {
    const auto c = count_gates(operations);
    return c.collective + c.single_qubit;
  }
  /// The operations that act between preparation and measurement.
  Circuit unitary_part() const { return Circuit(operations.begin() + 1, operations.end() - 1); }
};

inline SyndromeCircuit build_syndrome_circuit(const PauliString& stabilizer) {
  if (stabilizer.phase_exp() != 0) {
    throw ProtocolError("stabilizer must have phase_exp 0, got '" + stabilizer.str() + "'");
  }
  if (stabilizer.weight() == 0) throw ProtocolError("stabilizer is all identity");
  const std::size_t n = stabilizer.size();
  std::vector<PauliAxis> axes(stabilizer.axes().begin(), stabilizer.axes().end());
  axes.push_back(PauliAxis::Z);
  DGenerator generator(axes);
  const std::size_t residue = (stabilizer.weight() + 1) % 4;
  const auto final = kFinalRotation[residue];

  Circuit ops;
  ops.emplace_back(PauliGate{PauliString::single(n + 1, n, PauliAxis::X)});
  ops.emplace_back(QuarterTurn{n, PauliAxis::Y, false});
  ops.emplace_back(SpinSpinGate{generator});
  if ((stabilizer.weight() + 1) % 2 == 1) ops.emplace_back(LinearGate{generator});
  ops.emplace_back(QuarterTurn{n, final.axis, final.adjoint});
  ops.emplace_back(Measure{PauliString::single(n + 1, n, PauliAxis::Z)});
  return {stabilizer, n, std::move(generator), stabilizer.support(), residue, final, std::move(ops)};
}

/// Unitary between ancilla preparation and measurement, on N+1 qubits.
inline dense::DenseOperator syndrome_unitary(const SyndromeCircuit& c) {
  return circuit_unitary(c.num_qubits(), c.unitary_part());
}

/// Runs the circuit on a simulator whose last qubit is a fresh |↓⟩ ancilla.
/// Returns the outcome; the ancilla is left in the measured basis state.
template <Simulator S>
int measure_syndrome(S& sim, const SyndromeCircuit& c) {
  if (sim.num_qubits() != c.num_qubits()) {
    throw ProtocolError("register has " + std::to_string(sim.num_qubits()) + " qubits, circuit needs " +
                        std::to_string(c.num_qubits()));
  }
  for (std::size_t i = 0; i + 1 < c.operations.size(); ++i) sim.apply(c.operations[i]);
  return sim.measure(std::get<Measure>(c.operations.back()).observable);
}

/// Returns the ancilla to |↓⟩ after a readout.
template <Simulator S>
void reset_ancilla(S& sim, const SyndromeCircuit& c, int outcome) {
  if (outcome == 1) sim.apply(PauliGate{PauliString::single(c.num_qubits(), c.ancilla, PauliAxis::X)});
}

struct SyndromeResult {
  int outcome = 0;
  /// Ancilla basis state after measurement: |↑⟩ iff outcome is +1.
  bool ancilla_up = false;
  /// |⟨input|post⟩|² on the data register (dense backend only).
  std::optional<double> fidelity;
  GateCounts counts;
  std::size_t collective_ops = 0;
  std::size_t total_ops = 0;
  std::size_t residue_class = 0;
};

inline SyndromeResult make_result(const SyndromeCircuit& c, int outcome) {
  SyndromeResult r;
  r.outcome = outcome;
  r.ancilla_up = outcome == 1;
  r.counts = count_gates(c.operations);
  r.collective_ops = c.collective_ops();
  r.total_ops = c.total_ops();
  r.residue_class = c.residue_class;
  return r;
}

struct DenseSyndromeRun {
  SyndromeResult result;
  dense::StateVector post_state;
};

struct TableauSyndromeRun {
  SyndromeResult result;
  /// Data register plus the measured ancilla as the last qubit.
  clifford::StabilizerTableau post_state;
};

inline DenseSyndromeRun run_syndrome(const dense::StateVector& state, const PauliString& stabilizer,
                                     std::uint64_t seed) {
  if (state.num_qubits() != stabilizer.size()) {
    throw dense::DimensionError("state has " + std::to_string(state.num_qubits()) + " qubits, stabilizer has " +
                                std::to_string(stabilizer.size()));
  }
  const auto c = build_syndrome_circuit(stabilizer);
  DenseSimulator sim(state.tensor(dense::StateVector(1)), seed);
  const int outcome = measure_syndrome(sim, c);
  auto post = sim.state().drop_last_qubit(outcome == 1);
  auto result = make_result(c, outcome);
  result.fidelity = state.fidelity(post);
  return {std::move(result), std::move(post)};
}

inline TableauSyndromeRun run_syndrome(const clifford::StabilizerTableau& state, const PauliString& stabilizer,
                                       std::uint64_t seed) {
  if (state.num_qubits() != stabilizer.size()) {
    throw clifford::TableauError("state has " + std::to_string(state.num_qubits()) + " qubits, stabilizer has " +
                                 std::to_string(stabilizer.size()));
  }
  const auto c = build_syndrome_circuit(stabilizer);
  TableauSimulator sim(state.with_appended_qubit(), seed);
  const int outcome = measure_syndrome(sim, c);
  return {make_result(c, outcome), sim.tableau()};
}

/// Z^{⊗n}: the parity (−1)^{#↓} of a computational basis state.
inline PauliString parity_observable(std::size_t n) {
  if (n == 0) throw ProtocolError("parity needs n >= 1");
  return PauliString(std::vector<PauliAxis>(n, PauliAxis::Z));
}

inline DenseSyndromeRun run_parity(std::size_t n, const dense::StateVector& state, std::uint64_t seed) {
  return run_syndrome(state, parity_observable(n), seed);
}

inline TableauSyndromeRun run_parity(std::size_t n, const clifford::StabilizerTableau& state, std::uint64_t seed) {
  return run_syndrome(state, parity_observable(n), seed);
}

// ---------------------------------------------------------------------------
// Code-state preparation.

class PlanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rank of a set of Pauli strings over GF(2), phases ignored.
inline std::size_t symplectic_rank(const std::vector<PauliString>& ps) {
  if (ps.empty()) return 0;
  const std::size_t n = ps.front().size();
  std::vector<std::vector<bool>> rows;
  for (const auto& p : ps) {
    std::vector<bool> r(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      r[q] = x_bit(p[q]);
      r[n + q] = z_bit(p[q]);
    }
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][col]) {
        for (std::size_t k = 0; k < 2 * n; ++k) rows[r][k] = rows[r][k] != rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

/// Generators are measured in list order. Syndrome keys hold one character per
/// generator: '0' for outcome +1, '1' for −1.
struct CodePrepPlan {
  std::size_t n = 0;
  std::vector<PauliString> generators;
  std::optional<PauliString> logical_z;
  std::map<std::string, PauliString> corrections;

  static CodePrepPlan make(std::vector<PauliString> generators, std::optional<PauliString> logical_z = std::nullopt,
                           std::map<std::string, PauliString> corrections = {}, std::size_t n = 0) {
    CodePrepPlan plan{n, std::move(generators), std::move(logical_z), std::move(corrections)};
    if (plan.n == 0) {
      if (!plan.generators.empty()) {
        plan.n = plan.generators.front().size();
      } else if (plan.logical_z) {
        plan.n = plan.logical_z->size();
      }
    }
    plan.validate();
    return plan;
  }

  void validate() const {
    if (n == 0) throw PlanError("plan needs a qubit count, a generator, or a logical operator");
    auto check_length = [this](const PauliString& p, const std::string& what) {
      if (p.size() != n) {
        throw PlanError(what + " '" + p.str() + "' has length " + std::to_string(p.size()) + ", expected " +
                        std::to_string(n));
      }
    };
    for (const auto& g : generators) {
      check_length(g, "generator");
      if (g.phase_exp() != 0) throw PlanError("generator '" + g.str() + "' must have phase_exp 0");
      if (g.weight() == 0) throw PlanError("generator is all identity");
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
      for (std::size_t j = i + 1; j < generators.size(); ++j) {
        if (!commutes(generators[i], generators[j])) {
          throw PlanError("generators '" + generators[i].str() + "' and '" + generators[j].str() + "' anticommute");
        }
      }
    }
    if (symplectic_rank(generators) != generators.size()) throw PlanError("generators are not independent");
    if (logical_z) {
      check_length(*logical_z, "logical_z");
      if (logical_z->phase_exp() != 0) throw PlanError("logical_z must have phase_exp 0");
      if (logical_z->weight() == 0) throw PlanError("logical_z is all identity");
      for (const auto& g : generators) {
        if (!commutes(g, *logical_z)) throw PlanError("logical_z anticommutes with '" + g.str() + "'");
      }
      auto all = generators;
      all.push_back(*logical_z);
      if (symplectic_rank(all) != all.size()) throw PlanError("logical_z lies in the stabilizer group");
    }
    for (const auto& [key, fix] : corrections) {
      if (key.size() != generators.size()) {
        throw PlanError("syndrome key '" + key + "' must have " + std::to_string(generators.size()) + " bits");
      }
      check_length(fix, "correction");
      for (std::size_t j = 0; j < key.size(); ++j) {
        if (key[j] != '0' && key[j] != '1') throw PlanError("syndrome key '" + key + "' must be a bitstring");
        // The correction must flip exactly the generators that reported −1.
        if (commutes(fix, generators[j]) != (key[j] == '0')) {
          throw PlanError("correction '" + fix.str() + "' for syndrome '" + key + "' does not restore generator '" +
                          generators[j].str() + "'");
        }
      }
    }
  }
};

struct PrepRecord {
  std::vector<int> syndromes;
  std::string syndrome_key;
  std::optional<PauliString> correction;
  std::optional<int> logical_outcome;
  /// Re-measurement of every generator after the correction.
  std::vector<int> verification;

  bool verified() const {
    for (int v : verification) {
      if (v != 1) return false;
    }
    return true;
  }
};

inline PauliString extend_with_identity(const PauliString& p) {
  std::vector<PauliAxis> axes(p.axes().begin(), p.axes().end());
  axes.push_back(PauliAxis::I);
  return PauliString(std::move(axes), p.phase_exp());
}

/// Runs the preparation loop on a simulator holding N data qubits and a fresh
/// |↓⟩ ancilla. The ancilla is back in |↓⟩ on return.
template <Simulator S>
PrepRecord prepare_code_state(S& sim, const CodePrepPlan& plan) {
  if (sim.num_qubits() != plan.n + 1) throw PlanError("register must hold the data qubits plus one ancilla");
  std::vector<std::size_t> data(plan.n);
  for (std::size_t q = 0; q < plan.n; ++q) data[q] = q;
  sim.apply(CollectiveRotation{PauliAxis::Y, data, false});

  auto readout = [&sim](const PauliString& p) {
    const auto c = build_syndrome_circuit(p);
    const int outcome = measure_syndrome(sim, c);
    reset_ancilla(sim, c, outcome);
    return outcome;
  };

  PrepRecord rec;
  for (const auto& g : plan.generators) {
    const int s = readout(g);
    rec.syndromes.push_back(s);
    rec.syndrome_key.push_back(s == 1 ? '0' : '1');
  }
  const auto it = plan.corrections.find(rec.syndrome_key);
  if (it != plan.corrections.end()) {
    rec.correction = it->second;
  } else if (rec.syndrome_key.find('1') != std::string::npos) {
    throw PlanError("no correction for observed syndrome '" + rec.syndrome_key + "'");
  }
  if (rec.correction) sim.apply(PauliGate{extend_with_identity(*rec.correction)});
  if (plan.logical_z) rec.logical_outcome = readout(*plan.logical_z);
  for (const auto& g : plan.generators) rec.verification.push_back(readout(g));
  return rec;
}

template <Simulator S>
std::pair<S, PrepRecord> prepare_code_state(const CodePrepPlan& plan, std::uint64_t seed) {
  plan.validate();
  S sim(plan.n + 1, seed);
  auto rec = prepare_code_state(sim, plan);
  return {std::move(sim), std::move(rec)};
}

}  // namespace spinpauli::protocol
