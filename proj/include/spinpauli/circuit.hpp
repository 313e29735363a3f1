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

// Backend-neutral Clifford circuit operations. Every operation here maps
// stabilizer states to stabilizer states, so a circuit runs on both the dense
// and the tableau simulator.

#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "spinpauli/pauli.hpp"

namespace spinpauli {

/// exp(−iπ/4 σ_k σ_l) = (1 − iσ_kσ_l)/√2.
struct PairFactor {
  std::size_t first;
  std::size_t second;
  PauliAxis first_axis;
  PauliAxis second_axis;
};

/// R^{(1)}_axis = exp(−iπ/4 σ_axis) = (1 − iσ)/√2, or its adjoint.
struct QuarterTurn {
  std::size_t qubit;
  PauliAxis axis;
  bool adjoint = false;
};

/// R^{(n)}_axis = exp(−i(π/2) J_axis) over `qubits`, or its adjoint.
struct CollectiveRotation {
  PauliAxis axis;
  std::vector<std::size_t> qubits;
  bool adjoint = false;
};

struct PauliGate {
  PauliString pauli;
};

/// exp(−i(π/2) D²).
struct SpinSpinGate {
  DGenerator generator;
};

/// exp(−i(π/2) D).
struct LinearGate {
  DGenerator generator;
};

/// Flips `target` when `control` is |↑⟩.
struct Cnot {
  std::size_t control;
  std::size_t target;
};

struct Measure {
  PauliString observable;
};

using Operation =
    std::variant<PairFactor, QuarterTurn, CollectiveRotation, PauliGate, SpinSpinGate, LinearGate, Cnot, Measure>;
using Circuit = std::vector<Operation>;

/// Multi-qubit collective interactions (the constant-depth resource).
inline bool is_collective(const Operation& op) {
  return std::holds_alternative<SpinSpinGate>(op) || std::holds_alternative<LinearGate>(op);
}

inline bool is_measurement(const Operation& op) { return std::holds_alternative<Measure>(op); }

struct GateCounts {
  std::size_t collective = 0;
  std::size_t single_qubit = 0;
  std::size_t two_qubit = 0;
  std::size_t pauli = 0;
  std::size_t measurements = 0;

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

inline GateCounts count_gates(const Circuit& circuit) {
  GateCounts c;
  for (const auto& op : circuit) {
    std::visit(
        [&c](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, SpinSpinGate> || std::is_same_v<T, LinearGate>) {
            ++c.collective;
          } else if constexpr (std::is_same_v<T, QuarterTurn>) {
            ++c.single_qubit;
          } else if constexpr (std::is_same_v<T, CollectiveRotation>) {
            c.single_qubit += g.qubits.size();
          } else if constexpr (std::is_same_v<T, PairFactor> || std::is_same_v<T, Cnot>) {
            ++c.two_qubit;
          } else if constexpr (std::is_same_v<T, PauliGate>) {
            ++c.pauli;
          } else if constexpr (std::is_same_v<T, Measure>) {
            ++c.measurements;
          }
        },
        op);
  }
  return c;
}

inline std::string describe(const Operation& op) {
  return std::visit(
      [](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PairFactor>) {
          return "PAIR " + std::to_string(g.first + 1) + ":" + to_char(g.first_axis) + " " +
                 std::to_string(g.second + 1) + ":" + to_char(g.second_axis);
        } else if constexpr (std::is_same_v<T, QuarterTurn>) {
          return std::string(g.adjoint ? "RDAG " : "R ") + to_char(g.axis) + " " + std::to_string(g.qubit + 1);
        } else if constexpr (std::is_same_v<T, CollectiveRotation>) {
          std::string s = std::string(g.adjoint ? "RDAG " : "R ") + to_char(g.axis);
          for (auto q : g.qubits) s += " " + std::to_string(q + 1);
          return s;
        } else if constexpr (std::is_same_v<T, PauliGate>) {
          return "PAULI " + g.pauli.str();
        } else if constexpr (std::is_same_v<T, SpinSpinGate>) {
          return "SPINSPIN " + g.generator.str();
        } else if constexpr (std::is_same_v<T, LinearGate>) {
          return "LINEAR " + g.generator.str();
        } else if constexpr (std::is_same_v<T, Cnot>) {
          return "CNOT " + std::to_string(g.control + 1) + " " + std::to_string(g.target + 1);
        } else {
          return "MEASURE " + g.observable.str();
        }
      },
      op);
}

}  // namespace spinpauli
