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

#include <concepts>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "spinpauli/circuit.hpp"
#include "spinpauli/clifford.hpp"
#include "spinpauli/dense.hpp"
#include "spinpauli/verify.hpp"

namespace spinpauli {

/// Uniform double in [0,1) with 53 random bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Per-shot stream derived from (seed, shot).
inline std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t shot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(shot >> 32)};
  std::mt19937_64 rng(seq);
  return rng();
}

template <class S>
concept Simulator = requires(S s, const Operation& op, const PauliString& p) {
  { s.num_qubits() } -> std::convertible_to<std::size_t>;
  s.apply(op);
  { s.measure(p) } -> std::same_as<int>;
};

/// Applies a non-measurement operation to an amplitude span of an n-qubit register.
inline void apply_operation(std::span<dense::Complex> amps, std::size_t n, const Operation& op) {
  using namespace dense;
  auto check_qubit = [n](std::size_t q) {
    if (q >= n) throw DimensionError("qubit index " + std::to_string(q) + " out of range");
  };
  auto check_length = [n](std::size_t len) {
    if (len != n) throw DimensionError("operation spans " + std::to_string(len) + " qubits, register has " +
                                       std::to_string(n));
  };
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PairFactor>) {
          check_qubit(g.first);
          check_qubit(g.second);
          if (g.first == g.second) throw DimensionError("pair factor needs distinct qubits");
          std::vector<PauliAxis> axes(n, PauliAxis::I);
          axes[g.first] = g.first_axis;
          axes[g.second] = g.second_axis;
          apply_pair_factor_inplace(amps, n, PauliString(std::move(axes)));
        } else if constexpr (std::is_same_v<T, QuarterTurn>) {
          check_qubit(g.qubit);
          if (g.axis == PauliAxis::I) return;
          const double angle = g.adjoint ? -std::numbers::pi / 2 : std::numbers::pi / 2;
          kernels::apply_1q(amps, n, g.qubit, rotation_matrix(SpinAxis::from(g.axis), angle));
        } else if constexpr (std::is_same_v<T, CollectiveRotation>) {
          if (g.qubits.empty()) throw DimensionError("collective rotation needs at least one qubit");
          if (g.axis == PauliAxis::I) throw DimensionError("collective rotation axis must be x, y or z");
          const double angle = g.adjoint ? -std::numbers::pi / 2 : std::numbers::pi / 2;
          const auto m = rotation_matrix(SpinAxis::from(g.axis), angle);
          for (auto q : g.qubits) check_qubit(q);
          for (auto q : g.qubits) kernels::apply_1q(amps, n, q, m);
        } else if constexpr (std::is_same_v<T, PauliGate>) {
          check_length(g.pauli.size());
          kernels::apply_pauli(amps, n, g.pauli);
        } else if constexpr (std::is_same_v<T, SpinSpinGate>) {
          check_length(g.generator.size());
          const auto spins = local_spins(g.generator);
          apply_spin_spin_inplace(amps, n, spins, std::numbers::pi / 2);
        } else if constexpr (std::is_same_v<T, LinearGate>) {
          check_length(g.generator.size());
          const auto spins = local_spins(g.generator);
          apply_linear_inplace(amps, n, spins, std::numbers::pi / 2);
        } else if constexpr (std::is_same_v<T, Cnot>) {
          check_qubit(g.control);
          check_qubit(g.target);
          if (g.control == g.target) throw DimensionError("cnot needs distinct qubits");
          kernels::apply_cnot(amps, n, g.control, g.target);
        } else {
          throw std::logic_error("measurements are not unitary operations");
        }
      },
      op);
}

class DenseSimulator {
 public:
  DenseSimulator(dense::StateVector state, std::uint64_t seed) : state_(std::move(state)), rng_(seed) {}
  DenseSimulator(std::size_t n, std::uint64_t seed) : DenseSimulator(dense::StateVector(n), seed) {}

  std::size_t num_qubits() const { return state_.num_qubits(); }
  const dense::StateVector& state() const { return state_; }
  dense::StateVector& state() { return state_; }

  int measure(const PauliString& p) { return dense::measure_pauli(state_, p, uniform01(rng_)); }

  void apply(const Operation& op) {
    if (const auto* m = std::get_if<Measure>(&op)) {
      measure(m->observable);
      return;
    }
    apply_operation(state_.amplitudes(), state_.num_qubits(), op);
  }

 private:
  dense::StateVector state_;
  std::mt19937_64 rng_;
};

/// Unitary of a measurement-free circuit.
inline dense::DenseOperator circuit_unitary(std::size_t n, const Circuit& circuit) {
  return dense::DenseOperator::from_column_map(n, [&](std::span<dense::Complex> col) {
    for (const auto& op : circuit) apply_operation(col, n, op);
  });
}

class TableauSimulator {
 public:
  TableauSimulator(clifford::StabilizerTableau tableau, std::uint64_t seed) : tableau_(std::move(tableau)), rng_(seed) {}
  TableauSimulator(std::size_t n, std::uint64_t seed) : TableauSimulator(clifford::StabilizerTableau(n), seed) {}

  std::size_t num_qubits() const { return tableau_.num_qubits(); }
  const clifford::StabilizerTableau& tableau() const { return tableau_; }
  clifford::StabilizerTableau& tableau() { return tableau_; }

  /// Draws one uniform per measurement, deterministic or not, so the stream
  /// stays aligned with DenseSimulator.
  int measure(const PauliString& p) { return tableau_.measure(p, uniform01(rng_)); }

  void apply(const Operation& op) {
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, PairFactor>) {
            tableau_.pair_factor(g.first, g.second, g.first_axis, g.second_axis);
          } else if constexpr (std::is_same_v<T, QuarterTurn>) {
            tableau_.quarter_turn(g.qubit, g.axis, g.adjoint);
          } else if constexpr (std::is_same_v<T, CollectiveRotation>) {
            if (g.qubits.empty()) throw clifford::TableauError("collective rotation needs at least one qubit");
            for (auto q : g.qubits) tableau_.quarter_turn(q, g.axis, g.adjoint);
          } else if constexpr (std::is_same_v<T, PauliGate>) {
            tableau_.pauli(g.pauli);
          } else if constexpr (std::is_same_v<T, SpinSpinGate>) {
            tableau_.spin_spin(g.generator);
          } else if constexpr (std::is_same_v<T, LinearGate>) {
            tableau_.linear(g.generator);
          } else if constexpr (std::is_same_v<T, Cnot>) {
            tableau_.cnot(g.control, g.target);
          } else {
            measure(g.observable);
          }
        },
        op);
  }

 private:
  clifford::StabilizerTableau tableau_;
  std::mt19937_64 rng_;
};

/// Runs the circuit and returns measurement outcomes in order.
template <Simulator S>
std::vector<int> run(S& sim, const Circuit& circuit) {
  std::vector<int> outcomes;
  for (const auto& op : circuit) {
    if (const auto* m = std::get_if<Measure>(&op)) {
      outcomes.push_back(sim.measure(m->observable));
    } else {
      sim.apply(op);
    }
  }
  return outcomes;
}

/// Largest ‖Sψ − ψ‖ over the signed stabilizer rows of `t`.
inline double stabilizer_residual(const clifford::StabilizerTableau& t, const dense::StateVector& s) {
  double worst = 0.0;
  for (const auto& row : t.stabilizers()) {
    const auto image = dense::apply_pauli(s, row);
    double d = 0.0;
    for (std::size_t i = 0; i < s.dimension(); ++i) d += std::norm(image[i] - s[i]);
    worst = std::max(worst, std::sqrt(d));
  }
  return worst;
}

struct CrossCheckReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<int> dense_outcomes;
  std::vector<int> tableau_outcomes;
  double stabilizer_residual = 0.0;
  bool pass = false;
};

/// Runs `script` from |↓,N⟩ on both backends with the same seed.
inline CrossCheckReport cross_check(std::size_t n, const Circuit& script, std::uint64_t seed,
                                    double tol = 1e-10) {
  DenseSimulator d(n, seed);
  TableauSimulator t(n, seed);
  CrossCheckReport report;
  report.n = n;
  report.seed = seed;
  report.dense_outcomes = run(d, script);
  report.tableau_outcomes = run(t, script);
  report.stabilizer_residual = stabilizer_residual(t.tableau(), d.state());
  report.pass = report.dense_outcomes == report.tableau_outcomes && report.stabilizer_residual <= tol &&
                t.tableau().is_valid();
  return report;
}

/// Uniformly chosen non-identity axis.
template <class Rng>
PauliAxis random_axis(Rng& rng) {
  std::uniform_int_distribution<int> pick(1, 3);
  return static_cast<PauliAxis>(pick(rng));
}

/// Random Hermitian Pauli string with at least one non-identity position.
template <class Rng>
PauliString random_pauli(std::size_t n, Rng& rng, bool allow_sign = true) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<PauliAxis> axes(n);
  do {
    for (auto& a : axes) a = static_cast<PauliAxis>(pick(rng));
  } while (std::all_of(axes.begin(), axes.end(), [](PauliAxis a) { return a == PauliAxis::I; }));
  std::uniform_int_distribution<int> coin(0, 1);
  return PauliString(std::move(axes), allow_sign && coin(rng) ? 2 : 0);
}

/// Random script over every backend-neutral operation kind, measurements included.
template <class Rng>
Circuit random_clifford_script(std::size_t n, std::size_t length, Rng& rng) {
  if (n < 2) throw std::invalid_argument("random scripts need at least two qubits");
  std::uniform_int_distribution<int> kind(0, 7);
  std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  Circuit c;
  while (c.size() < length) {
    switch (kind(rng)) {
      case 0: {
        const std::size_t a = qubit(rng);
        std::size_t b = qubit(rng);
        while (b == a) b = qubit(rng);
        c.push_back(PairFactor{a, b, random_axis(rng), random_axis(rng)});
        break;
      }
      case 1: c.push_back(QuarterTurn{qubit(rng), random_axis(rng), coin(rng) == 1}); break;
      case 2: {
        std::vector<std::size_t> qs;
        for (std::size_t q = 0; q < n; ++q) {
          if (coin(rng)) qs.push_back(q);
        }
        if (qs.empty()) qs.push_back(qubit(rng));
        c.push_back(CollectiveRotation{random_axis(rng), qs, coin(rng) == 1});
        break;
      }
      case 3: c.push_back(PauliGate{random_pauli(n, rng)}); break;
      case 4: {
        auto p = random_pauli(n, rng, false);
        if (p.weight() < 2) break;
        c.push_back(SpinSpinGate{DGenerator::from_pauli(p)});
        break;
      }
      case 5: c.push_back(LinearGate{DGenerator::from_pauli(random_pauli(n, rng, false))}); break;
      case 6: {
        const std::size_t a = qubit(rng);
        std::size_t b = qubit(rng);
        while (b == a) b = qubit(rng);
        c.push_back(Cnot{a, b});
        break;
      }
      default: c.push_back(Measure{random_pauli(n, rng)}); break;
    }
  }
  return c;
}

}  // namespace spinpauli
