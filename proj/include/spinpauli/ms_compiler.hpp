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

// Trapped-ion gate schedules for a stabilizer readout: global Mølmer–Sørensen
// style gates with per-qubit frame rotations, identity positions handled by
// transport or by refocusing pulses, and a CNOT-ladder baseline.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinpauli/dense.hpp"
#include "spinpauli/pauli.hpp"
#include "spinpauli/protocol.hpp"
#include "spinpauli/simulator.hpp"
#include "spinpauli/spin_axis.hpp"

namespace spinpauli::compiler {

class CompileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ScheduleParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Strategy { Conjugated, Refocused, Css, Addressed, Baseline };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Conjugated: return "conjugated";
    case Strategy::Refocused: return "refocused";
    case Strategy::Css: return "css";
    case Strategy::Addressed: return "addressed";
    case Strategy::Baseline: return "baseline";
  }
  return "?";
}

inline std::optional<Strategy> strategy_from_string(std::string_view s) {
  for (auto st : {Strategy::Conjugated, Strategy::Refocused, Strategy::Css, Strategy::Addressed, Strategy::Baseline}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Schedule operations. Qubit indices are 0-based here and 1-based in text.

struct PrepareOp {
  std::size_t qubit;
  bool up;
};

/// exp(−i(angle/2) σ_axis).
struct RotateOp {
  std::size_t qubit;
  SpinAxis axis;
  double angle;
};

/// exp(−iα D²) with the same axis on every listed qubit.
struct GlobalSpinSpinOp {
  std::vector<std::size_t> qubits;
  SpinAxis axis;
  double alpha;
};

/// exp(−iα D) with the same axis on every listed qubit.
struct GlobalLinearOp {
  std::vector<std::size_t> qubits;
  SpinAxis axis;
  double alpha;
};

struct AddressedTerm {
  std::size_t qubit;
  PauliAxis axis;
};

struct AddressedSpinSpinOp {
  std::vector<AddressedTerm> terms;
  double alpha;
};

struct AddressedLinearOp {
  std::vector<AddressedTerm> terms;
  double alpha;
};

/// Ideal π rotation about z, exp(−iπ/2 σz).
struct RefocusOp {
  std::size_t qubit;
};

/// Flips `target` when `control` is |↑⟩.
struct CnotOp {
  std::size_t control;
  std::size_t target;
};

/// Moves qubits away from (out) or back into (in) the interaction zone.
struct TransportOp {
  bool out;
  std::vector<std::size_t> qubits;
};

struct MeasureOp {
  std::size_t qubit;
};

using ScheduleOp = std::variant<PrepareOp, RotateOp, GlobalSpinSpinOp, GlobalLinearOp, AddressedSpinSpinOp,
                                AddressedLinearOp, RefocusOp, CnotOp, TransportOp, MeasureOp>;

struct CostSummary {
  std::size_t collective_ops = 0;
  std::size_t single_qubit_ops = 0;
  std::size_t two_qubit_ops = 0;
  std::size_t refocus_ops = 0;
  std::size_t transport_ops = 0;
  std::size_t measurements = 0;
  std::size_t depth = 0;

  friend bool operator==(const CostSummary&, const CostSummary&) = default;
};

inline std::vector<std::size_t> op_qubits(const ScheduleOp& op) {
  return std::visit(
      [](const auto& g) -> std::vector<std::size_t> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GlobalSpinSpinOp> || std::is_same_v<T, GlobalLinearOp> ||
                      std::is_same_v<T, TransportOp>) {
          return g.qubits;
        } else if constexpr (std::is_same_v<T, AddressedSpinSpinOp> || std::is_same_v<T, AddressedLinearOp>) {
          std::vector<std::size_t> q;
          for (const auto& t : g.terms) q.push_back(t.qubit);
          return q;
        } else if constexpr (std::is_same_v<T, CnotOp>) {
          return {g.control, g.target};
        } else {
          return {g.qubit};
        }
      },
      op);
}

struct GateSchedule {
  Strategy strategy = Strategy::Conjugated;
  PauliString stabilizer = PauliString::identity(1);
  /// Data qubits plus the ancilla, which is the last qubit.
  std::size_t num_qubits = 0;
  std::vector<ScheduleOp> ops;

  std::size_t ancilla() const { return num_qubits - 1; }

  /// Depth is the ASAP layer count over gates and measurements; preparation
  /// and transport are not layered. Spin-spin segments separated only by
  /// refocus pulses form one echoed gate and count as one collective op.
  CostSummary cost() const {
    CostSummary c;
    std::vector<std::size_t> level(num_qubits, 0);
    const GlobalSpinSpinOp* echo = nullptr;
    for (const auto& op : ops) {
      bool layered = true;
      const GlobalSpinSpinOp* next_echo = nullptr;
      std::visit(
          [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, GlobalSpinSpinOp>) {
              if (!echo || echo->qubits != g.qubits || echo->axis != g.axis) ++c.collective_ops;
              next_echo = &g;
            } else if constexpr (std::is_same_v<T, GlobalLinearOp> || std::is_same_v<T, AddressedSpinSpinOp> ||
                                 std::is_same_v<T, AddressedLinearOp>) {
              ++c.collective_ops;
            } else if constexpr (std::is_same_v<T, RotateOp>) {
              ++c.single_qubit_ops;
            } else if constexpr (std::is_same_v<T, RefocusOp>) {
              ++c.single_qubit_ops;
              ++c.refocus_ops;
              next_echo = echo;
            } else if constexpr (std::is_same_v<T, CnotOp>) {
              ++c.two_qubit_ops;
            } else if constexpr (std::is_same_v<T, TransportOp>) {
              ++c.transport_ops;
              layered = false;
            } else if constexpr (std::is_same_v<T, MeasureOp>) {
              ++c.measurements;
            } else {
              layered = false;
            }
          },
          op);
      echo = next_echo;
      if (!layered) continue;
      const auto qs = op_qubits(op);
      std::size_t layer = 0;
      for (auto q : qs) layer = std::max(layer, level[q]);
      ++layer;
      for (auto q : qs) level[q] = layer;
      c.depth = std::max(c.depth, layer);
    }
    return c;
  }
};

// ---------------------------------------------------------------------------
// Frame rotations.

struct FrameRotation {
  SpinAxis axis;
  double angle;
};

/// r with r† σ_frame r = σ_target, r = exp(−i(angle/2) σ_axis). Applying r,
/// then a gate built from σ_frame, then r† yields the gate built from σ_target.
inline std::optional<FrameRotation> frame_rotation(PauliAxis frame, PauliAxis target) {
  constexpr double h = std::numbers::pi / 2;
  using A = PauliAxis;
  if (frame == A::I || target == A::I) throw CompileError("frame rotations need non-identity axes");
  if (frame == target) return std::nullopt;
  if (frame == A::Z) return target == A::X ? FrameRotation{SpinAxis::y(), -h} : FrameRotation{SpinAxis::x(), h};
  if (frame == A::X) return target == A::Y ? FrameRotation{SpinAxis::z(), -h} : FrameRotation{SpinAxis::y(), h};
  return target == A::Z ? FrameRotation{SpinAxis::x(), -h} : FrameRotation{SpinAxis::z(), h};
}

namespace detail {

constexpr double kAlpha = std::numbers::pi / 2;

inline void check_stabilizer(const PauliString& s) {
  if (s.phase_exp() != 0) throw CompileError("stabilizer must have phase_exp 0, got '" + s.str() + "'");
  if (s.weight() == 0) throw CompileError("stabilizer is all identity");
}

inline std::vector<std::size_t> excluded(const PauliString& s) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < s.size(); ++q) {
    if (s[q] == PauliAxis::I) out.push_back(q);
  }
  return out;
}

inline GateSchedule start(Strategy st, const PauliString& s) {
  GateSchedule g;
  g.strategy = st;
  g.stabilizer = s;
  g.num_qubits = s.size() + 1;
  return g;
}

inline void rotate(GateSchedule& g, std::size_t q, const FrameRotation& r, bool inverse) {
  g.ops.emplace_back(RotateOp{q, r.axis, inverse ? -r.angle : r.angle});
}

/// Ancilla preparation and R_y, as in the protocol circuit.
inline void open_ancilla(GateSchedule& g) {
  g.ops.emplace_back(PrepareOp{g.ancilla(), true});
  g.ops.emplace_back(RotateOp{g.ancilla(), SpinAxis::y(), std::numbers::pi / 2});
}

inline void close_ancilla(GateSchedule& g) {
  const auto rot = protocol::kFinalRotation[(g.stabilizer.weight() + 1) % 4];
  const double angle = rot.adjoint ? -std::numbers::pi / 2 : std::numbers::pi / 2;
  g.ops.emplace_back(RotateOp{g.ancilla(), SpinAxis::from(rot.axis), angle});
  g.ops.emplace_back(MeasureOp{g.ancilla()});
}

/// Pre-rotations into `frame`, the uniform global gate(s), post-rotations.
inline void framed_global(GateSchedule& g, PauliAxis frame, const std::vector<std::size_t>& gate_qubits,
                          const std::vector<std::size_t>& linear_qubits, std::size_t segments,
                          const std::vector<std::size_t>& refocused) {
  std::vector<std::pair<std::size_t, FrameRotation>> rots;
  for (auto q : g.stabilizer.support()) {
    if (auto r = frame_rotation(frame, g.stabilizer[q])) rots.emplace_back(q, *r);
  }
  if (auto r = frame_rotation(frame, PauliAxis::Z)) rots.emplace_back(g.ancilla(), *r);
  for (const auto& [q, r] : rots) rotate(g, q, r, false);

  const auto axis = SpinAxis::from(frame);
  // Walsh pattern: refocused qubit t flips sign in segment s when
  // popcount((t+1) & s) is odd, so every coupling to it averages out.
  auto sign = [](std::size_t t, std::size_t s) { return std::popcount((t + 1) & s) % 2 == 1; };
  for (std::size_t s = 0; s < segments; ++s) {
    for (std::size_t t = 0; t < refocused.size(); ++t) {
      const bool prev = s == 0 ? false : sign(t, s - 1);
      if (sign(t, s) != prev) g.ops.emplace_back(RefocusOp{refocused[t]});
    }
    g.ops.emplace_back(GlobalSpinSpinOp{gate_qubits, axis, kAlpha / static_cast<double>(segments)});
  }
  for (std::size_t t = 0; t < refocused.size(); ++t) {
    if (sign(t, segments - 1)) g.ops.emplace_back(RefocusOp{refocused[t]});
  }
  if (linear_qubits.size() % 2 == 1) g.ops.emplace_back(GlobalLinearOp{linear_qubits, axis, kAlpha});
  for (auto it = rots.rbegin(); it != rots.rend(); ++it) rotate(g, it->first, it->second, true);
}

inline std::vector<std::size_t> with_ancilla(const PauliString& s) {
  auto q = s.support();
  q.push_back(s.size());
  return q;
}

}  // namespace detail

/// Excluded qubits are transported out; the rest are rotated into the z
/// frame around one global gate.
inline GateSchedule compile_conjugated(const PauliString& stabilizer) {
  detail::check_stabilizer(stabilizer);
  auto g = detail::start(Strategy::Conjugated, stabilizer);
  const auto ex = detail::excluded(stabilizer);
  const auto part = detail::with_ancilla(stabilizer);
  if (!ex.empty()) g.ops.emplace_back(TransportOp{true, ex});
  detail::open_ancilla(g);
  detail::framed_global(g, PauliAxis::Z, part, part, 1, {});
  if (!ex.empty()) g.ops.emplace_back(TransportOp{false, ex});
  detail::close_ancilla(g);
  return g;
}

/// One global gate over all N+1 qubits in the x frame, split into K segments
/// with refocusing pulses on excluded qubits, K = 2^⌈log2(|E|+1)⌉.
inline GateSchedule compile_refocused(const PauliString& stabilizer) {
  detail::check_stabilizer(stabilizer);
  auto g = detail::start(Strategy::Refocused, stabilizer);
  const auto ex = detail::excluded(stabilizer);
  std::size_t segments = 1;
  while (segments < ex.size() + 1) segments *= 2;
  std::vector<std::size_t> all(g.num_qubits);
  for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
  detail::open_ancilla(g);
  detail::framed_global(g, PauliAxis::X, all, detail::with_ancilla(stabilizer), segments, ex);
  detail::close_ancilla(g);
  return g;
}

/// Pure-X or pure-Y stabilizers: a single φ-axis global gate, only the
/// ancilla is rotated into the frame.
inline GateSchedule compile_css(const PauliString& stabilizer) {
  detail::check_stabilizer(stabilizer);
  std::optional<PauliAxis> kind;
  for (auto a : stabilizer.axes()) {
    if (a == PauliAxis::I) continue;
    if (a == PauliAxis::Z || (kind && *kind != a)) {
      throw CompileError("css strategy needs axes from {I,X} or {I,Y}, got '" + stabilizer.str() +
                         "'; use the conjugated strategy");
    }
    kind = a;
  }
  auto g = detail::start(Strategy::Css, stabilizer);
  const auto ex = detail::excluded(stabilizer);
  const auto part = detail::with_ancilla(stabilizer);
  if (!ex.empty()) g.ops.emplace_back(TransportOp{true, ex});
  detail::open_ancilla(g);
  detail::framed_global(g, *kind, part, part, 1, {});
  if (!ex.empty()) g.ops.emplace_back(TransportOp{false, ex});
  detail::close_ancilla(g);
  return g;
}

/// Individually addressed gate: each participant couples through its own axis.
inline GateSchedule compile_addressed(const PauliString& stabilizer) {
  detail::check_stabilizer(stabilizer);
  auto g = detail::start(Strategy::Addressed, stabilizer);
  std::vector<AddressedTerm> terms;
  for (auto q : stabilizer.support()) terms.push_back({q, stabilizer[q]});
  terms.push_back({g.ancilla(), PauliAxis::Z});
  detail::open_ancilla(g);
  g.ops.emplace_back(AddressedSpinSpinOp{terms, detail::kAlpha});
  if (terms.size() % 2 == 1) g.ops.emplace_back(AddressedLinearOp{terms, detail::kAlpha});
  detail::close_ancilla(g);
  return g;
}

/// Standard ancilla-CNOT extraction: one CNOT per participant, each wrapped in
/// its basis change. The ancilla starts in |↑⟩ for even weight so that it ends
/// in |↑⟩ exactly when the eigenvalue is +1.
inline GateSchedule baseline_cnot(const PauliString& stabilizer) {
  detail::check_stabilizer(stabilizer);
  auto g = detail::start(Strategy::Baseline, stabilizer);
  g.ops.emplace_back(PrepareOp{g.ancilla(), stabilizer.weight() % 2 == 0});
  for (auto q : stabilizer.support()) {
    const auto r = frame_rotation(PauliAxis::Z, stabilizer[q]);
    if (r) detail::rotate(g, q, *r, false);
    g.ops.emplace_back(CnotOp{q, g.ancilla()});
    if (r) detail::rotate(g, q, *r, true);
  }
  g.ops.emplace_back(MeasureOp{g.ancilla()});
  return g;
}

inline GateSchedule compile(const PauliString& stabilizer, Strategy s) {
  switch (s) {
    case Strategy::Conjugated: return compile_conjugated(stabilizer);
    case Strategy::Refocused: return compile_refocused(stabilizer);
    case Strategy::Css: return compile_css(stabilizer);
    case Strategy::Addressed: return compile_addressed(stabilizer);
    case Strategy::Baseline: return baseline_cnot(stabilizer);
  }
  throw CompileError("unknown strategy");
}

// ---------------------------------------------------------------------------
// Cost comparison.

struct CostReport {
  Strategy strategy;
  std::string stabilizer;
  std::size_t n;
  std::size_t weight;
  CostSummary cost;
  std::size_t baseline_two_qubit;
  std::size_t baseline_depth;
  /// ⌈log2 N'⌉: depth of a classical fan-in parity tree over the participants.
  std::size_t classical_parity_depth;
};

inline std::size_t ceil_log2(std::size_t n) {
  std::size_t d = 0;
  while ((std::size_t{1} << d) < n) ++d;
  return d;
}

inline std::vector<CostReport> cost_compare(const std::vector<PauliString>& stabilizers,
                                            const std::vector<Strategy>& strategies) {
  std::vector<CostReport> out;
  for (const auto& s : stabilizers) {
    if (strategies.empty()) break;
    const auto base = baseline_cnot(s).cost();
    for (auto st : strategies) {
      const auto cost = compile(s, st).cost();
      out.push_back({st, s.str(), s.size(), s.weight(), cost, base.two_qubit_ops, base.depth, ceil_log2(s.weight())});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense replay.

namespace detail {

inline void check_qubit(const GateSchedule& g, std::size_t q) {
  if (q >= g.num_qubits) throw CompileError("schedule qubit " + std::to_string(q + 1) + " out of range");
}

inline std::vector<dense::LocalSpin> uniform_spins(const std::vector<std::size_t>& qs, const SpinAxis& axis) {
  std::vector<dense::LocalSpin> out;
  for (auto q : qs) out.push_back({q, axis});
  return out;
}

inline std::vector<dense::LocalSpin> addressed_spins(const std::vector<AddressedTerm>& terms) {
  std::vector<dense::LocalSpin> out;
  for (const auto& t : terms) out.push_back({t.qubit, SpinAxis::from(t.axis)});
  return out;
}

/// Applies a unitary schedule op; preparation, transport and measurement are no-ops here.
inline void apply_unitary(std::span<dense::Complex> amps, const GateSchedule& g, const ScheduleOp& op) {
  using namespace dense;
  const std::size_t n = g.num_qubits;
  for (auto q : op_qubits(op)) check_qubit(g, q);
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, RotateOp>) {
          kernels::apply_1q(amps, n, o.qubit, rotation_matrix(o.axis, o.angle));
        } else if constexpr (std::is_same_v<T, GlobalSpinSpinOp>) {
          apply_spin_spin_inplace(amps, n, uniform_spins(o.qubits, o.axis), o.alpha);
        } else if constexpr (std::is_same_v<T, GlobalLinearOp>) {
          apply_linear_inplace(amps, n, uniform_spins(o.qubits, o.axis), o.alpha);
        } else if constexpr (std::is_same_v<T, AddressedSpinSpinOp>) {
          apply_spin_spin_inplace(amps, n, addressed_spins(o.terms), o.alpha);
        } else if constexpr (std::is_same_v<T, AddressedLinearOp>) {
          apply_linear_inplace(amps, n, addressed_spins(o.terms), o.alpha);
        } else if constexpr (std::is_same_v<T, RefocusOp>) {
          kernels::apply_1q(amps, n, o.qubit, rotation_matrix(SpinAxis::z(), std::numbers::pi));
        } else if constexpr (std::is_same_v<T, CnotOp>) {
          kernels::apply_cnot(amps, n, o.control, o.target);
        }
      },
      op);
}

}  // namespace detail

/// Unitary of every gate between preparation and measurement, on N+1 qubits.
inline dense::DenseOperator schedule_unitary(const GateSchedule& g) {
  return dense::DenseOperator::from_column_map(g.num_qubits, [&](std::span<dense::Complex> col) {
    for (const auto& op : g.ops) detail::apply_unitary(col, g, op);
  });
}

struct ReplayResult {
  int outcome = 0;
  dense::StateVector post_state;
};

/// Runs the schedule on `data` ⊗ |↓⟩ and returns the ancilla outcome (+1 for
/// |↑⟩) and the data register after the measurement. Draws one uniform per
/// measurement, like the protocol simulators.
inline ReplayResult replay(const GateSchedule& g, const dense::StateVector& data, std::uint64_t seed) {
  if (data.num_qubits() + 1 != g.num_qubits) throw CompileError("state size does not match the schedule");
  auto state = data.tensor(dense::StateVector(1));
  std::mt19937_64 rng(seed);
  std::optional<int> outcome;
  for (const auto& op : g.ops) {
    if (const auto* p = std::get_if<PrepareOp>(&op)) {
      if (p->up) {
        detail::check_qubit(g, p->qubit);
        dense::kernels::apply_pauli(state.amplitudes(), g.num_qubits,
                                    PauliString::single(g.num_qubits, p->qubit, PauliAxis::X));
      }
    } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
      detail::check_qubit(g, m->qubit);
      outcome = dense::measure_pauli(state, PauliString::single(g.num_qubits, m->qubit, PauliAxis::Z), uniform01(rng));
    } else {
      detail::apply_unitary(state.amplitudes(), g, op);
    }
  }
  if (!outcome) throw CompileError("schedule has no measurement");
  return {*outcome, state.drop_last_qubit(*outcome == 1)};
}

// ---------------------------------------------------------------------------
// Text format.
//
//   # strategy <name>
//   # stabilizer <pauli>
//   # qubits <N+1>
//   PREP q up|down
//   ROT q axis angle
//   MS q... axis=<axis> alpha=<value>
//   LIN q... axis=<axis> alpha=<value>
//   AMS q:A... alpha=<value>
//   ALIN q:A... alpha=<value>
//   REFOCUS q
//   CNOT control target
//   TRANSPORT_OUT q...
//   TRANSPORT_IN q...
//   MEASURE q
//   COST {json}
//
// Qubits are 1-based. Axes are x, y, z or phi:<value>. Numbers use the
// shortest round-trip representation.

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_axis(const SpinAxis& a) {
  switch (a.kind) {
    case SpinAxis::Kind::X: return "x";
    case SpinAxis::Kind::Y: return "y";
    case SpinAxis::Kind::Z: return "z";
    case SpinAxis::Kind::Phi: break;
  }
  return "phi:" + format_double(a.phi);
}

inline nlohmann::json cost_json(const CostSummary& c) {
  return {{"collective_ops", c.collective_ops}, {"single_qubit_ops", c.single_qubit_ops},
          {"two_qubit_ops", c.two_qubit_ops},   {"refocus_ops", c.refocus_ops},
          {"transport_ops", c.transport_ops},   {"measurements", c.measurements},
          {"depth", c.depth}};
}

inline std::string render_op(const ScheduleOp& op) {
  auto q1 = [](std::size_t q) { return std::to_string(q + 1); };
  auto list = [&](const std::vector<std::size_t>& qs) {
    std::string s;
    for (auto q : qs) s += " " + q1(q);
    return s;
  };
  auto terms = [&](const std::vector<AddressedTerm>& ts) {
    std::string s;
    for (const auto& t : ts) s += " " + q1(t.qubit) + ":" + to_char(t.axis);
    return s;
  };
  return std::visit(
      [&](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PrepareOp>) {
          return "PREP " + q1(o.qubit) + (o.up ? " up" : " down");
        } else if constexpr (std::is_same_v<T, RotateOp>) {
          return "ROT " + q1(o.qubit) + " " + format_axis(o.axis) + " " + format_double(o.angle);
        } else if constexpr (std::is_same_v<T, GlobalSpinSpinOp>) {
          return "MS" + list(o.qubits) + " axis=" + format_axis(o.axis) + " alpha=" + format_double(o.alpha);
        } else if constexpr (std::is_same_v<T, GlobalLinearOp>) {
          return "LIN" + list(o.qubits) + " axis=" + format_axis(o.axis) + " alpha=" + format_double(o.alpha);
        } else if constexpr (std::is_same_v<T, AddressedSpinSpinOp>) {
          return "AMS" + terms(o.terms) + " alpha=" + format_double(o.alpha);
        } else if constexpr (std::is_same_v<T, AddressedLinearOp>) {
          return "ALIN" + terms(o.terms) + " alpha=" + format_double(o.alpha);
        } else if constexpr (std::is_same_v<T, RefocusOp>) {
          return "REFOCUS " + q1(o.qubit);
        } else if constexpr (std::is_same_v<T, CnotOp>) {
          return "CNOT " + q1(o.control) + " " + q1(o.target);
        } else if constexpr (std::is_same_v<T, TransportOp>) {
          return std::string(o.out ? "TRANSPORT_OUT" : "TRANSPORT_IN") + list(o.qubits);
        } else {
          return "MEASURE " + q1(o.qubit);
        }
      },
      op);
}

inline std::string render(const GateSchedule& g) {
  std::string out;
  out += "# strategy " + to_string(g.strategy) + "\n";
  out += "# stabilizer " + g.stabilizer.str() + "\n";
  out += "# qubits " + std::to_string(g.num_qubits) + "\n";
  for (const auto& op : g.ops) out += render_op(op) + "\n";
  out += "COST " + cost_json(g.cost()).dump() + "\n";
  return out;
}

namespace detail {

inline double parse_double(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ScheduleParseError("invalid number '" + std::string(s) + "'");
  }
  return v;
}

inline std::size_t parse_qubit(std::string_view s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0) {
    throw ScheduleParseError("invalid qubit '" + std::string(s) + "'");
  }
  return v - 1;
}

inline SpinAxis parse_axis(std::string_view s) {
  if (s == "x") return SpinAxis::x();
  if (s == "y") return SpinAxis::y();
  if (s == "z") return SpinAxis::z();
  if (s.starts_with("phi:")) return SpinAxis::equatorial(parse_double(s.substr(4)));
  throw ScheduleParseError("invalid axis '" + std::string(s) + "'");
}

inline std::string_view take_key(std::string_view tok, std::string_view key) {
  if (!tok.starts_with(key) || tok.size() <= key.size() || tok[key.size()] != '=') {
    throw ScheduleParseError("expected '" + std::string(key) + "=...', got '" + std::string(tok) + "'");
  }
  return tok.substr(key.size() + 1);
}

inline std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  return toks;
}

}  // namespace detail

/// Parses the text form. The COST footer is checked against the recomputed cost.
inline GateSchedule parse_schedule(std::string_view text) {
  using namespace detail;
  GateSchedule g;
  bool have_strategy = false, have_stab = false, have_qubits = false;
  std::optional<nlohmann::json> footer;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    if (line.starts_with("COST ")) {
      try {
        footer = nlohmann::json::parse(line.substr(5));
      } catch (const nlohmann::json::exception& e) {
        throw ScheduleParseError(std::string("invalid COST footer: ") + e.what());
      }
      continue;
    }
    const auto t = split(line);
    if (t.empty()) continue;
    auto need = [&](std::size_t k) {
      if (t.size() < k) throw ScheduleParseError("too few fields in '" + line + "'");
    };
    auto exact = [&](std::size_t k) {
      if (t.size() != k) throw ScheduleParseError("wrong field count in '" + line + "'");
    };
    if (t[0] == "#") {
      exact(3);
      if (t[1] == "strategy") {
        const auto s = strategy_from_string(t[2]);
        if (!s) throw ScheduleParseError("unknown strategy '" + t[2] + "'");
        g.strategy = *s;
        have_strategy = true;
      } else if (t[1] == "stabilizer") {
        g.stabilizer = PauliString::parse(t[2]);
        have_stab = true;
      } else if (t[1] == "qubits") {
        g.num_qubits = parse_qubit(t[2]) + 1;
        have_qubits = true;
      } else {
        throw ScheduleParseError("unknown header '" + t[1] + "'");
      }
      continue;
    }
    const std::string& kind = t[0];
    if (kind == "PREP") {
      exact(3);
      if (t[2] != "up" && t[2] != "down") throw ScheduleParseError("PREP needs up or down");
      g.ops.emplace_back(PrepareOp{parse_qubit(t[1]), t[2] == "up"});
    } else if (kind == "ROT") {
      exact(4);
      g.ops.emplace_back(RotateOp{parse_qubit(t[1]), parse_axis(t[2]), parse_double(t[3])});
    } else if (kind == "MS" || kind == "LIN") {
      need(4);
      std::vector<std::size_t> qs;
      for (std::size_t i = 1; i + 2 < t.size(); ++i) qs.push_back(parse_qubit(t[i]));
      const auto axis = parse_axis(take_key(t[t.size() - 2], "axis"));
      const double alpha = parse_double(take_key(t.back(), "alpha"));
      if (kind == "MS") {
        g.ops.emplace_back(GlobalSpinSpinOp{std::move(qs), axis, alpha});
      } else {
        g.ops.emplace_back(GlobalLinearOp{std::move(qs), axis, alpha});
      }
    } else if (kind == "AMS" || kind == "ALIN") {
      need(3);
      std::vector<AddressedTerm> terms;
      for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const auto colon = t[i].find(':');
        if (colon == std::string::npos || colon + 2 != t[i].size()) {
          throw ScheduleParseError("invalid addressed term '" + t[i] + "'");
        }
        const auto axis = axis_from_char(t[i][colon + 1]);
        if (!axis || *axis == PauliAxis::I) throw ScheduleParseError("invalid addressed axis in '" + t[i] + "'");
        terms.push_back({parse_qubit(std::string_view(t[i]).substr(0, colon)), *axis});
      }
      const double alpha = parse_double(take_key(t.back(), "alpha"));
      if (kind == "AMS") {
        g.ops.emplace_back(AddressedSpinSpinOp{std::move(terms), alpha});
      } else {
        g.ops.emplace_back(AddressedLinearOp{std::move(terms), alpha});
      }
    } else if (kind == "REFOCUS") {
      exact(2);
      g.ops.emplace_back(RefocusOp{parse_qubit(t[1])});
    } else if (kind == "CNOT") {
      exact(3);
      g.ops.emplace_back(CnotOp{parse_qubit(t[1]), parse_qubit(t[2])});
    } else if (kind == "TRANSPORT_OUT" || kind == "TRANSPORT_IN") {
      need(2);
      std::vector<std::size_t> qs;
      for (std::size_t i = 1; i < t.size(); ++i) qs.push_back(parse_qubit(t[i]));
      g.ops.emplace_back(TransportOp{kind == "TRANSPORT_OUT", std::move(qs)});
    } else if (kind == "MEASURE") {
      exact(2);
      g.ops.emplace_back(MeasureOp{parse_qubit(t[1])});
    } else {
      throw ScheduleParseError("unknown operation '" + kind + "'");
    }
  }
  if (!have_strategy || !have_stab || !have_qubits) throw ScheduleParseError("missing schedule header");
  if (g.num_qubits != g.stabilizer.size() + 1) throw ScheduleParseError("qubit count does not match the stabilizer");
  for (const auto& op : g.ops) {
    for (auto q : op_qubits(op)) {
      if (q >= g.num_qubits) throw ScheduleParseError("qubit " + std::to_string(q + 1) + " out of range");
    }
  }
  if (footer && *footer != cost_json(g.cost())) throw ScheduleParseError("COST footer does not match the operations");
  return g;
}

}  // namespace spinpauli::compiler
