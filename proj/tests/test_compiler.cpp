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

#include <gtest/gtest.h>

#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "spinpauli/ms_compiler.hpp"

namespace spinpauli::compiler {
namespace {

using dense::StateVector;

template <class T>
std::size_t count_kind(const GateSchedule& g) {
  std::size_t c = 0;
  for (const auto& op : g.ops) c += std::holds_alternative<T>(op) ? 1 : 0;
  return c;
}

template <class T>
std::vector<T> ops_of(const GateSchedule& g) {
  std::vector<T> out;
  for (const auto& op : g.ops) {
    if (const auto* p = std::get_if<T>(&op)) out.push_back(*p);
  }
  return out;
}

std::size_t data_rotations(const GateSchedule& g) {
  std::size_t c = 0;
  for (const auto& r : ops_of<RotateOp>(g)) c += r.qubit != g.ancilla() ? 1 : 0;
  return c;
}

double replay_deviation(const GateSchedule& g) {
  const auto want = protocol::syndrome_unitary(protocol::build_syndrome_circuit(g.stabilizer));
  return dense::max_abs_diff_up_to_phase(schedule_unitary(g), want);
}

constexpr Strategy kSpinSpinStrategies[] = {Strategy::Conjugated, Strategy::Refocused, Strategy::Addressed};

TEST(FrameRotation, ConjugatesFrameAxisOntoTarget) {
  const char names[] = {'X', 'Y', 'Z'};
  for (char f : names) {
    for (char k : names) {
      const auto r = frame_rotation(*axis_from_char(f), *axis_from_char(k));
      if (f == k) {
        EXPECT_FALSE(r.has_value());
        continue;
      }
      ASSERT_TRUE(r.has_value());
      const oracle::Matrix m = dense::rotation_matrix(r->axis, r->angle);
      EXPECT_LT(oracle::max_diff(m.adjoint() * oracle::sigma(f) * m, oracle::sigma(k)), 1e-14) << f << "->" << k;
    }
  }
  EXPECT_THROW(frame_rotation(PauliAxis::I, PauliAxis::X), CompileError);
}

TEST(Conjugated, Examples) {
  const auto xxxx = compile_conjugated(PauliString::parse("XXXX"));
  EXPECT_EQ(data_rotations(xxxx), 8u);
  EXPECT_EQ(count_kind<GlobalSpinSpinOp>(xxxx), 1u);
  EXPECT_EQ(count_kind<GlobalLinearOp>(xxxx), 1u);
  EXPECT_EQ(count_kind<TransportOp>(xxxx), 0u);

  const auto zz = compile_conjugated(PauliString::parse("ZZ"));
  EXPECT_EQ(data_rotations(zz), 0u);
  EXPECT_EQ(count_kind<GlobalLinearOp>(zz), 1u);

  const auto xiz = compile_conjugated(PauliString::parse("XIZ"));
  const auto transports = ops_of<TransportOp>(xiz);
  ASSERT_EQ(transports.size(), 2u);
  EXPECT_TRUE(transports[0].out);
  EXPECT_EQ(transports[0].qubits, (std::vector<std::size_t>{1}));
  EXPECT_EQ(ops_of<GlobalSpinSpinOp>(xiz)[0].qubits, (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_THROW(compile_conjugated(PauliString::parse("III")), CompileError);
  EXPECT_THROW(compile_conjugated(PauliString::parse("-XX")), CompileError);
}

TEST(Refocused, Examples) {
  const auto xix = compile_refocused(PauliString::parse("XIX"));
  EXPECT_EQ(count_kind<TransportOp>(xix), 0u);
  for (const auto& r : ops_of<RefocusOp>(xix)) EXPECT_EQ(r.qubit, 1u);
  EXPECT_GT(count_kind<RefocusOp>(xix), 0u);
  for (const auto& ms : ops_of<GlobalSpinSpinOp>(xix)) EXPECT_EQ(ms.qubits.size(), 4u);

  const auto xx = compile_refocused(PauliString::parse("XX"));
  EXPECT_EQ(count_kind<RefocusOp>(xx), 0u);
  EXPECT_EQ(count_kind<GlobalSpinSpinOp>(xx), 1u);
  EXPECT_EQ(ops_of<GlobalSpinSpinOp>(xx)[0].axis, SpinAxis::x());
  EXPECT_EQ(data_rotations(xx), 0u);
}

oracle::Matrix reduced_density(const StateVector& s, std::size_t q) {
  const std::size_t n = s.num_qubits();
  const std::size_t mask = std::size_t{1} << (n - 1 - q);
  oracle::Matrix rho = oracle::Matrix::Zero(2, 2);
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const std::size_t ia = (i & ~mask) | (a ? mask : 0);
        const std::size_t ib = (i & ~mask) | (b ? mask : 0);
        if (ia != i) continue;
        rho(a, b) += s[ia] * std::conj(s[ib]);
      }
    }
  }
  return rho;
}

TEST(Refocused, ExcludedQubitsAreUnchanged) {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 3 + k % 3;
    auto stab = random_pauli(n, rng, false);
    std::vector<PauliAxis> axes(stab.axes().begin(), stab.axes().end());
    axes[k % n] = PauliAxis::I;
    if (std::count(axes.begin(), axes.end(), PauliAxis::I) == static_cast<long>(n)) axes[(k + 1) % n] = PauliAxis::Z;
    stab = PauliString(axes);
    const auto g = compile_refocused(stab);
    const auto u = schedule_unitary(g);
    StateVector input = StateVector::random(1, rng);
    for (std::size_t q = 1; q < n + 1; ++q) input = input.tensor(StateVector::random(1, rng));
    const auto out = u.apply(input);
    for (std::size_t q = 0; q < n; ++q) {
      if (stab[q] != PauliAxis::I) continue;
      const oracle::Matrix rin = reduced_density(input, q);
      const oracle::Matrix rout = reduced_density(out, q);
      // Pure input, so fidelity is the overlap tr(ρ_in ρ_out).
      EXPECT_GE((rin * rout).trace().real(), 1.0 - 1e-10) << stab.str();
    }
  }
}

TEST(Css, Examples) {
  const auto xxxx = compile_css(PauliString::parse("XXXX"));
  const auto ms = ops_of<GlobalSpinSpinOp>(xxxx);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].axis, SpinAxis::equatorial(0.0));
  EXPECT_EQ(data_rotations(xxxx), 0u);

  const auto yyii = compile_css(PauliString::parse("YYII"));
  const auto yms = ops_of<GlobalSpinSpinOp>(yyii);
  ASSERT_EQ(yms.size(), 1u);
  EXPECT_EQ(yms[0].axis, SpinAxis::equatorial(-std::numbers::pi / 2));
  EXPECT_EQ(yms[0].qubits, (std::vector<std::size_t>{0, 1, 4}));
  EXPECT_EQ(data_rotations(yyii), 0u);

  EXPECT_THROW(compile_css(PauliString::parse("XZXX")), CompileError);
  EXPECT_THROW(compile_css(PauliString::parse("XYII")), CompileError);
  EXPECT_THROW(compile_css(PauliString::parse("ZZ")), CompileError);
}

TEST(Baseline, Examples) {
  EXPECT_EQ(baseline_cnot(PauliString::parse("ZZZZ")).cost().two_qubit_ops, 4u);
  EXPECT_EQ(baseline_cnot(PauliString::parse("Z")).cost().two_qubit_ops, 1u);
  const auto xiz = baseline_cnot(PauliString::parse("XIZ"));
  EXPECT_EQ(xiz.cost().two_qubit_ops, 2u);
  EXPECT_EQ(data_rotations(xiz), 2u);
  EXPECT_EQ(xiz.cost().collective_ops, 0u);
}

TEST(Baseline, DeterministicOnEigenstates) {
  std::mt19937_64 rng(62);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 1 + k % 7;
    const auto stab = random_pauli(n, rng, false);
    const int eigen = (rng() & 1) ? 1 : -1;
    const auto data = dense::project_eigenstate(StateVector::random(n, rng), stab, eigen);
    const auto r = replay(baseline_cnot(stab), data, static_cast<std::uint64_t>(k));
    EXPECT_EQ(r.outcome, eigen) << stab.str();
    EXPECT_NEAR(r.post_state.fidelity(data), 1.0, 1e-12);
  }
}

TEST(Replay, MatchesProtocolUnitary) {
  std::mt19937_64 rng(63);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 8;
    const auto stab = random_pauli(n, rng, false);
    for (auto st : kSpinSpinStrategies) {
      EXPECT_LT(replay_deviation(compile(stab, st)), 1e-10) << to_string(st) << " " << stab.str();
    }
  }
  for (const char* css : {"XXXX", "IXIX", "YYIY", "Y", "XXXXXXXX"}) {
    EXPECT_LT(replay_deviation(compile_css(PauliString::parse(css))), 1e-10) << css;
  }
}

TEST(Replay, StrategiesGiveIdenticalResults) {
  std::mt19937_64 rng(64);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 2 + k % 5;
    const auto stab = random_pauli(n, rng, false);
    const auto data = StateVector::random(n, rng);
    const auto seed = static_cast<std::uint64_t>(k);
    const auto reference = protocol::run_syndrome(data, stab, seed);
    for (auto st : {Strategy::Conjugated, Strategy::Refocused, Strategy::Addressed, Strategy::Baseline}) {
      const auto r = replay(compile(stab, st), data, seed);
      EXPECT_EQ(r.outcome, reference.result.outcome) << to_string(st) << " " << stab.str();
      EXPECT_NEAR(r.post_state.fidelity(reference.post_state), 1.0, 1e-10) << to_string(st) << " " << stab.str();
    }
  }
}

TEST(CountLaw, CollectiveOpsDependOnParityOnly) {
  std::mt19937_64 rng(65);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto stab = random_pauli(n, rng, false);
    const std::size_t want = (stab.weight() + 1) % 2 == 0 ? 1 : 2;
    EXPECT_EQ(compile_conjugated(stab).cost().collective_ops, want);
    EXPECT_EQ(compile_addressed(stab).cost().collective_ops, want);
    EXPECT_EQ(compile_refocused(stab).cost().collective_ops, want) << stab.str();
    EXPECT_EQ(baseline_cnot(stab).cost().two_qubit_ops, stab.weight());
    const auto full = PauliString(std::vector<PauliAxis>(n, PauliAxis::X));
    EXPECT_EQ(compile_refocused(full).cost().collective_ops, n % 2 == 1 ? 1u : 2u);
    EXPECT_EQ(compile_css(full).cost().collective_ops, n % 2 == 1 ? 1u : 2u);
  }
  for (std::size_t n : {100, 500, 1000}) {
    const auto parity = protocol::parity_observable(n);
    EXPECT_EQ(compile_conjugated(parity).cost().collective_ops, n % 2 == 1 ? 1u : 2u);
    EXPECT_EQ(baseline_cnot(parity).cost().two_qubit_ops, n);
  }
}

TEST(CountLaw, RefocusedSegmentsWithIdentities) {
  // K = 2^ceil(log2(|E|+1)) segments when identity positions are present.
  EXPECT_EQ(count_kind<GlobalSpinSpinOp>(compile_refocused(PauliString::parse("XIX"))), 2u);
  EXPECT_EQ(count_kind<GlobalSpinSpinOp>(compile_refocused(PauliString::parse("XIIX"))), 4u);
  EXPECT_EQ(count_kind<GlobalSpinSpinOp>(compile_refocused(PauliString::parse("XIIIX"))), 4u);
  // The echo sequence is one collective gate.
  const auto g = compile_refocused(PauliString::parse("XIIX"));
  EXPECT_EQ(g.cost().collective_ops, 2u);
  EXPECT_EQ(g.cost().refocus_ops, count_kind<RefocusOp>(g));
}

TEST(GeneratorPowers, PowersOfGeneratorAreConjugatedPowersOfJz) {
  std::mt19937_64 rng(66);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 1 + k % 6;
    std::string axes;
    for (std::size_t q = 0; q < n; ++q) axes.push_back("XYZ"[rng() % 3]);
    oracle::Matrix r = oracle::Matrix::Identity(1, 1);
    for (char c : axes) {
      const auto fr = frame_rotation(PauliAxis::Z, *axis_from_char(c));
      const oracle::Matrix m = fr ? oracle::Matrix(dense::rotation_matrix(fr->axis, fr->angle)) : oracle::sigma('I');
      r = oracle::kron(r, m);
    }
    const oracle::Matrix d = oracle::generator(axes);
    const oracle::Matrix jz = oracle::generator(std::string(n, 'Z'));
    oracle::Matrix dm = oracle::identity(n), jm = oracle::identity(n);
    for (int m = 1; m <= 3; ++m) {
      dm = dm * d;
      jm = jm * jz;
      EXPECT_LT(oracle::max_diff(dm, r.adjoint() * jm * r), 1e-12) << axes << " m=" << m;
    }
  }
}

TEST(Cost, DepthAndCompare) {
  const auto reports = cost_compare({protocol::parity_observable(4), protocol::parity_observable(8),
                                     protocol::parity_observable(16)},
                                    {Strategy::Conjugated, Strategy::Baseline});
  ASSERT_EQ(reports.size(), 6u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.baseline_two_qubit, r.n);
    if (r.strategy == Strategy::Conjugated) EXPECT_EQ(r.cost.collective_ops, 2u);
  }
  EXPECT_EQ(reports[0].classical_parity_depth, 2u);
  EXPECT_EQ(reports[4].classical_parity_depth, 4u);
  EXPECT_LT(reports[4].cost.depth, reports[5].cost.depth);
  EXPECT_TRUE(cost_compare({PauliString::parse("XX")}, {}).empty());
}

TEST(Cost, CssCodeGenerators) {
  for (const char* g : {"IIIXXXX", "IXXIIXX", "XIXIXIX"}) {
    const auto s = compile_css(PauliString::parse(g));
    EXPECT_EQ(count_kind<GlobalSpinSpinOp>(s), 1u) << g;
    EXPECT_EQ(s.cost().collective_ops, 2u) << g;
  }
}

TEST(TextFormat, RoundTrips) {
  std::mt19937_64 rng(67);
  for (int k = 0; k < 40; ++k) {
    const auto stab = random_pauli(1 + k % 6, rng, false);
    for (auto st : {Strategy::Conjugated, Strategy::Refocused, Strategy::Addressed, Strategy::Baseline}) {
      const auto g = compile(stab, st);
      const auto text = render(g);
      const auto back = parse_schedule(text);
      EXPECT_EQ(render(back), text);
      EXPECT_EQ(back.cost(), g.cost());
    }
  }
}

TEST(TextFormat, RejectsMalformedInput) {
  const auto good = render(compile_conjugated(PauliString::parse("XZ")));
  EXPECT_NO_THROW(parse_schedule(good));
  EXPECT_THROW(parse_schedule("ROT 1 x 0.5\n"), ScheduleParseError);
  EXPECT_THROW(parse_schedule(good + "FOO 1\n"), ScheduleParseError);
  EXPECT_THROW(parse_schedule(good + "MEASURE 9\n"), ScheduleParseError);
  EXPECT_THROW(parse_schedule(good + "ROT 1 w 0.5\n"), ScheduleParseError);
  std::string tampered = good;
  tampered.replace(tampered.find("\"depth\":"), 9, "\"depth\":9");
  EXPECT_THROW(parse_schedule(tampered), ScheduleParseError);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(TextFormat, GoldenFiles) {
  const std::string dir = SPINPAULI_GOLDEN_DIR;
  const std::pair<const char*, GateSchedule> cases[] = {
      {"conjugated_XIZ.sched", compile_conjugated(PauliString::parse("XIZ"))},
      {"refocused_XIX.sched", compile_refocused(PauliString::parse("XIX"))},
      {"css_XXXX.sched", compile_css(PauliString::parse("XXXX"))},
      {"addressed_XYZ.sched", compile_addressed(PauliString::parse("XYZ"))},
      {"baseline_XIZ.sched", baseline_cnot(PauliString::parse("XIZ"))},
  };
  for (const auto& [name, g] : cases) {
    const auto golden = read_file(dir + "/" + name);
    ASSERT_FALSE(golden.empty()) << name;
    EXPECT_EQ(render(g), golden) << name;
  }
}

}  // namespace
}  // namespace spinpauli::compiler
