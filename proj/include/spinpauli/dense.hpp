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

// Exact dense statevector and operator backend.
//
// Basis convention: qubit 0 is the most significant bit of an amplitude index,
// bit value 0 is |↓⟩ and 1 is |↑⟩, and σz|↑⟩ = +|↑⟩. In this ordering
//
//   σx = [[0, 1], [1, 0]],  σy = [[0, i], [-i, 0]],  σz = diag(-1, +1),
//
// which keeps σxσy = iσz.

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinpauli/pauli.hpp"
#include "spinpauli/spin_axis.hpp"

namespace spinpauli::dense {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr std::size_t kMaxStateQubits = 14;
inline constexpr std::size_t kMaxOperatorQubits = 10;
inline constexpr double kNormTolerance = 1e-12;

class DenseLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a projection has (numerically) no weight.
class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_state_limit(std::size_t n) {
  if (n == 0) throw DimensionError("register must have at least one qubit");
  if (n > kMaxStateQubits) {
    throw DenseLimitError("dense state limited to " + std::to_string(kMaxStateQubits) + " qubits, got " +
                          std::to_string(n));
  }
}

inline void check_operator_limit(std::size_t n) {
  if (n == 0) throw DimensionError("register must have at least one qubit");
  if (n > kMaxOperatorQubits) {
    throw DenseLimitError("dense operators limited to " + std::to_string(kMaxOperatorQubits) +
                          " qubits, got " + std::to_string(n));
  }
}

inline Matrix2 pauli_matrix(PauliAxis a) {
  const Complex i{0.0, 1.0};
  Matrix2 m;
  switch (a) {
    case PauliAxis::I: m << 1, 0, 0, 1; break;
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, i, -i, 0; break;
    case PauliAxis::Z: m << -1, 0, 0, 1; break;
  }
  return m;
}

inline Matrix2 spin_matrix(const SpinAxis& axis) {
  const auto n = axis.bloch();
  return n[0] * pauli_matrix(PauliAxis::X) + n[1] * pauli_matrix(PauliAxis::Y) +
         n[2] * pauli_matrix(PauliAxis::Z);
}

/// exp(−i (angle/2) σ_axis).
inline Matrix2 rotation_matrix(const SpinAxis& axis, double angle) {
  return std::cos(angle / 2) * Matrix2::Identity() - Complex{0.0, std::sin(angle / 2)} * spin_matrix(axis);
}

/// Hermitian unitary V with V σz V = σ_axis, used to diagonalize a spin axis.
inline Matrix2 diagonalizing_frame(const SpinAxis& axis) {
  const auto n = axis.bloch();
  if (n[2] > 1.0 - 1e-15) return Matrix2::Identity();
  if (n[2] < -1.0 + 1e-15) return pauli_matrix(PauliAxis::X);
  return (spin_matrix(axis) + pauli_matrix(PauliAxis::Z)) / std::sqrt(2.0 * (1.0 + n[2]));
}

/// Bit mask of qubit q inside an n-qubit amplitude index.
inline std::size_t qubit_mask(std::size_t n, std::size_t q) { return std::size_t{1} << (n - 1 - q); }

namespace kernels {

inline void apply_1q(std::span<Complex> amps, std::size_t n, std::size_t q, const Matrix2& m) {
  const std::size_t mask = qubit_mask(n, q);
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & mask) continue;
    const Complex a0 = amps[base];
    const Complex a1 = amps[base | mask];
    amps[base] = m00 * a0 + m01 * a1;
    amps[base | mask] = m10 * a0 + m11 * a1;
  }
}

/// Multiplies every amplitude by phase(m) where m = (set − unset)/2 over the
/// participating qubits, i.e. the eigenvalue of a z-frame collective spin.
template <class PhaseFn>
void apply_collective_diagonal(std::span<Complex> amps, std::size_t participant_mask, std::size_t participants,
                               PhaseFn&& phase_of_twice_m) {
  // Phases depend only on the popcount; tabulate them once.
  std::vector<Complex> table(participants + 1);
  for (std::size_t set = 0; set <= participants; ++set) {
    table[set] = phase_of_twice_m(2 * static_cast<long>(set) - static_cast<long>(participants));
  }
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    amps[idx] *= table[static_cast<std::size_t>(std::popcount(idx & participant_mask))];
  }
}

inline void apply_pauli(std::span<Complex> amps, std::size_t n, const PauliString& p) {
  std::size_t xmask = 0, ymask = 0, zmask = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto m = qubit_mask(n, q);
    if (p[q] == PauliAxis::X) xmask |= m;
    if (p[q] == PauliAxis::Y) ymask |= m;
    if (p[q] == PauliAxis::Z) zmask |= m;
  }
  const std::size_t flip = xmask | ymask;
  // Per qubit: σy|↓⟩ = −i|↑⟩, σy|↑⟩ = i|↓⟩, σz|↓⟩ = −|↓⟩.
  static constexpr Complex kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::size_t ny = static_cast<std::size_t>(std::popcount(ymask));
  std::vector<Complex> out(amps.size());
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    // Contribution to output index idx^flip from input idx.
    const std::size_t y_up = static_cast<std::size_t>(std::popcount(idx & ymask));
    const std::size_t z_down = static_cast<std::size_t>(std::popcount(~idx & zmask));
    const std::size_t ipow = p.phase_exp() + y_up + 3 * (ny - y_up) + 2 * z_down;
    out[idx ^ flip] = kIPow[ipow % 4] * amps[idx];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

/// Flips `target` when `control` is |↑⟩.
inline void apply_cnot(std::span<Complex> amps, std::size_t n, std::size_t control, std::size_t target) {
  const std::size_t cm = qubit_mask(n, control);
  const std::size_t tm = qubit_mask(n, target);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if ((idx & cm) && !(idx & tm)) std::swap(amps[idx], amps[idx | tm]);
  }
}

}  // namespace kernels

/// A normalized 2^N amplitude vector.
class StateVector {
 public:
  /// |↓, N⟩.
  explicit StateVector(std::size_t n) : n_(n) {
    check_state_limit(n);
    amps_.assign(std::size_t{1} << n, Complex{0.0, 0.0});
    amps_[0] = 1.0;
  }

  /// Computational basis state from a string of '0'/'d' (↓) and '1'/'u' (↑), qubit 1 first.
  static StateVector basis(std::string_view bits) {
    StateVector s(bits.size());
    std::size_t idx = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
      const char c = bits[q];
      if (c == '1' || c == 'u') {
        idx |= qubit_mask(bits.size(), q);
      } else if (c != '0' && c != 'd') {
        throw DimensionError(std::string("invalid basis character '") + c + "'");
      }
    }
    s.amps_[0] = 0.0;
    s.amps_[idx] = 1.0;
    return s;
  }

  static StateVector from_index(std::size_t n, std::size_t index) {
    StateVector s(n);
    if (index >= s.amps_.size()) throw DimensionError("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  /// Normalizes the given amplitudes; rejects a zero vector.
  static StateVector from_amplitudes(std::size_t n, std::vector<Complex> amps) {
    StateVector s(n);
    if (amps.size() != s.amps_.size()) throw DimensionError("amplitude count does not match 2^n");
    s.amps_ = std::move(amps);
    const double nrm = s.norm();
    if (nrm < 1e-300) throw DimensionError("cannot normalize a zero vector");
    for (auto& a : s.amps_) a /= nrm;
    return s;
  }

  /// (|↓…↓⟩ + |↑…↑⟩)/√2.
  static StateVector ghz(std::size_t n) {
    StateVector s(n);
    s.amps_[0] = 1.0 / std::sqrt(2.0);
    s.amps_.back() = 1.0 / std::sqrt(2.0);
    return s;
  }

  template <class Rng>
  static StateVector random(std::size_t n, Rng& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto& a : amps) a = {g(rng), g(rng)};
    return from_amplitudes(n, std::move(amps));
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t idx) const { return amps_[idx]; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  void renormalize() {
    const double nrm = norm();
    for (auto& a : amps_) a /= nrm;
  }

  /// ⟨this|other⟩.
  Complex inner(const StateVector& other) const {
    if (other.n_ != n_) throw DimensionError("inner product of states with different qubit counts");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

  double fidelity(const StateVector& other) const { return std::norm(inner(other)); }

  /// this ⊗ other, with this on the most significant qubits.
  StateVector tensor(const StateVector& other) const {
    StateVector out(n_ + other.n_);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      for (std::size_t j = 0; j < other.amps_.size(); ++j) {
        out.amps_[(i << other.n_) | j] = amps_[i] * other.amps_[j];
      }
    }
    return out;
  }

  /// Keeps the branch where the last qubit equals `up` and drops that qubit.
  StateVector drop_last_qubit(bool up) const {
    if (n_ < 2) throw DimensionError("cannot drop the only qubit");
    std::vector<Complex> amps(amps_.size() / 2);
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = amps_[(i << 1) | (up ? 1 : 0)];
    return from_amplitudes(n_ - 1, std::move(amps));
  }

 private:
  std::size_t n_;
  std::vector<Complex> amps_;
};

/// A 2^N × 2^N matrix.
class DenseOperator {
 public:
  DenseOperator(std::size_t n, Eigen::MatrixXcd m) : n_(n), m_(std::move(m)) {
    check_operator_limit(n);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    if (m_.rows() != dim || m_.cols() != dim) throw DimensionError("operator shape does not match 2^n");
  }

  static DenseOperator identity(std::size_t n) {
    check_operator_limit(n);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    return DenseOperator(n, Eigen::MatrixXcd::Identity(dim, dim));
  }

  /// Builds the operator whose columns are `apply` applied to each basis vector.
  template <class Fn>
  static DenseOperator from_column_map(std::size_t n, Fn&& apply) {
    auto op = identity(n);
    for (Eigen::Index c = 0; c < op.m_.cols(); ++c) {
      std::span<Complex> col(op.m_.col(c).data(), static_cast<std::size_t>(op.m_.rows()));
      apply(col);
    }
    return op;
  }

  std::size_t num_qubits() const { return n_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  DenseOperator adjoint() const { return DenseOperator(n_, m_.adjoint()); }

  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    if (a.n_ != b.n_) throw DimensionError("operator product dimension mismatch");
    return DenseOperator(a.n_, a.m_ * b.m_);
  }

  StateVector apply(const StateVector& s) const {
    if (s.num_qubits() != n_) throw DimensionError("operator/state dimension mismatch");
    Eigen::Map<const Eigen::VectorXcd> v(s.amplitudes().data(), static_cast<Eigen::Index>(s.dimension()));
    Eigen::VectorXcd out = m_ * v;
    return StateVector::from_amplitudes(n_, std::vector<Complex>(out.data(), out.data() + out.size()));
  }

  bool is_unitary(double tol = kNormTolerance) const {
    const auto dim = m_.rows();
    return ((m_.adjoint() * m_) - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  std::size_t n_;
  Eigen::MatrixXcd m_;
};

inline double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("operator dimension mismatch");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

/// Elementwise deviation after removing the best single global phase from b.
inline double max_abs_diff_up_to_phase(const DenseOperator& a, const DenseOperator& b) {
  const auto& am = a.matrix();
  const auto& bm = b.matrix();
  Eigen::Index r = 0, c = 0;
  am.cwiseAbs().maxCoeff(&r, &c);
  const Complex ratio = am(r, c) / bm(r, c);
  if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) return am.cwiseAbs().maxCoeff();
  const Complex phase = ratio / std::abs(ratio);
  return (am - phase * bm).cwiseAbs().maxCoeff();
}

inline void require_dims(const StateVector& s, std::size_t n) {
  if (s.num_qubits() != n) {
    throw DimensionError("state has " + std::to_string(s.num_qubits()) + " qubits, operation expects " +
                         std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// Operator construction.

/// Matrix of i^phase_exp · ⊗ σ_{k_l}, built as a monomial matrix.
inline DenseOperator build_pauli(const PauliString& p) {
  const std::size_t n = p.size();
  check_operator_limit(n);
  return DenseOperator::from_column_map(n, [&](std::span<Complex> col) { kernels::apply_pauli(col, n, p); });
}

/// Matrix of D_N = 1/2 Σ_l σ_{l,k_l}.
inline DenseOperator build_generator(const DGenerator& d) {
  const std::size_t n = d.size();
  check_operator_limit(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t q = 0; q < n; ++q) {
    if (d[q] == PauliAxis::I) continue;
    m += 0.5 * build_pauli(PauliString::single(n, q, d[q])).matrix();
  }
  return DenseOperator(n, std::move(m));
}

/// J_k over n qubits, i.e. the uniform generator.
inline DenseOperator build_collective(std::size_t n, PauliAxis k) {
  return build_generator(DGenerator::uniform(n, k));
}

// ---------------------------------------------------------------------------
// Gate application on amplitude spans. These are shared by the state and
// operator paths.

struct LocalSpin {
  std::size_t qubit;
  SpinAxis axis;
};

inline std::vector<LocalSpin> local_spins(const DGenerator& d) {
  std::vector<LocalSpin> out;
  for (std::size_t q = 0; q < d.size(); ++q) {
    if (d[q] != PauliAxis::I) out.push_back({q, SpinAxis::from(d[q])});
  }
  return out;
}

/// exp(−iα D²) with D = 1/2 Σ σ_{axis} over `spins`: rotate each participant
/// into its z frame, apply e^{−iα m²}, rotate back.
inline void apply_spin_spin_inplace(std::span<Complex> amps, std::size_t n, std::span<const LocalSpin> spins,
                                    double alpha) {
  std::size_t mask = 0;
  for (const auto& s : spins) {
    kernels::apply_1q(amps, n, s.qubit, diagonalizing_frame(s.axis));
    mask |= qubit_mask(n, s.qubit);
  }
  kernels::apply_collective_diagonal(amps, mask, spins.size(), [alpha](long twice_m) {
    const double m = 0.5 * static_cast<double>(twice_m);
    return std::polar(1.0, -alpha * m * m);
  });
  for (const auto& s : spins) kernels::apply_1q(amps, n, s.qubit, diagonalizing_frame(s.axis));
}

/// exp(−iα D) = ∏ exp(−i(α/2) σ_l).
inline void apply_linear_inplace(std::span<Complex> amps, std::size_t n, std::span<const LocalSpin> spins,
                                 double alpha) {
  for (const auto& s : spins) kernels::apply_1q(amps, n, s.qubit, rotation_matrix(s.axis, alpha));
}

// ---------------------------------------------------------------------------
// State operations.

inline StateVector apply_spin_spin(StateVector s, const DGenerator& d, double alpha) {
  require_dims(s, d.size());
  const auto spins = local_spins(d);
  apply_spin_spin_inplace(s.amplitudes(), s.num_qubits(), spins, alpha);
  return s;
}

inline StateVector apply_linear(StateVector s, const DGenerator& d, double alpha) {
  require_dims(s, d.size());
  const auto spins = local_spins(d);
  apply_linear_inplace(s.amplitudes(), s.num_qubits(), spins, alpha);
  return s;
}

inline StateVector apply_rotation(StateVector s, std::size_t qubit, const SpinAxis& axis, double angle) {
  if (qubit >= s.num_qubits()) throw DimensionError("qubit index out of range");
  kernels::apply_1q(s.amplitudes(), s.num_qubits(), qubit, rotation_matrix(axis, angle));
  return s;
}

/// R_k = exp[−i(π/2) J_k] restricted to `qubits`; `adjoint` applies R_k†.
inline StateVector collective_rotation(StateVector s, PauliAxis axis, std::span<const std::size_t> qubits,
                                       bool adjoint = false) {
  if (qubits.empty()) throw DimensionError("collective rotation needs at least one qubit");
  if (axis == PauliAxis::I) throw DimensionError("collective rotation axis must be x, y or z");
  const auto m = rotation_matrix(SpinAxis::from(axis), adjoint ? -std::numbers::pi / 2 : std::numbers::pi / 2);
  for (auto q : qubits) {
    if (q >= s.num_qubits()) throw DimensionError("qubit index out of range");
  }
  for (auto q : qubits) kernels::apply_1q(s.amplitudes(), s.num_qubits(), q, m);
  return s;
}

inline StateVector apply_pauli(StateVector s, const PauliString& p) {
  require_dims(s, p.size());
  kernels::apply_pauli(s.amplitudes(), s.num_qubits(), p);
  return s;
}

inline StateVector apply_cnot(StateVector s, std::size_t control, std::size_t target) {
  if (control >= s.num_qubits() || target >= s.num_qubits() || control == target) {
    throw DimensionError("invalid cnot qubits");
  }
  kernels::apply_cnot(s.amplitudes(), s.num_qubits(), control, target);
  return s;
}

/// (1 + eigen·P)/2 |ψ⟩, renormalized.
inline StateVector project_eigenstate(const StateVector& s, const PauliString& p, int eigen) {
  if (!p.is_hermitian() || p.phase_exp() != 0) {
    throw DimensionError("projection needs a Pauli string with phase_exp 0");
  }
  if (eigen != 1 && eigen != -1) throw DimensionError("eigenvalue must be +1 or -1");
  require_dims(s, p.size());
  StateVector ps = apply_pauli(s, p);
  std::vector<Complex> amps(s.dimension());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = 0.5 * (s[i] + static_cast<double>(eigen) * ps[i]);
  double nrm = 0.0;
  for (const auto& a : amps) nrm += std::norm(a);
  if (std::sqrt(nrm) < 1e-10) throw ProjectionError("state has no component in the requested eigenspace");
  return StateVector::from_amplitudes(s.num_qubits(), std::move(amps));
}

/// Probability of the +1 outcome when measuring a Hermitian Pauli string.
inline double plus_probability(const StateVector& s, const PauliString& p) {
  require_dims(s, p.size());
  const StateVector ps = apply_pauli(s, p);
  // ⟨ψ|(1+P)/2|ψ⟩ = (1 + ⟨ψ|P|ψ⟩)/2
  const double expectation = s.inner(ps).real();
  return std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
}

/// Projective measurement of P given a uniform draw u ∈ [0,1): +1 iff u < Pr(+1).
inline int measure_pauli(StateVector& s, const PauliString& p, double u) {
  if (!p.is_hermitian()) throw DimensionError("measured Pauli string must be Hermitian");
  const double p_plus = plus_probability(s, p);
  const int outcome = u < p_plus ? 1 : -1;
  const auto& signed_p = p.phase_exp() == 2 ? p.with_phase(0) : p;
  const int eigen = p.phase_exp() == 2 ? -outcome : outcome;
  s = project_eigenstate(s, signed_p, eigen);
  return outcome;
}

// ---------------------------------------------------------------------------
// The closed form of the α = π/2 interaction.

/// (e^{−iπ/(4E)}/√2)(1 + i^{N+E} P_N), E = 1 for even N, E = 2 for odd N.
inline DenseOperator u_n_closed_form(const DGenerator& d) {
  if (d.has_identity()) throw DimensionError("closed form needs a generator without identity positions");
  const std::size_t n = d.size();
  check_operator_limit(n);
  const int e = (n % 2 == 0) ? 1 : 2;
  static constexpr Complex kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex omega = kIPow[(n + static_cast<std::size_t>(e)) % 4];
  const Complex prefactor = std::polar(1.0 / std::sqrt(2.0), -std::numbers::pi / (4.0 * e));
  const auto p = build_pauli(d.product());
  const auto dim = p.matrix().rows();
  return DenseOperator(n, prefactor * (Eigen::MatrixXcd::Identity(dim, dim) + omega * p.matrix()));
}

/// Left-hand side of the closed form: exp(−i π/2 D²), times exp(−i π/2 D) for odd weight.
inline DenseOperator u_n_composed(const DGenerator& d) {
  const std::size_t n = d.size();
  check_operator_limit(n);
  const auto spins = local_spins(d);
  const bool odd = spins.size() % 2 == 1;
  return DenseOperator::from_column_map(n, [&](std::span<Complex> col) {
    apply_spin_spin_inplace(col, n, spins, std::numbers::pi / 2);
    if (odd) apply_linear_inplace(col, n, spins, std::numbers::pi / 2);
  });
}

}  // namespace spinpauli::dense
