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

// Numerical checks of the α = π/2 spin-spin identities on the dense backend.
// Every check compares two operators elementwise, global phase included.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spinpauli/dense.hpp"

namespace spinpauli::dense {

inline constexpr double kDefaultTolerance = 1e-12;

struct VerificationReport {
  std::string check;
  std::size_t n = 0;
  std::string axes;
  std::string branch;
  double max_dev = 0.0;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  bool pass = false;
};

inline std::string branch_of(std::size_t n) { return n % 2 == 0 ? "even" : "odd"; }

inline VerificationReport make_report(std::string check, std::size_t n, std::string axes, double dev, double tol,
                                      std::uint64_t seed) {
  return VerificationReport{std::move(check), n, std::move(axes), branch_of(n), dev, tol, seed, dev <= tol};
}

template <class Rng>
DGenerator random_generator(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> pick(1, 3);
  std::vector<PauliAxis> axes(n);
  for (auto& a : axes) a = static_cast<PauliAxis>(pick(rng));
  return DGenerator(std::move(axes));
}

/// Haar-distributed unitary from the QR decomposition of a complex Gaussian matrix.
template <class Rng>
Eigen::MatrixXcd haar_unitary(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) z(r, c) = Complex{g(rng), g(rng)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    q.col(c) *= d / std::abs(d);
  }
  return q;
}

/// Left side versus the closed form (e^{−iπ/(4E)}/√2)(1 + i^{N+E} P_N).
inline VerificationReport verify_main_identity(const DGenerator& d, double tol = kDefaultTolerance,
                                               std::uint64_t seed = 0) {
  check_operator_limit(d.size());
  const double dev = max_abs_diff(u_n_composed(d), u_n_closed_form(d));
  return make_report("main_identity", d.size(), d.str(), dev, tol, seed);
}

/// ψ ← (ψ − i σ_kσ_l ψ)/√2 on an amplitude span.
inline void apply_pair_factor_inplace(std::span<Complex> amps, std::size_t n, const PauliString& pair) {
  std::vector<Complex> tmp(amps.begin(), amps.end());
  kernels::apply_pauli(tmp, n, pair);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = s * (amps[i] - Complex{0.0, 1.0} * tmp[i]);
}

inline std::vector<PauliString> pair_factors(const DGenerator& d) {
  std::vector<PauliString> out;
  const auto parts = d.participants();
  for (std::size_t l = 1; l < parts.size(); ++l) {
    for (std::size_t k = 0; k < l; ++k) {
      std::vector<PauliAxis> axes(d.size(), PauliAxis::I);
      axes[parts[k]] = d[parts[k]];
      axes[parts[l]] = d[parts[l]];
      out.emplace_back(std::move(axes));
    }
  }
  return out;
}

/// e^{−iπN/8} ∏_{k<l} (1 − iσ_kσ_l)/√2 with the factors in the given order.
inline DenseOperator pairwise_product(const DGenerator& d, std::span<const PauliString> factors) {
  const std::size_t n = d.size();
  const Complex prefactor = std::polar(1.0, -std::numbers::pi * static_cast<double>(d.weight()) / 8.0);
  return DenseOperator::from_column_map(n, [&](std::span<Complex> col) {
    for (const auto& f : factors) apply_pair_factor_inplace(col, n, f);
    for (auto& a : col) a *= prefactor;
  });
}

/// exp(−i π/2 D²) against the pairwise-factor product, under the natural order
/// and `orderings` seeded random permutations of the factors.
inline VerificationReport verify_product_form(const DGenerator& d, double tol = kDefaultTolerance,
                                              std::uint64_t seed = 0, std::size_t orderings = 3) {
  if (d.weight() < 2) throw DimensionError("product form needs at least two participating qubits");
  const std::size_t n = d.size();
  check_operator_limit(n);
  const auto spins = local_spins(d);
  const auto exact = DenseOperator::from_column_map(
      n, [&](std::span<Complex> col) { apply_spin_spin_inplace(col, n, spins, std::numbers::pi / 2); });
  auto factors = pair_factors(d);
  double dev = max_abs_diff(exact, pairwise_product(d, factors));
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < orderings; ++k) {
    std::shuffle(factors.begin(), factors.end(), rng);
    dev = std::max(dev, max_abs_diff(exact, pairwise_product(d, factors)));
  }
  return make_report("product_form", n, d.str(), dev, tol, seed);
}

/// A commuting pair of Hermitian involutions on a 2-qubit register.
struct InvolutionPair {
  Eigen::Matrix4cd a;
  Eigen::Matrix4cd b;
};

/// a = V diag(s_a) V†, b = V diag(s_b) V† with one shared Haar V, so a and b commute.
template <class Rng>
InvolutionPair random_involutions(Rng& rng) {
  const Eigen::Matrix4cd v = haar_unitary(4, rng);
  auto signs = [&rng]() {
    // Mixed signs, so neither involution is ±1.
    std::array<double, 4> s{1.0, 1.0, -1.0, -1.0};
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng)) s[1] = -1.0; else s[2] = 1.0;
    std::shuffle(s.begin(), s.end(), rng);
    Eigen::Vector4cd d;
    for (int i = 0; i < 4; ++i) d(i) = s[static_cast<std::size_t>(i)];
    return d;
  };
  const Eigen::Vector4cd sa = signs();
  const Eigen::Vector4cd sb = signs();
  return {v * sa.asDiagonal() * v.adjoint(), v * sb.asDiagonal() * v.adjoint()};
}

namespace detail {

/// Applies a 4×4 matrix to the last two qubits of every column block.
inline void apply_ancilla_pair(std::span<Complex> amps, const Eigen::Matrix4cd& m) {
  for (std::size_t base = 0; base < amps.size(); base += 4) {
    Eigen::Map<Eigen::Vector4cd> v(amps.data() + base);
    const Eigen::Vector4cd out = m * v;
    v = out;
  }
}

inline std::vector<Complex> with_ancilla(std::span<const Complex> v, const Eigen::Matrix4cd& m) {
  std::vector<Complex> out(v.begin(), v.end());
  apply_ancilla_pair(out, m);
  return out;
}

inline std::vector<Complex> with_pauli(std::span<const Complex> v, std::size_t n, const PauliString& p) {
  std::vector<Complex> out(v.begin(), v.end());
  kernels::apply_pauli(out, n, p);
  return out;
}

struct LemmaRegister {
  std::size_t total;
  std::vector<PauliString> sigmas;  // σ_k on the data qubits
  PauliString product;              // σ_1 … σ_n
};

inline LemmaRegister lemma_register(std::span<const PauliAxis> axes) {
  const std::size_t total = axes.size() + 2;
  check_operator_limit(total);
  std::vector<PauliString> sigmas;
  std::vector<PauliAxis> prod(total, PauliAxis::I);
  for (std::size_t k = 0; k < axes.size(); ++k) {
    sigmas.push_back(PauliString::single(total, k, axes[k]));
    prod[k] = axes[k];
  }
  return {total, std::move(sigmas), PauliString(std::move(prod))};
}

inline Complex i_pow(std::size_t k) {
  static constexpr Complex kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kIPow[k % 4];
}

inline std::string axes_text(std::span<const PauliAxis> axes) {
  std::string s;
  for (auto a : axes) s.push_back(to_char(a));
  return s;
}

}  // namespace detail

/// ∏_k ½(1 − iσ_k a)(1 − iσ_k b) = ½(1 + i^n σ₁…σ_n − ab + i^n σ₁…σ_n ab) for explicit a, b.
inline VerificationReport verify_lemma_even_with(std::span<const PauliAxis> axes, const InvolutionPair& ab,
                                                 double tol = kDefaultTolerance, std::uint64_t seed = 0) {
  const std::size_t n = axes.size();
  if (n < 2 || n % 2 != 0) throw DimensionError("even lemma needs even n >= 2");
  const auto reg = detail::lemma_register(axes);
  const Complex i{0.0, 1.0};
  const auto lhs = DenseOperator::from_column_map(reg.total, [&](std::span<Complex> v) {
    for (const auto& s : reg.sigmas) {
      // v ← (1 − iσ b) v, then v ← ½(1 − iσ a) v
      auto t = detail::with_pauli(detail::with_ancilla(v, ab.b), reg.total, s);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= i * t[j];
      t = detail::with_pauli(detail::with_ancilla(v, ab.a), reg.total, s);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * (v[j] - i * t[j]);
    }
  });
  const Complex ipn = detail::i_pow(n);
  const auto rhs = DenseOperator::from_column_map(reg.total, [&](std::span<Complex> v) {
    const auto abv = detail::with_ancilla(detail::with_ancilla(v, ab.b), ab.a);
    const auto pv = detail::with_pauli(v, reg.total, reg.product);
    const auto pabv = detail::with_pauli(abv, reg.total, reg.product);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * (v[j] + ipn * pv[j] - abv[j] + ipn * pabv[j]);
  });
  return make_report("lemma_even", n, detail::axes_text(axes), max_abs_diff(lhs, rhs), tol, seed);
}

/// (1 − a − b − ab) ∏_k ½(1 − iσ_k(a+b) − ab) = 1 − ab + (1+ab) i^n σ₁…σ_n for explicit a, b.
inline VerificationReport verify_lemma_odd_with(std::span<const PauliAxis> axes, const InvolutionPair& ab,
                                                double tol = kDefaultTolerance, std::uint64_t seed = 0) {
  const std::size_t n = axes.size();
  if (n < 1 || n % 2 != 1) throw DimensionError("odd lemma needs odd n >= 1");
  const auto reg = detail::lemma_register(axes);
  const Complex i{0.0, 1.0};
  const Eigen::Matrix4cd a_plus_b = ab.a + ab.b;
  const Eigen::Matrix4cd a_times_b = ab.a * ab.b;
  const Eigen::Matrix4cd front = Eigen::Matrix4cd::Identity() - ab.a - ab.b - a_times_b;
  const auto lhs = DenseOperator::from_column_map(reg.total, [&](std::span<Complex> v) {
    for (const auto& s : reg.sigmas) {
      const auto sv = detail::with_pauli(detail::with_ancilla(v, a_plus_b), reg.total, s);
      const auto abv = detail::with_ancilla(v, a_times_b);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * (v[j] - i * sv[j] - abv[j]);
    }
    detail::apply_ancilla_pair(v, front);
  });
  const Complex ipn = detail::i_pow(n);
  const Eigen::Matrix4cd one_plus_ab = Eigen::Matrix4cd::Identity() + a_times_b;
  const Eigen::Matrix4cd one_minus_ab = Eigen::Matrix4cd::Identity() - a_times_b;
  const auto rhs = DenseOperator::from_column_map(reg.total, [&](std::span<Complex> v) {
    const auto pv = detail::with_ancilla(detail::with_pauli(v, reg.total, reg.product), one_plus_ab);
    detail::apply_ancilla_pair(v, one_minus_ab);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += ipn * pv[j];
  });
  return make_report("lemma_odd", n, detail::axes_text(axes), max_abs_diff(lhs, rhs), tol, seed);
}

inline VerificationReport verify_lemma_even(std::size_t n, double tol = kDefaultTolerance, std::uint64_t seed = 0) {
  if (n < 2 || n % 2 != 0) throw DimensionError("even lemma needs even n >= 2");
  check_operator_limit(n + 2);
  std::mt19937_64 rng(seed);
  const auto d = random_generator(n, rng);
  const auto ab = random_involutions(rng);
  return verify_lemma_even_with(d.axes(), ab, tol, seed);
}

inline VerificationReport verify_lemma_odd(std::size_t n, double tol = kDefaultTolerance, std::uint64_t seed = 0) {
  if (n < 1 || n % 2 != 1) throw DimensionError("odd lemma needs odd n >= 1");
  check_operator_limit(n + 2);
  std::mt19937_64 rng(seed);
  const auto d = random_generator(n, rng);
  const auto ab = random_involutions(rng);
  return verify_lemma_odd_with(d.axes(), ab, tol, seed);
}

}  // namespace spinpauli::dense
