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

// Stabilizer tableau with destabilizer rows (Aaronson–Gottesman layout).
//
// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers. Storage is
// column-major: each qubit owns a packed bit column of x bits and one of z
// bits over all 2n rows, so single- and two-qubit Cliffords touch 2n/64 words.
//
// Gates are specified by their conjugation action on Pauli operators, which is
// the same for the physical σ operators as for the textbook ones. Global phase
// is not tracked.

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinpauli/pauli.hpp"

namespace spinpauli::clifford {

class TableauError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StabilizerTableau {
 public:
  using Word = std::uint64_t;

  /// |↓, N⟩: destabilizer i = X_i, stabilizer i = −Z_i.
  explicit StabilizerTableau(std::size_t n) : n_(n), words_((2 * n + 63) / 64) {
    if (n == 0) throw TableauError("tableau needs at least one qubit");
    x_.assign(n_ * words_, 0);
    z_.assign(n_ * words_, 0);
    r_.assign(words_, 0);
    for (std::size_t q = 0; q < n_; ++q) {
      set_bit(xcol(q), q, true);
      set_bit(zcol(q), n_ + q, true);
      set_bit(r_.data(), n_ + q, true);
    }
  }

  std::size_t num_qubits() const { return n_; }

  // -------------------------------------------------------------------------
  // Primitive Cliffords.

  /// (σx + σz)/√2: X ↔ Z, Y → −Y.
  void h(std::size_t q) {
    check_qubit(q);
    Word* x = xcol(q);
    Word* z = zcol(q);
    for (std::size_t w = 0; w < words_; ++w) {
      r_[w] ^= x[w] & z[w];
      std::swap(x[w], z[w]);
    }
  }

  /// exp(−iπ/4 σz): X → Y, Y → −X.
  void s(std::size_t q) {
    check_qubit(q);
    Word* x = xcol(q);
    Word* z = zcol(q);
    for (std::size_t w = 0; w < words_; ++w) {
      r_[w] ^= x[w] & z[w];
      z[w] ^= x[w];
    }
  }

  /// exp(+iπ/4 σz): X → −Y, Y → X.
  void s_dag(std::size_t q) {
    check_qubit(q);
    Word* x = xcol(q);
    Word* z = zcol(q);
    for (std::size_t w = 0; w < words_; ++w) {
      r_[w] ^= x[w] & ~z[w];
      z[w] ^= x[w];
    }
  }

  /// The Clifford with X_c → X_c X_t and Z_t → Z_c Z_t. As a matrix this flips
  /// the target when the control is |↓⟩ (σz = −1).
  void cx(std::size_t c, std::size_t t) {
    check_qubit(c);
    check_qubit(t);
    if (c == t) throw TableauError("cx needs distinct qubits");
    Word* xc = xcol(c);
    Word* zc = zcol(c);
    Word* xt = xcol(t);
    Word* zt = zcol(t);
    for (std::size_t w = 0; w < words_; ++w) {
      r_[w] ^= xc[w] & zt[w] & ~(xt[w] ^ zc[w]);
      xt[w] ^= xc[w];
      zc[w] ^= zt[w];
    }
  }

  /// Flips `target` when `control` is |↑⟩, matching the dense backend's CNOT.
  void cnot(std::size_t control, std::size_t target) {
    cx(control, target);
    flip_signs(zcol(target));
  }

  void pauli(const PauliString& p) {
    check_length(p);
    const auto anti = anticommutation_mask(p);
    for (std::size_t w = 0; w < words_; ++w) r_[w] ^= anti[w];
  }

  /// exp(−iπ/4 σ_axis), or exp(+iπ/4 σ_axis) when `adjoint`.
  void quarter_turn(std::size_t q, PauliAxis axis, bool adjoint = false) {
    auto phase = [&] { adjoint ? s_dag(q) : s(q); };
    switch (axis) {
      case PauliAxis::I: return;
      case PauliAxis::Z: phase(); return;
      case PauliAxis::X: h(q); phase(); h(q); return;
      case PauliAxis::Y: s_dag(q); h(q); phase(); h(q); s(q); return;
    }
  }

  /// exp(−iπ/4 σ_k σ_l), the pairwise factor (1 − iσ_kσ_l)/√2.
  void pair_factor(std::size_t k, std::size_t l, PauliAxis axis_k, PauliAxis axis_l) {
    if (k == l) throw TableauError("pair factor needs distinct qubits");
    if (axis_k == PauliAxis::I || axis_l == PauliAxis::I) throw TableauError("pair factor axes must be x, y or z");
    to_z_frame(k, axis_k);
    to_z_frame(l, axis_l);
    zz_quarter(k, l);
    from_z_frame(l, axis_l);
    from_z_frame(k, axis_k);
  }

  /// exp(−iπ/2 D²) as N'(N'−1)/2 pairwise factors over the participating
  /// qubits. Returns the number of pairwise factors applied.
  std::size_t spin_spin(const DGenerator& d) {
    check_length(d.size());
    if (d.weight() < 2) throw TableauError("spin-spin gate needs at least two participating qubits");
    const auto parts = d.participants();
    for (auto q : parts) to_z_frame(q, d[q]);
    std::size_t count = 0;
    for (std::size_t l = 1; l < parts.size(); ++l) {
      for (std::size_t k = 0; k < l; ++k) {
        zz_quarter(parts[k], parts[l]);
        ++count;
      }
    }
    for (auto q : parts) from_z_frame(q, d[q]);
    return count;
  }

  /// exp(−iπ/2 D) = ∏ exp(−iπ/4 σ_m).
  void linear(const DGenerator& d) {
    check_length(d.size());
    for (auto q : d.participants()) quarter_turn(q, d[q]);
  }

  // -------------------------------------------------------------------------
  // Measurement.

  /// Outcome of measuring `p` if it is determined by the state.
  std::optional<int> peek(const PauliString& p) const {
    check_measurable(p);
    const auto anti = anticommutation_mask(p);
    for (std::size_t row = n_; row < 2 * n_; ++row) {
      if (get_bit(anti.data(), row)) return std::nullopt;
    }
    return deterministic_outcome(p, anti);
  }

  /// Projective measurement of a Hermitian Pauli string. `u` is a uniform
  /// draw in [0,1) that decides a random outcome: +1 iff u < 1/2.
  int measure(const PauliString& p, double u) {
    check_measurable(p);
    const auto anti = anticommutation_mask(p);
    std::size_t pivot = 2 * n_;
    for (std::size_t row = n_; row < 2 * n_; ++row) {
      if (get_bit(anti.data(), row)) {
        pivot = row;
        break;
      }
    }
    if (pivot == 2 * n_) return deterministic_outcome(p, anti);

    const int outcome = u < 0.5 ? 1 : -1;
    for (std::size_t row = 0; row < 2 * n_; ++row) {
      if (row != pivot && row != pivot - n_ && get_bit(anti.data(), row)) rowsum(row, pivot);
    }
    copy_row(pivot - n_, pivot);
    // Stabilizer becomes outcome·P.
    const bool negative = (p.phase_exp() == 2) != (outcome == -1);
    for (std::size_t q = 0; q < n_; ++q) {
      set_bit(xcol(q), pivot, x_bit(p[q]));
      set_bit(zcol(q), pivot, z_bit(p[q]));
    }
    set_bit(r_.data(), pivot, negative);
    return outcome;
  }

  // -------------------------------------------------------------------------
  // Inspection.

  PauliString row(std::size_t index) const {
    std::vector<PauliAxis> axes(n_);
    for (std::size_t q = 0; q < n_; ++q) axes[q] = axis_from_bits(get_bit(xcol(q), index), get_bit(zcol(q), index));
    return PauliString(std::move(axes), get_bit(r_.data(), index) ? 2 : 0);
  }

  std::vector<PauliString> stabilizers() const {
    std::vector<PauliString> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(row(n_ + i));
    return out;
  }

  std::vector<PauliString> destabilizers() const {
    std::vector<PauliString> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(row(i));
    return out;
  }

  /// Symplectic validity: destabilizer i anticommutes with stabilizer i and
  /// commutes with every other row; stabilizers commute pairwise.
  bool is_valid() const {
    std::vector<std::vector<Word>> rx(2 * n_), rz(2 * n_);
    const std::size_t qw = (n_ + 63) / 64;
    for (std::size_t row = 0; row < 2 * n_; ++row) {
      rx[row].assign(qw, 0);
      rz[row].assign(qw, 0);
      for (std::size_t q = 0; q < n_; ++q) {
        if (get_bit(xcol(q), row)) rx[row][q / 64] |= Word{1} << (q % 64);
        if (get_bit(zcol(q), row)) rz[row][q / 64] |= Word{1} << (q % 64);
      }
    }
    auto anticommute = [&](std::size_t a, std::size_t b) {
      int parity = 0;
      for (std::size_t w = 0; w < qw; ++w) {
        parity ^= std::popcount((rx[a][w] & rz[b][w]) ^ (rz[a][w] & rx[b][w])) & 1;
      }
      return parity == 1;
    };
    for (std::size_t a = 0; a < 2 * n_; ++a) {
      for (std::size_t b = a + 1; b < 2 * n_; ++b) {
        const bool expected = (a < n_) && (b == a + n_);
        if (anticommute(a, b) != expected) return false;
      }
    }
    return true;
  }

  /// This state tensored with a fresh |↓⟩ qubit appended at the end.
  StabilizerTableau with_appended_qubit() const {
    StabilizerTableau out(n_ + 1);
    const std::size_t m = n_ + 1;
    auto remap = [&](std::size_t row) { return row < n_ ? row : row + 1; };
    for (std::size_t row = 0; row < 2 * n_; ++row) {
      const std::size_t dst = remap(row);
      for (std::size_t q = 0; q < m; ++q) {
        const bool x = q < n_ && get_bit(xcol(q), row);
        const bool z = q < n_ && get_bit(zcol(q), row);
        set_bit(out.xcol(q), dst, x);
        set_bit(out.zcol(q), dst, z);
      }
      set_bit(out.r_.data(), dst, get_bit(r_.data(), row));
    }
    return out;
  }

 private:
  static bool get_bit(const Word* col, std::size_t row) { return (col[row / 64] >> (row % 64)) & 1; }

  static void set_bit(Word* col, std::size_t row, bool value) {
    const Word m = Word{1} << (row % 64);
    if (value) col[row / 64] |= m; else col[row / 64] &= ~m;
  }

  Word* xcol(std::size_t q) { return x_.data() + q * words_; }
  Word* zcol(std::size_t q) { return z_.data() + q * words_; }
  const Word* xcol(std::size_t q) const { return x_.data() + q * words_; }
  const Word* zcol(std::size_t q) const { return z_.data() + q * words_; }

  void check_qubit(std::size_t q) const {
    if (q >= n_) throw TableauError("qubit index " + std::to_string(q) + " out of range");
  }

  void check_length(std::size_t len) const {
    if (len != n_) {
      throw TableauError("expected " + std::to_string(n_) + " qubits, got " + std::to_string(len));
    }
  }
  void check_length(const PauliString& p) const { check_length(p.size()); }

  void check_measurable(const PauliString& p) const {
    check_length(p);
    if (!p.is_hermitian()) throw TableauError("measured Pauli string must be Hermitian");
  }

  void flip_signs(const Word* mask) {
    for (std::size_t w = 0; w < words_; ++w) r_[w] ^= mask[w];
  }

  /// Bit per row: does the row anticommute with p?
  std::vector<Word> anticommutation_mask(const PauliString& p) const {
    std::vector<Word> anti(words_, 0);
    for (std::size_t q = 0; q < n_; ++q) {
      const bool px = x_bit(p[q]);
      const bool pz = z_bit(p[q]);
      if (!px && !pz) continue;
      const Word* x = xcol(q);
      const Word* z = zcol(q);
      for (std::size_t w = 0; w < words_; ++w) {
        Word t = 0;
        if (px) t ^= z[w];
        if (pz) t ^= x[w];
        anti[w] ^= t;
      }
    }
    // Clear padding bits past the last row.
    const std::size_t rows = 2 * n_;
    if (rows % 64) anti.back() &= (Word{1} << (rows % 64)) - 1;
    return anti;
  }

  void to_z_frame(std::size_t q, PauliAxis a) {
    if (a == PauliAxis::X) {
      h(q);
    } else if (a == PauliAxis::Y) {
      s_dag(q);
      h(q);
    }
  }

  void from_z_frame(std::size_t q, PauliAxis a) {
    if (a == PauliAxis::X) {
      h(q);
    } else if (a == PauliAxis::Y) {
      h(q);
      s(q);
    }
  }

  /// exp(−iπ/4 Z_k Z_l) = CX · exp(−iπ/4 Z_l) · CX.
  void zz_quarter(std::size_t k, std::size_t l) {
    cx(k, l);
    s(l);
    cx(k, l);
  }

  /// Exponent of i picked up by the single-site product (x1,z1)·(x2,z2).
  static int g(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return static_cast<int>(z2) - static_cast<int>(x2);
    if (x1) return static_cast<int>(z2) * (2 * static_cast<int>(x2) - 1);
    return static_cast<int>(x2) * (1 - 2 * static_cast<int>(z2));
  }

  /// row h ← row i · row h (rows must commute).
  void rowsum(std::size_t h, std::size_t i) {
    int phase = 2 * static_cast<int>(get_bit(r_.data(), h)) + 2 * static_cast<int>(get_bit(r_.data(), i));
    for (std::size_t q = 0; q < n_; ++q) {
      Word* x = xcol(q);
      Word* z = zcol(q);
      const bool xi = get_bit(x, i), zi = get_bit(z, i);
      const bool xh = get_bit(x, h), zh = get_bit(z, h);
      phase += g(xi, zi, xh, zh);
      set_bit(x, h, xi != xh);
      set_bit(z, h, zi != zh);
    }
    set_bit(r_.data(), h, ((phase % 4) + 4) % 4 == 2);
  }

  void copy_row(std::size_t dst, std::size_t src) {
    for (std::size_t q = 0; q < n_; ++q) {
      set_bit(xcol(q), dst, get_bit(xcol(q), src));
      set_bit(zcol(q), dst, get_bit(zcol(q), src));
    }
    set_bit(r_.data(), dst, get_bit(r_.data(), src));
  }

  /// p lies in ± the stabilizer group; multiply together the stabilizers whose
  /// destabilizers anticommute with p and read off the sign.
  int deterministic_outcome(const PauliString& p, const std::vector<Word>& anti) const {
    std::vector<std::uint8_t> sx(n_, 0), sz(n_, 0);
    int phase = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!get_bit(anti.data(), i)) continue;
      const std::size_t row = n_ + i;
      phase += 2 * static_cast<int>(get_bit(r_.data(), row));
      for (std::size_t q = 0; q < n_; ++q) {
        const bool xi = get_bit(xcol(q), row), zi = get_bit(zcol(q), row);
        phase += g(xi, zi, sx[q] != 0, sz[q] != 0);
        sx[q] ^= static_cast<std::uint8_t>(xi);
        sz[q] ^= static_cast<std::uint8_t>(zi);
      }
    }
    phase = ((phase % 4) + 4) % 4;
    for (std::size_t q = 0; q < n_; ++q) {
      if ((sx[q] != 0) != x_bit(p[q]) || (sz[q] != 0) != z_bit(p[q])) {
        throw std::logic_error("tableau invariant broken: product of stabilizers does not match measured Pauli");
      }
    }
    // Product equals (−1)^(phase/2) · |p|; p itself carries (−1)^(phase_exp/2).
    const bool negative = (phase == 2) != (p.phase_exp() == 2);
    return negative ? -1 : 1;
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<Word> x_;
  std::vector<Word> z_;
  std::vector<Word> r_;
};

}  // namespace spinpauli::clifford
