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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinpauli {

/// Raised for malformed Pauli text, length mismatches and degenerate generators.
class PauliError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr char to_char(PauliAxis a) {
  constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(a)];
}

inline constexpr std::optional<PauliAxis> axis_from_char(char c) {
  switch (c) {
    case 'I': return PauliAxis::I;
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default: return std::nullopt;
  }
}

/// Symplectic bits of an axis: X=(1,0), Z=(0,1), Y=(1,1).
inline constexpr bool x_bit(PauliAxis a) { return a == PauliAxis::X || a == PauliAxis::Y; }
inline constexpr bool z_bit(PauliAxis a) { return a == PauliAxis::Z || a == PauliAxis::Y; }

inline constexpr PauliAxis axis_from_bits(bool x, bool z) {
  if (x) return z ? PauliAxis::Y : PauliAxis::X;
  return z ? PauliAxis::Z : PauliAxis::I;
}

/// Single-site product a·b = i^phase · result.
inline constexpr std::pair<PauliAxis, int> multiply_axes(PauliAxis a, PauliAxis b) {
  if (a == PauliAxis::I) return {b, 0};
  if (b == PauliAxis::I) return {a, 0};
  if (a == b) return {PauliAxis::I, 0};
  const auto result = axis_from_bits(x_bit(a) != x_bit(b), z_bit(a) != z_bit(b));
  // Cyclic order X -> Y -> Z -> X picks up +i, the reverse order -i.
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {result, cyclic ? 1 : 3};
}

inline constexpr bool axes_anticommute(PauliAxis a, PauliAxis b) {
  return a != PauliAxis::I && b != PauliAxis::I && a != b;
}

/// A tensor product i^phase_exp · σ_{1,k_1} ⊗ ... ⊗ σ_{N,k_N}.
///
/// Text form is `[+-]?i?[IXYZ]+`, leftmost character is qubit 1. The canonical
/// rendering omits a leading `+`.
class PauliString {
 public:
  explicit PauliString(std::vector<PauliAxis> axes, int phase_exp = 0)
      : axes_(std::move(axes)), phase_exp_(((phase_exp % 4) + 4) % 4) {
    if (axes_.empty()) throw PauliError("PauliString must have at least one qubit");
  }

  static PauliString identity(std::size_t n) {
    return PauliString(std::vector<PauliAxis>(n, PauliAxis::I));
  }

  /// Single-axis string of length n with `axis` on `qubit`.
  static PauliString single(std::size_t n, std::size_t qubit, PauliAxis axis) {
    if (qubit >= n) throw PauliError("qubit index out of range");
    std::vector<PauliAxis> axes(n, PauliAxis::I);
    axes[qubit] = axis;
    return PauliString(std::move(axes));
  }

  static PauliString parse(std::string_view text) {
    if (text.empty()) throw PauliError("empty Pauli string");
    int phase = 0;
    std::size_t pos = 0;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') phase += 2;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      phase += 1;
      ++pos;
    }
    if (pos == text.size()) throw PauliError("Pauli string has no axes: '" + std::string(text) + "'");
    std::vector<PauliAxis> axes;
    axes.reserve(text.size() - pos);
    for (; pos < text.size(); ++pos) {
      const auto axis = axis_from_char(text[pos]);
      if (!axis) {
        throw PauliError("invalid character '" + std::string(1, text[pos]) + "' in Pauli string '" +
                         std::string(text) + "'");
      }
      axes.push_back(*axis);
    }
    return PauliString(std::move(axes), phase);
  }

  std::size_t size() const { return axes_.size(); }
  PauliAxis operator[](std::size_t q) const { return axes_[q]; }
  std::span<const PauliAxis> axes() const { return axes_; }
  int phase_exp() const { return phase_exp_; }

  /// Hermitian (and involutory) iff the phase is ±1.
  bool is_hermitian() const { return phase_exp_ % 2 == 0; }

  std::size_t weight() const {
    return static_cast<std::size_t>(
        std::count_if(axes_.begin(), axes_.end(), [](PauliAxis a) { return a != PauliAxis::I; }));
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < axes_.size(); ++q) {
      if (axes_[q] != PauliAxis::I) out.push_back(q);
    }
    return out;
  }

  PauliString with_phase(int phase_exp) const { return PauliString(axes_, phase_exp); }

  std::string str() const {
    static constexpr const char* kPrefix[] = {"", "i", "-", "-i"};
    std::string out = kPrefix[phase_exp_];
    for (auto a : axes_) out.push_back(to_char(a));
    return out;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<PauliAxis> axes_;
  int phase_exp_;
};

inline PauliString parse(std::string_view text) { return PauliString::parse(text); }
inline std::string render(const PauliString& p) { return p.str(); }
inline std::size_t weight(const PauliString& p) { return p.weight(); }

inline void require_same_length(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw PauliError("Pauli length mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
}

inline PauliString multiply(const PauliString& a, const PauliString& b) {
  require_same_length(a, b);
  std::vector<PauliAxis> axes(a.size());
  int phase = a.phase_exp() + b.phase_exp();
  for (std::size_t q = 0; q < a.size(); ++q) {
    const auto [axis, p] = multiply_axes(a[q], b[q]);
    axes[q] = axis;
    phase += p;
  }
  return PauliString(std::move(axes), phase);
}

inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

inline bool commutes(const PauliString& a, const PauliString& b) {
  require_same_length(a, b);
  std::size_t anti = 0;
  for (std::size_t q = 0; q < a.size(); ++q) anti += axes_anticommute(a[q], b[q]) ? 1 : 0;
  return anti % 2 == 0;
}

/// Axis assignment defining D_N = 1/2 Σ_l σ_{l,k_l}. I entries do not participate.
class DGenerator {
 public:
  explicit DGenerator(std::vector<PauliAxis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw PauliError("DGenerator must have at least one qubit");
    if (std::all_of(axes_.begin(), axes_.end(), [](PauliAxis a) { return a == PauliAxis::I; })) {
      throw PauliError("DGenerator must have at least one non-identity axis");
    }
  }

  static DGenerator uniform(std::size_t n, PauliAxis k) {
    return DGenerator(std::vector<PauliAxis>(n, k));
  }

  static DGenerator from_pauli(const PauliString& p) {
    return DGenerator(std::vector<PauliAxis>(p.axes().begin(), p.axes().end()));
  }

  static DGenerator parse(std::string_view text) {
    const auto p = PauliString::parse(text);
    if (p.phase_exp() != 0) throw PauliError("generator text must not carry a phase: '" + std::string(text) + "'");
    return from_pauli(p);
  }

  std::size_t size() const { return axes_.size(); }
  PauliAxis operator[](std::size_t q) const { return axes_[q]; }
  std::span<const PauliAxis> axes() const { return axes_; }

  std::size_t weight() const {
    return static_cast<std::size_t>(
        std::count_if(axes_.begin(), axes_.end(), [](PauliAxis a) { return a != PauliAxis::I; }));
  }

  std::vector<std::size_t> participants() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < axes_.size(); ++q) {
      if (axes_[q] != PauliAxis::I) out.push_back(q);
    }
    return out;
  }

  bool has_identity() const { return weight() != axes_.size(); }

  /// The Pauli product P_N built from the same axes.
  PauliString product() const { return PauliString(axes_); }

  std::string str() const { return product().str(); }

  friend bool operator==(const DGenerator&, const DGenerator&) = default;

 private:
  std::vector<PauliAxis> axes_;
};

/// Result of dropping identity positions: `generator` has no I, and
/// `index_map[j]` is the original position of compacted qubit j.
struct SupportReduction {
  DGenerator generator;
  std::vector<std::size_t> index_map;
  std::size_t original_size;

  DGenerator restore() const {
    std::vector<PauliAxis> axes(original_size, PauliAxis::I);
    for (std::size_t j = 0; j < index_map.size(); ++j) axes[index_map[j]] = generator[j];
    return DGenerator(std::move(axes));
  }
};

inline SupportReduction reduce_support(const DGenerator& d) {
  std::vector<PauliAxis> axes;
  std::vector<std::size_t> map;
  for (std::size_t q = 0; q < d.size(); ++q) {
    if (d[q] != PauliAxis::I) {
      axes.push_back(d[q]);
      map.push_back(q);
    }
  }
  return SupportReduction{DGenerator(std::move(axes)), std::move(map), d.size()};
}

}  // namespace spinpauli
