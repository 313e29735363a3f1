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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "spinpauli/pauli.hpp"

namespace spinpauli {

/// Direction of a single-qubit spin operator: one of the Pauli axes or an
/// equatorial Mølmer–Sørensen axis σ_φ = cos(φ)σx − sin(φ)σy.
struct SpinAxis {
  enum class Kind : std::uint8_t { X, Y, Z, Phi };

  Kind kind = Kind::Z;
  double phi = 0.0;

  static constexpr SpinAxis x() { return {Kind::X, 0.0}; }
  static constexpr SpinAxis y() { return {Kind::Y, 0.0}; }
  static constexpr SpinAxis z() { return {Kind::Z, 0.0}; }

  /// φ = 0 and φ = −π/2 collapse onto x and y.
  static SpinAxis equatorial(double phi) {
    if (phi == 0.0) return x();
    if (phi == -std::numbers::pi / 2) return y();
    return {Kind::Phi, phi};
  }

  static SpinAxis from(PauliAxis a) {
    switch (a) {
      case PauliAxis::X: return x();
      case PauliAxis::Y: return y();
      case PauliAxis::Z: return z();
      case PauliAxis::I: break;
    }
    throw PauliError("identity has no spin axis");
  }

  std::optional<PauliAxis> pauli() const {
    switch (kind) {
      case Kind::X: return PauliAxis::X;
      case Kind::Y: return PauliAxis::Y;
      case Kind::Z: return PauliAxis::Z;
      case Kind::Phi: break;
    }
    return std::nullopt;
  }

  /// Unit Bloch vector (n_x, n_y, n_z) with σ_n = n·σ.
  std::array<double, 3> bloch() const {
    switch (kind) {
      case Kind::X: return {1.0, 0.0, 0.0};
      case Kind::Y: return {0.0, 1.0, 0.0};
      case Kind::Z: return {0.0, 0.0, 1.0};
      case Kind::Phi: break;
    }
    return {std::cos(phi), -std::sin(phi), 0.0};
  }

  friend bool operator==(const SpinAxis&, const SpinAxis&) = default;
};

}  // namespace spinpauli
