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

// Reference matrices built the slow way: explicit Kronecker products and
// matrix exponentials through a Hermitian eigendecomposition. Shares no code
// with the library's kernels.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Basis: qubit 1 is the most significant bit, bit value 0 is |↓⟩.
/// σz = diag(−1, +1), σx = [[0,1],[1,0]], σy = [[0,i],[−i,0]].
inline Matrix sigma(char axis) {
  Matrix m = Matrix::Zero(2, 2);
  const Complex i{0.0, 1.0};
  switch (axis) {
    case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = i; m(1, 0) = -i; break;
    case 'Z': m(0, 0) = -1.0; m(1, 1) = 1.0; break;
    default: throw std::invalid_argument("bad axis");
  }
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  }
  return out;
}

inline Matrix identity(std::size_t n) {
  const auto dim = Eigen::Index{1} << n;
  return Matrix::Identity(dim, dim);
}

/// m on qubit q (0-based) of an n-qubit register.
inline Matrix embed(std::size_t n, std::size_t q, const Matrix& m) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k) out = kron(out, k == q ? m : sigma('I'));
  return out;
}

/// Tensor product of the characters in `axes`, e.g. "XIZ".
inline Matrix pauli(std::string_view axes) {
  Matrix out = Matrix::Identity(1, 1);
  for (char c : axes) out = kron(out, sigma(c));
  return out;
}

/// D = ½ Σ σ over the non-identity characters.
inline Matrix generator(std::string_view axes) {
  const std::size_t n = axes.size();
  Matrix d = Matrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (std::size_t q = 0; q < n; ++q) {
    if (axes[q] != 'I') d += 0.5 * embed(n, q, sigma(axes[q]));
  }
  return d;
}

/// exp(−iθ H) for Hermitian H.
inline Matrix expm_hermitian(const Matrix& h, double theta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd ev = es.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) phases(k) = std::polar(1.0, -theta * ev(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(−i(θ/2) σ_axis) on one qubit.
inline Matrix rotation(char axis, double theta) { return expm_hermitian(sigma(axis), theta / 2); }

inline double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// min over global phases of max |a − e^{iφ} b|, with φ fixed by the largest entry of b.
inline double max_diff_up_to_phase(const Matrix& a, const Matrix& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  const Complex ph = a(r, c) / b(r, c);
  return max_diff(a, (ph / std::abs(ph)) * b);
}

}  // namespace oracle
