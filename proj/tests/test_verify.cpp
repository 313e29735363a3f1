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

#include <random>

#include "spinpauli/verify.hpp"

namespace spinpauli::dense {
namespace {

TEST(MainIdentity, HoldsForMixedAxes) {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int k = 0; k < 5; ++k) {
      const auto d = random_generator(n, rng);
      const auto r = verify_main_identity(d, kDefaultTolerance, 21);
      EXPECT_TRUE(r.pass) << d.str() << " dev " << r.max_dev;
      EXPECT_EQ(r.branch, n % 2 == 0 ? "even" : "odd");
      EXPECT_EQ(r.axes, d.str());
    }
  }
}

TEST(MainIdentity, DetectsWrongPrefactor) {
  // A closed form without the e^{−iπ/(4E)} phase misses by |1 − e^{−iπ/4}|/√2 or more.
  const auto d = DGenerator::parse("XYZZ");
  const auto wrong = DenseOperator(4, u_n_closed_form(d).matrix() * std::polar(1.0, std::numbers::pi / 4));
  EXPECT_GT(max_abs_diff(u_n_composed(d), wrong), 1e-3);
}

TEST(ProductForm, HoldsUnderReordering) {
  std::mt19937_64 rng(22);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto d = random_generator(n, rng);
    const auto r = verify_product_form(d, kDefaultTolerance, 100 + n, 4);
    EXPECT_TRUE(r.pass) << d.str() << " dev " << r.max_dev;
  }
}

TEST(ProductForm, FactorCount) {
  EXPECT_EQ(pair_factors(DGenerator::parse("XYZZ")).size(), 6u);
  EXPECT_EQ(pair_factors(DGenerator::parse("XIZ")).size(), 1u);
  EXPECT_THROW(verify_product_form(DGenerator::parse("IXI")), DimensionError);
}

TEST(Lemmas, EvenAndOdd) {
  for (std::size_t n : {2, 4, 6}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto r = verify_lemma_even(n, kDefaultTolerance, seed);
      EXPECT_TRUE(r.pass) << n << " dev " << r.max_dev;
    }
  }
  for (std::size_t n : {1, 3, 5}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto r = verify_lemma_odd(n, kDefaultTolerance, seed);
      EXPECT_TRUE(r.pass) << n << " dev " << r.max_dev;
    }
  }
  EXPECT_THROW(verify_lemma_even(3), DimensionError);
  EXPECT_THROW(verify_lemma_odd(2), DimensionError);
}

TEST(Lemmas, InvolutionsAreHermitianAndCommute) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) {
    const auto ab = random_involutions(rng);
    EXPECT_LT((ab.a * ab.a - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((ab.a - ab.a.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((ab.a * ab.b - ab.b * ab.a).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GT((ab.a - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-3);
  }
}

TEST(Lemmas, NeedCommutingInvolutions) {
  std::mt19937_64 rng(24);
  const auto first = random_involutions(rng);
  const auto second = random_involutions(rng);
  const InvolutionPair mixed{first.a, second.b};
  ASSERT_GT((mixed.a * mixed.b - mixed.b * mixed.a).cwiseAbs().maxCoeff(), 1e-3);
  const std::vector<PauliAxis> axes{PauliAxis::X, PauliAxis::Z};
  EXPECT_FALSE(verify_lemma_even_with(axes, mixed).pass);
}

TEST(Reports, CarrySeedAndTolerance) {
  const auto r = verify_main_identity(DGenerator::parse("XY"), 1e-9, 77);
  EXPECT_EQ(r.seed, 77u);
  EXPECT_EQ(r.tol, 1e-9);
  EXPECT_EQ(r.check, "main_identity");
  EXPECT_EQ(r.n, 2u);
}

}  // namespace
}  // namespace spinpauli::dense
