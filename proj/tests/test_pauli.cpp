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
#include <string>

#include "oracle.hpp"
#include "spinpauli/pauli.hpp"
#include "spinpauli/simulator.hpp"

namespace spinpauli {
namespace {

std::string plain_axes(const PauliString& p) {
  std::string s;
  for (auto a : p.axes()) s.push_back(to_char(a));
  return s;
}

oracle::Matrix matrix_of(const PauliString& p) {
  static const oracle::Complex kPhase[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhase[p.phase_exp()] * oracle::pauli(plain_axes(p));
}

TEST(PauliString, ParseAndRender) {
  EXPECT_EQ(PauliString::parse("XIZ").str(), "XIZ");
  EXPECT_EQ(PauliString::parse("+XIZ").str(), "XIZ");
  EXPECT_EQ(PauliString::parse("-iYY").str(), "-iYY");
  EXPECT_EQ(PauliString::parse("iZ").phase_exp(), 1);
  EXPECT_EQ(PauliString::parse("-X").phase_exp(), 2);
  EXPECT_EQ(render(parse("-ZZ")), "-ZZ");
}

TEST(PauliString, RejectsMalformedText) {
  EXPECT_THROW(PauliString::parse(""), PauliError);
  EXPECT_THROW(PauliString::parse("-"), PauliError);
  EXPECT_THROW(PauliString::parse("-i"), PauliError);
  EXPECT_THROW(PauliString::parse("XQ"), PauliError);
  EXPECT_THROW(PauliString::parse("x"), PauliError);
  EXPECT_THROW(PauliString::parse("X Y"), PauliError);
}

TEST(PauliString, WeightAndSupport) {
  const auto p = parse("XIZIY");
  EXPECT_EQ(weight(p), 3u);
  EXPECT_EQ(p.support(), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(PauliString::identity(4).weight(), 0u);
  EXPECT_EQ(PauliString::single(3, 1, PauliAxis::Y).str(), "IYI");
}

TEST(PauliString, SingleSiteProducts) {
  EXPECT_EQ(parse("X") * parse("Y"), parse("iZ"));
  EXPECT_EQ(parse("Y") * parse("X"), parse("-iZ"));
  EXPECT_EQ(parse("Y") * parse("Z"), parse("iX"));
  EXPECT_EQ(parse("Z") * parse("X"), parse("iY"));
  EXPECT_EQ(parse("Z") * parse("Z"), parse("I"));
}

TEST(PauliString, LengthMismatchThrows) {
  EXPECT_THROW(parse("XX") * parse("X"), PauliError);
  EXPECT_THROW(commutes(parse("XX"), parse("X")), PauliError);
}

TEST(PauliString, CommutationExamples) {
  EXPECT_TRUE(commutes(parse("XX"), parse("ZZ")));
  EXPECT_FALSE(commutes(parse("XI"), parse("ZI")));
  EXPECT_TRUE(commutes(parse("XIZ"), parse("IYI")));
}

TEST(PauliString, ProductMatchesMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    auto a = random_pauli(n, rng);
    auto b = random_pauli(n, rng);
    a = a.with_phase(static_cast<int>(rng() % 4));
    const auto ab = a * b;
    EXPECT_LT(oracle::max_diff(matrix_of(ab), matrix_of(a) * matrix_of(b)), 1e-14) << a.str() << " " << b.str();
    const oracle::Matrix comm = matrix_of(a) * matrix_of(b) - matrix_of(b) * matrix_of(a);
    EXPECT_EQ(commutes(a, b), comm.cwiseAbs().maxCoeff() < 1e-12) << a.str() << " " << b.str();
  }
}

TEST(PauliString, GroupLaws) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    const auto c = random_pauli(n, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * a, PauliString::identity(n));
    EXPECT_EQ(parse(render(a)), a);
  }
}

TEST(DGenerator, RejectsEmptyOrIdentity) {
  EXPECT_THROW(DGenerator::parse("III"), PauliError);
  EXPECT_THROW(DGenerator(std::vector<PauliAxis>{}), PauliError);
  EXPECT_THROW(DGenerator::parse("-XX"), PauliError);
}

TEST(DGenerator, ParticipantsAndProduct) {
  const auto d = DGenerator::parse("XIZY");
  EXPECT_EQ(d.participants(), (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_TRUE(d.has_identity());
  EXPECT_EQ(d.product(), parse("XIZY"));
  EXPECT_EQ(DGenerator::uniform(3, PauliAxis::Z).str(), "ZZZ");
}

TEST(DGenerator, SupportReductionRoundTrips) {
  const auto d = DGenerator::parse("IXIIZY");
  const auto r = reduce_support(d);
  EXPECT_EQ(r.generator.str(), "XZY");
  EXPECT_EQ(r.index_map, (std::vector<std::size_t>{1, 4, 5}));
  EXPECT_EQ(r.restore(), d);
}

}  // namespace
}  // namespace spinpauli
