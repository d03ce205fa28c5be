// Copyright 2026 The QDT Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qdt/builtins.hpp"
#include "qdt/hilbert.hpp"
#include "support/generators.hpp"

using namespace qdt;

namespace {
constexpr double h = 1.0 / std::numbers::sqrt2;
}

TEST(BasisIndex, Examples) {
    const auto s22 = MindSpace::from_dims({2, 2});
    EXPECT_EQ(basis_index(ElementaryProspect{{0, 0}}, s22), 0u);
    EXPECT_EQ(basis_index(ElementaryProspect{{1, 1}}, s22), 3u);

    // (1,0,2) in 2x2x3: position found by scanning the enumerated basis
    const auto s223 = MindSpace::from_dims({2, 2, 3});
    std::size_t scanned = s223.dimension();
    for (std::size_t i = 0; i < s223.basis().size(); ++i) {
        if (s223.basis()[i] == ElementaryProspect{{1, 0, 2}}) {
            scanned = i;
        }
    }
    EXPECT_EQ(scanned, 8u);
    EXPECT_EQ(basis_index(ElementaryProspect{{1, 0, 2}}, s223), 8u);
}

TEST(BasisIndex, RoundTripAndBasisOrder) {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto space = MindSpace::from_dims(testkit::random_dims(rng, 1, 2000));
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            ASSERT_EQ(basis_index(space.basis()[i], space), i);
            ASSERT_EQ(basis_unindex(i, space), space.basis()[i]);
        }
    }
}

TEST(BasisIndex, OutOfRange) {
    const auto space = MindSpace::from_dims({2, 2});
    EXPECT_THROW(basis_index(ElementaryProspect{{2, 0}}, space), IndexError);
    EXPECT_THROW(basis_index(ElementaryProspect{{0}}, space), IndexError);
    EXPECT_THROW(basis_unindex(4, space), IndexError);
}

TEST(Inner, OrthonormalBasis) {
    for (std::size_t dim : {1u, 2u, 5u, 12u}) {
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < dim; ++b) {
                const auto v = inner(basis_vector(a, dim), basis_vector(b, dim));
                EXPECT_EQ(v, Amplitude(a == b ? 1.0 : 0.0));
            }
        }
    }
}

TEST(Inner, VacuumAnnihilates) {
    Rng rng(2);
    const auto space = MindSpace::from_dims({3, 2});
    for (int i = 0; i < 20; ++i) {
        const auto v = random_state_of_mind(rng, space.dimension()).vector();
        EXPECT_EQ(inner(v, vacuum(space)), Amplitude{});
        EXPECT_EQ(inner(vacuum(space), v), Amplitude{});
    }
}

TEST(Inner, HandExpansion) {
    const StateVector u{h, h};
    const StateVector v{1.0, 0.0};
    EXPECT_NEAR(std::abs(inner(u, v) - Amplitude(h)), 0.0, 1e-15);
}

TEST(Inner, ConjugateLinearInFirstArgument) {
    const StateVector u{Amplitude{0, 1}, 0.0};
    const StateVector v{1.0, 0.0};
    EXPECT_EQ(inner(u, v), Amplitude(0, -1));
    EXPECT_EQ(inner(v, u), Amplitude(0, 1));
    EXPECT_THROW(inner(u, StateVector{1.0}), DimensionError);
}

TEST(ProspectState, Constructions) {
    const auto space = MindSpace::from_dims({2});
    ProspectSpec empty{"nothing", true, {}, {}, std::nullopt};
    EXPECT_EQ(build_prospect_state(empty, space), vacuum(space));

    ProspectSpec simple{"s", false, {{1}}, {{{{1}}, 1.0}}, std::nullopt};
    EXPECT_EQ(build_prospect_state(simple, space), basis_vector(1, 2));

    const auto h2 = compile(h2_scenario());
    EXPECT_NEAR(h2.states[0][0].real(), 0.70710678118654757, 1e-15);
    EXPECT_NEAR(h2.states[0][1].real(), 0.70710678118654757, 1e-15);
}

TEST(ProspectState, PlacesAmplitudesAtBasisIndex) {
    const auto space = MindSpace::from_dims({2, 3});
    ProspectSpec spec{"p", false, {{1}, {0, 2}}, {}, std::nullopt};
    spec.amplitudes = {{{{1, 0}}, Amplitude{0.5, 0.1}}, {{{1, 2}}, Amplitude{-0.2, 0.3}}};
    const auto v = build_prospect_state(spec, space);
    EXPECT_EQ(v[3], Amplitude(0.5, 0.1));
    EXPECT_EQ(v[5], Amplitude(-0.2, 0.3));
    EXPECT_NEAR(norm_squared(v), 0.25 + 0.01 + 0.04 + 0.09, 1e-15);
}

TEST(ProspectState, SupportViolationPropagates) {
    const auto space = MindSpace::from_dims({2, 2});
    ProspectSpec spec{"bad", false, {{0}, {0}}, {{{{1, 1}}, 1.0}}, std::nullopt};
    EXPECT_THROW(build_prospect_state(spec, space), SupportViolation);
}

TEST(ProductState, Examples) {
    EXPECT_EQ(build_product_state({{1.0, 0.0}, {1.0, 0.0}}), basis_vector(0, 4));
    const auto v = build_product_state({{h, h}, {1.0, 0.0}});
    const StateVector expected{h, 0.0, h, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(v[i] - expected[i]), 0.0, 1e-16);
    }
    const auto space = MindSpace::from_dims({2, 2});
    EXPECT_THROW(build_product_state({{1.0}, {1.0, 0.0}}, space), DimensionError);
    EXPECT_THROW(build_product_state({{1.0, 0.0}}, space), DimensionError);
}

TEST(ProductState, AmplitudeIsProductOfFactorEntries) {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto dims = testkit::random_dims(rng, 1, 300);
        const auto space = MindSpace::from_dims(dims);
        std::vector<std::vector<Amplitude>> sites;
        for (auto m : dims) {
            std::vector<Amplitude> site(m);
            for (auto &x : site) {
                x = rng.complex_normal();
            }
            sites.push_back(normalize(StateVector(site)).amplitudes);
        }
        const auto v = build_product_state(sites, space);
        for (std::size_t a = 0; a < space.dimension(); ++a) {
            Amplitude expected = 1.0;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                expected *= sites[k][space.basis()[a].modes[k]];
            }
            ASSERT_NEAR(std::abs(v[a] - expected), 0.0, 1e-15);
        }
        // unit (x) unit is unit
        ASSERT_NEAR(norm_squared(v), 1.0, 1e-12);
    }
}

TEST(ProductState, OneHotFactorsGiveBasisVectors) {
    for (const auto &dims : {std::vector<std::size_t>{4, 4, 4, 4}, std::vector<std::size_t>{2, 8, 16},
                             std::vector<std::size_t>{3, 5}}) {
        const auto space = MindSpace::from_dims(dims);
        ASSERT_LE(space.dimension(), 256u);
        for (std::size_t a = 0; a < space.dimension(); ++a) {
            std::vector<std::vector<Amplitude>> sites;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                std::vector<Amplitude> site(dims[k]);
                site[space.basis()[a].modes[k]] = 1.0;
                sites.push_back(site);
            }
            ASSERT_EQ(build_product_state(sites, space), basis_vector(a, space.dimension()));
        }
    }
}

TEST(Normalize, Examples) {
    EXPECT_EQ(normalize(StateVector{2.0, 0.0}), (StateVector{1.0, 0.0}));
    const auto v = normalize(StateVector{1.0, 1.0});
    EXPECT_NEAR(v[0].real(), h, 1e-16);
    EXPECT_NEAR(v[1].real(), h, 1e-16);
    EXPECT_THROW(normalize(StateVector{0.0, 0.0}), ZeroNormError);
}

TEST(Normalize, RandomVectorsHaveUnitNorm) {
    Rng rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        StateVector v(12);
        for (auto &x : v.amplitudes) {
            x = rng.complex_normal() * (1.0 + 100.0 * rng.uniform());
        }
        const auto u = normalize(v);
        ASSERT_NEAR(norm_squared(u), 1.0, 1e-12);
        // direction preserved: u is a positive multiple of v
        const auto overlap = inner(u, v);
        ASSERT_NEAR(overlap.imag(), 0.0, 1e-9);
        ASSERT_GT(overlap.real(), 0.0);
    }
}

TEST(StateOfMind, RejectsUnnormalizedAndZero) {
    EXPECT_THROW(StateOfMind(StateVector{1.0, 1.0}), NormalizationError);
    EXPECT_THROW(StateOfMind(StateVector{0.0, 0.0}), ZeroNormError);
    EXPECT_NO_THROW(StateOfMind(StateVector{0.6, 0.8}));
    EXPECT_NO_THROW(StateOfMind::normalized(StateVector{3.0, 4.0}));
}

TEST(AmplitudeMatrix, ColumnDiagnostics) {
    const std::vector<StateVector> rows{{0.9, 0.0}, {0.0, 1.0}};
    const auto m = AmplitudeMatrix::from_states(rows);
    EXPECT_NEAR(m.column_norm_squared(0), 0.81, 1e-15);
    EXPECT_NEAR(m.column_norm_max_dev(), 0.19, 1e-15);
    const std::vector<StateVector> overlap{{h, h}, {h, h}};
    EXPECT_NEAR(AmplitudeMatrix::from_states(overlap).column_norm_max_dev(), 0.0, 1e-15);
    EXPECT_NEAR(AmplitudeMatrix::from_states(overlap).column_gram_max_dev(), 1.0, 1e-15);
}
