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
#include "qdt/lattice.hpp"
#include "qdt/scenario.hpp"
#include "support/generators.hpp"

using namespace qdt;

namespace {

// Simple prospects over the identity amplitude matrix, so p = |c|^2.
ProbabilisticState from_probabilities(const std::vector<double> &p,
                                      NormalizationMode mode = NormalizationMode::given) {
    std::vector<std::string> names;
    std::vector<StateVector> states;
    StateVector psi(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        names.push_back("p" + std::to_string(i));
        states.push_back(basis_vector(i, p.size()));
        psi[i] = std::sqrt(p[i]);
    }
    return evaluate_all(names, states, StateOfMind::normalized(psi), {mode, 1e-10, false});
}

ProbabilisticState h2_state() {
    const auto c = compile(h2_scenario());
    return evaluate_all(c.names, c.states, c.psi, c.policy);
}

} // namespace

TEST(Compare, Examples) {
    const auto s = from_probabilities({0.64, 0.36});
    EXPECT_EQ(compare(0, 1, s).relation, Relation::greater);
    EXPECT_EQ(compare(1, 0, s).relation, Relation::less);
    EXPECT_NEAR(compare(0, 1, s).p_gap, 0.28, 1e-15);

    const auto eq = from_probabilities({0.5, 0.5});
    EXPECT_EQ(compare(0, 1, eq).relation, Relation::equal);

    const auto h2 = h2_state();
    const auto r = compare("pi1", "pi2", h2);
    EXPECT_EQ(r.relation, Relation::greater);
    EXPECT_NEAR(r.q_gap, 1.0, 1e-12);
}

TEST(Compare, UnevaluatedProspect) {
    const auto s = from_probabilities({0.5, 0.5});
    EXPECT_THROW(compare("p0", "missing", s), StateError);
    EXPECT_THROW(compare(0, 7, s), StateError);
}

TEST(Compare, TotalAndTransitive) {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto raw = testkit::random_general(rng, 2, 32, true);
        const auto s = evaluate_all(raw.names, raw.states, StateOfMind(raw.psi),
                                    {NormalizationMode::given, 1e-10, false});
        const std::size_t n = s.prospects.size();
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const auto ab = compare(a, b, s, 0.0).relation;
                const auto ba = compare(b, a, s, 0.0).relation;
                ASSERT_EQ(ab == Relation::greater, ba == Relation::less);
                ASSERT_EQ(ab == Relation::equal, ba == Relation::equal);
                for (std::size_t c = 0; c < n; ++c) {
                    if (ab == Relation::greater &&
                        compare(b, c, s, 0.0).relation == Relation::greater) {
                        ASSERT_EQ(compare(a, c, s, 0.0).relation, Relation::greater);
                    }
                }
            }
        }
    }
}

TEST(Optimal, Examples) {
    const auto s = from_probabilities({0.36, 0.64});
    EXPECT_EQ(optimal_prospect(s).name, "p1");
    EXPECT_FALSE(optimal_prospect(s).tie);

    const auto flat = from_probabilities({0.25, 0.25, 0.25, 0.25});
    const auto o = optimal_prospect(flat);
    EXPECT_EQ(o.index, 0u);
    EXPECT_TRUE(o.tie);

    EXPECT_EQ(optimal_prospect(h2_state()).name, "pi1");
}

TEST(Optimal, AttainsTheMaximumExactly) {
    Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const auto raw = testkit::random_general(rng, 1, 64, trial % 2 == 0);
        const auto s = evaluate_all(raw.names, raw.states, StateOfMind(raw.psi),
                                    {NormalizationMode::given, 1e-10, false});
        double best = 0.0;
        for (const auto &p : s.prospects) {
            best = std::max(best, p.p_raw);
        }
        ASSERT_EQ(s.prospects[optimal_prospect(s).index].p_raw, best);
        ASSERT_EQ(ranking(s).front(), optimal_prospect(s).index);
    }
}

TEST(Optimal, EmptyLattice) {
    ProbabilisticState empty;
    EXPECT_THROW(optimal_prospect(empty), InvalidScenario);
}

TEST(Ranking, DescendingWithDeclarationOrderOnTies) {
    const auto s = from_probabilities({0.2, 0.3, 0.2, 0.3});
    EXPECT_EQ(ranking(s), (std::vector<std::size_t>{1, 3, 0, 2}));
}

TEST(Ranking, ArgmaxInvariantUnderRenorm) {
    Rng rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const auto raw = testkit::random_general(rng, 1, 64, false);
        const StateOfMind psi(raw.psi);
        const auto given =
            evaluate_all(raw.names, raw.states, psi, {NormalizationMode::given, 1e-10, false});
        if (!(given.sum_p > 0.0)) {
            continue;
        }
        const auto renorm =
            evaluate_all(raw.names, raw.states, psi, {NormalizationMode::renorm, 1e-10, false});
        ASSERT_EQ(optimal_prospect(given).index, optimal_prospect(renorm).index);
    }
}

TEST(Criterion, H2) {
    const auto s = h2_state();
    // diagonal gap 0 > q(pi2) - q(pi1) = -1
    EXPECT_NEAR(s.prospects[1].q - s.prospects[0].q, -1.0, 1e-12);
    EXPECT_TRUE(preference_criterion("pi1", "pi2", s));
    EXPECT_FALSE(preference_criterion("pi2", "pi1", s));
}

TEST(Criterion, IdenticalProspectsAreNotPreferred) {
    const auto s = h2_state();
    EXPECT_FALSE(preference_criterion(0, 0, s));
    EXPECT_FALSE(preference_criterion(1, 1, s));
}

TEST(Criterion, AgreesWithDirectComparisonOnUnitaryScenarios) {
    Rng rng(53);
    int compared = 0;
    for (std::uint64_t seed = 1; compared < 1000; ++seed) {
        const auto raw = testkit::random_unitary(seed, 2, 16);
        const auto s = evaluate_all(raw.names, raw.states, StateOfMind(raw.psi),
                                    {NormalizationMode::strict, 1e-10, true});
        for (std::size_t a = 0; a + 1 < s.prospects.size(); ++a) {
            const auto i = testkit::uniform_index(rng, s.prospects.size());
            const auto j = testkit::uniform_index(rng, s.prospects.size());
            if (std::abs(s.prospects[i].p_raw - s.prospects[j].p_raw) <= 1e-12) {
                continue;
            }
            ASSERT_EQ(preference_criterion(i, j, s), s.prospects[i].p_raw > s.prospects[j].p_raw);
            ++compared;
        }
    }
}

TEST(Attraction, Compare) {
    EXPECT_EQ(attraction_compare(-0.5, 0.5), Attraction::more_repulsive);
    EXPECT_EQ(attraction_compare(0.5, -0.5), Attraction::less_repulsive);
    EXPECT_EQ(attraction_compare(0.1, 0.1), Attraction::equal);
    const auto s = h2_state();
    EXPECT_EQ(attraction_compare(s.prospects[1].q, s.prospects[0].q), Attraction::more_repulsive);
}

TEST(Attraction, Antisymmetric) {
    Rng rng(59);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.normal();
        const double b = rng.normal();
        const auto ab = attraction_compare(a, b);
        const auto ba = attraction_compare(b, a);
        if (ab == Attraction::more_repulsive) {
            ASSERT_EQ(ba, Attraction::less_repulsive);
        } else if (ab == Attraction::less_repulsive) {
            ASSERT_EQ(ba, Attraction::more_repulsive);
        } else {
            ASSERT_EQ(ba, Attraction::equal);
        }
    }
}

TEST(Attraction, Rules) {
    const ProspectAttributes uncertain_gain{PayoffSign::gain, Certainty::uncertain,
                                            Activity::neutral};
    const ProspectAttributes certain_gain{PayoffSign::gain, Certainty::certain, Activity::neutral};
    const ProspectAttributes certain_loss{PayoffSign::loss, Certainty::certain, Activity::neutral};
    const ProspectAttributes uncertain_loss{PayoffSign::loss, Certainty::uncertain,
                                            Activity::neutral};
    const ProspectAttributes active_uncertain{PayoffSign::neutral, Certainty::uncertain,
                                              Activity::active};
    const ProspectAttributes passive_uncertain{PayoffSign::neutral, Certainty::uncertain,
                                               Activity::passive};
    const ProspectAttributes passive_certain{PayoffSign::neutral, Certainty::certain,
                                             Activity::passive};
    const ProspectAttributes active_certain{PayoffSign::neutral, Certainty::certain,
                                            Activity::active};

    using R = std::vector<RepulsionRule>;
    EXPECT_EQ(repulsion_rules(uncertain_gain, certain_gain), R{RepulsionRule::more_uncertain_gain});
    EXPECT_TRUE(repulsion_rules(certain_gain, uncertain_gain).empty());
    EXPECT_EQ(repulsion_rules(certain_loss, uncertain_loss), R{RepulsionRule::more_certain_loss});
    EXPECT_EQ(repulsion_rules(active_uncertain, passive_uncertain),
              R{RepulsionRule::more_active_under_uncertainty});
    EXPECT_EQ(repulsion_rules(passive_certain, active_certain),
              R{RepulsionRule::more_passive_under_certainty});
    EXPECT_TRUE(repulsion_rules(active_certain, passive_certain).empty());
    EXPECT_TRUE(repulsion_rules(certain_gain, certain_gain).empty());
}

TEST(Attraction, ConsistencyReport) {
    // uncertain gain (q = -0.2) vs certain gain (q = +0.2): passes
    ProbabilisticState s;
    s.prospects = {ProspectResult{"risky", 0.3, 0.5, -0.2, {}, {}, 0.0},
                   ProspectResult{"safe", 0.7, 0.5, 0.2, {}, {}, 0.0}};
    s.policy.mode = NormalizationMode::given;
    const std::vector<std::optional<ProspectAttributes>> attrs{
        ProspectAttributes{PayoffSign::gain, Certainty::uncertain, Activity::neutral},
        ProspectAttributes{PayoffSign::gain, Certainty::certain, Activity::neutral}};
    const auto report = check_attraction_consistency(attrs, s);
    ASSERT_EQ(report.checks.size(), 1u);
    EXPECT_EQ(report.checks[0].repulsive, "risky");
    EXPECT_TRUE(report.checks[0].pass);
    EXPECT_TRUE(report.all_pass());

    // swapped q signs fail
    s.prospects[0].q = 0.2;
    s.prospects[1].q = -0.2;
    EXPECT_FALSE(check_attraction_consistency(attrs, s).all_pass());

    // same attributes: no constraint
    const std::vector<std::optional<ProspectAttributes>> same{attrs[0], attrs[0]};
    const auto none = check_attraction_consistency(same, s);
    EXPECT_TRUE(none.checks.empty());
    EXPECT_TRUE(none.skipped.empty());

    // missing attributes: skipped and noted
    const std::vector<std::optional<ProspectAttributes>> missing{attrs[0], std::nullopt};
    const auto skipped = check_attraction_consistency(missing, s);
    EXPECT_TRUE(skipped.checks.empty());
    ASSERT_EQ(skipped.skipped.size(), 1u);
}

TEST(Attraction, DisjunctionTemplateWithRepulsiveAct) {
    // cos(phase) < 0 lowers q(act) below q(refrain)
    const auto c = compile(disjunction_scenario(0.8 * std::numbers::pi, 0.5));
    const auto s = evaluate_all(c.names, c.states, c.psi, c.policy);
    EXPECT_LT(s.prospects[0].q, s.prospects[1].q);
    const auto report = check_attraction_consistency(c.attributes, s);
    ASSERT_EQ(report.checks.size(), 1u);
    EXPECT_EQ(report.checks[0].repulsive, "act");
    EXPECT_TRUE(report.checks[0].pass);

    const auto attractive = compile(disjunction_scenario(0.1, 0.5));
    const auto s2 = evaluate_all(attractive.names, attractive.states, attractive.psi,
                                 attractive.policy);
    EXPECT_FALSE(check_attraction_consistency(attractive.attributes, s2).all_pass());
}

TEST(LatticeBounds, EmptyIsMinimumAndOptimumIsMaximum) {
    const std::vector<std::string> names{"nothing", "a", "b"};
    const std::vector<StateVector> states{StateVector(2), {1.0, 0.0}, {0.0, 1.0}};
    const auto s = evaluate_all(names, states, StateOfMind(StateVector{0.6, 0.8}));
    EXPECT_TRUE(check_lattice_bounds({true, false, false}, s));
    EXPECT_FALSE(check_lattice_bounds({false, true, false}, s));
}
