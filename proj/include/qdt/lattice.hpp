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
/**
 * @file
 * Ordering of evaluated prospects: preference, the optimal prospect, the
 * utility-plus-attraction criterion and attraction/repulsion checks.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "measure.hpp"

namespace qdt {

/// Tie threshold for user-facing ranking.
inline constexpr double ranking_tie_epsilon = 1e-12;

enum class Relation { less, equal, greater };

struct OrderingRelation {
    Relation relation{Relation::equal};
    double p_gap{}; ///< p(pi1) - p(pi2) on the ordering field
    double q_gap{}; ///< q(pi1) - q(pi2)
};

inline OrderingRelation compare(std::size_t first, std::size_t second,
                                const ProbabilisticState &state,
                                double tie_epsilon = ranking_tie_epsilon) {
    const double p1 = state.ordering_value(first);
    const double p2 = state.ordering_value(second);
    OrderingRelation out;
    out.p_gap = p1 - p2;
    out.q_gap = state.at(first).q - state.at(second).q;
    if (std::abs(out.p_gap) <= tie_epsilon) {
        out.relation = Relation::equal;
    } else {
        out.relation = out.p_gap > 0 ? Relation::greater : Relation::less;
    }
    return out;
}

inline OrderingRelation compare(const std::string &first,
                                const std::string &second,
                                const ProbabilisticState &state,
                                double tie_epsilon = ranking_tie_epsilon) {
    return compare(state.index_of(first), state.index_of(second), state,
                   tie_epsilon);
}

struct OptimalProspect {
    std::string name;
    std::size_t index{};
    /// True when another prospect is within tie_epsilon of the supremum.
    bool tie{false};
};

/**
 * @brief Argmax of the ordering field.
 *
 * The returned prospect attains the maximum exactly; among exact ties the
 * lowest declaration index wins. `tie` is set when any other prospect lies
 * within tie_epsilon of the maximum.
 */
inline OptimalProspect
optimal_prospect(const ProbabilisticState &state,
                 double tie_epsilon = ranking_tie_epsilon) {
    if (state.prospects.empty()) {
        throw InvalidScenario("the prospect lattice is empty");
    }
    std::size_t best = 0;
    double best_p = state.ordering_value(0);
    for (std::size_t i = 1; i < state.prospects.size(); ++i) {
        if (state.ordering_value(i) > best_p) {
            best = i;
            best_p = state.ordering_value(i);
        }
    }
    OptimalProspect out{state.prospects[best].name, best, false};
    for (std::size_t i = 0; i < state.prospects.size(); ++i) {
        if (i != best && best_p - state.ordering_value(i) <= tie_epsilon) {
            out.tie = true;
        }
    }
    return out;
}

/// Prospect indices by descending ordering value; equal values keep
/// declaration order. The first entry is the optimal prospect.
inline std::vector<std::size_t> ranking(const ProbabilisticState &state) {
    std::vector<std::size_t> order(state.prospects.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return state.ordering_value(a) > state.ordering_value(b);
    });
    return order;
}

/**
 * @brief Utility-plus-attraction preference test:
 * sum_a [p(pi1 e_a) - p(pi2 e_a)] > q(pi2) - q(pi1).
 *
 * The direct comparison p_raw(pi1) > p_raw(pi2) is evaluated as well. The
 * two must agree unless the probability gap is within
 * `disagreement_tolerance`; otherwise NumericalError is raised.
 */
inline bool preference_criterion(std::size_t first, std::size_t second,
                                 const ProbabilisticState &state,
                                 double disagreement_tolerance = identity_tolerance) {
    const auto &a = state.at(first);
    const auto &b = state.at(second);
    double diag_gap = 0.0;
    const std::size_t k = std::min(a.conjunction.size(), b.conjunction.size());
    for (std::size_t i = 0; i < k; ++i) {
        diag_gap += a.conjunction[i] - b.conjunction[i];
    }
    const bool criterion = diag_gap > b.q - a.q;
    const bool direct = a.p_raw > b.p_raw;
    if (criterion != direct &&
        std::abs(a.p_raw - b.p_raw) > disagreement_tolerance) {
        throw NumericalError("preference criterion disagrees with direct "
                             "comparison of '" +
                             a.name + "' and '" + b.name + "'");
    }
    return criterion;
}

inline bool preference_criterion(const std::string &first,
                                 const std::string &second,
                                 const ProbabilisticState &state) {
    return preference_criterion(state.index_of(first), state.index_of(second),
                                state);
}

enum class Attraction { more_repulsive, equal, less_repulsive };

inline const char *to_string(Attraction a) {
    switch (a) {
    case Attraction::more_repulsive:
        return "more_repulsive";
    case Attraction::equal:
        return "equal";
    case Attraction::less_repulsive:
        return "less_repulsive";
    }
    return "?";
}

/// Classifies the first prospect by its interference term relative to the
/// second.
inline Attraction attraction_compare(double q1, double q2,
                                     double tie_epsilon = ranking_tie_epsilon) {
    if (q1 < q2 - tie_epsilon) {
        return Attraction::more_repulsive;
    }
    if (q1 > q2 + tie_epsilon) {
        return Attraction::less_repulsive;
    }
    return Attraction::equal;
}

/// Qualitative rules under which one prospect is expected to be more
/// repulsive than another.
enum class RepulsionRule {
    more_uncertain_gain,
    more_certain_loss,
    more_active_under_uncertainty,
    more_passive_under_certainty,
};

inline const char *to_string(RepulsionRule r) {
    switch (r) {
    case RepulsionRule::more_uncertain_gain:
        return "more_uncertain_gain";
    case RepulsionRule::more_certain_loss:
        return "more_certain_loss";
    case RepulsionRule::more_active_under_uncertainty:
        return "more_active_under_uncertainty";
    case RepulsionRule::more_passive_under_certainty:
        return "more_passive_under_certainty";
    }
    return "?";
}

namespace detail {

// passive < neutral < active
inline int activity_level(Activity a) {
    switch (a) {
    case Activity::passive:
        return 0;
    case Activity::neutral:
        return 1;
    case Activity::active:
        return 2;
    }
    return 1;
}

} // namespace detail

/// Rules that make `x` more repulsive than `y`.
inline std::vector<RepulsionRule>
repulsion_rules(const ProspectAttributes &x, const ProspectAttributes &y) {
    std::vector<RepulsionRule> rules;
    if (x.payoff_sign == PayoffSign::gain && y.payoff_sign == PayoffSign::gain &&
        x.certainty == Certainty::uncertain && y.certainty == Certainty::certain) {
        rules.push_back(RepulsionRule::more_uncertain_gain);
    }
    if (x.payoff_sign == PayoffSign::loss && y.payoff_sign == PayoffSign::loss &&
        x.certainty == Certainty::certain && y.certainty == Certainty::uncertain) {
        rules.push_back(RepulsionRule::more_certain_loss);
    }
    const int ax = detail::activity_level(x.activity);
    const int ay = detail::activity_level(y.activity);
    if (x.certainty == Certainty::uncertain && y.certainty == Certainty::uncertain &&
        ax > ay) {
        rules.push_back(RepulsionRule::more_active_under_uncertainty);
    }
    if (x.certainty == Certainty::certain && y.certainty == Certainty::certain &&
        ax < ay) {
        rules.push_back(RepulsionRule::more_passive_under_certainty);
    }
    return rules;
}

struct AttractionCheck {
    std::string repulsive;  ///< prospect expected to have the lower q
    std::string attractive; ///< prospect expected to have the higher q
    std::vector<RepulsionRule> rules;
    double q_repulsive{};
    double q_attractive{};
    bool pass{};
};

struct AttractionReport {
    std::vector<AttractionCheck> checks;
    /// Pairs skipped because one side has no declared attributes.
    std::vector<std::pair<std::string, std::string>> skipped;
    /// Pairs whose attributes point both ways.
    std::vector<std::pair<std::string, std::string>> conflicting;

    [[nodiscard]] bool all_pass() const noexcept {
        for (const auto &c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }
};

/**
 * @brief Check that declared attributes agree with the sign of the
 * interference gaps.
 *
 * `attributes[i]` belongs to `state.prospects[i]`. For every unordered pair
 * whose attributes rank one side more repulsive, that side must have the
 * strictly lower q. Attributes are never used to produce q values.
 */
inline AttractionReport check_attraction_consistency(
    std::span<const std::optional<ProspectAttributes>> attributes,
    const ProbabilisticState &state, double tie_epsilon = ranking_tie_epsilon) {
    if (attributes.size() != state.prospects.size()) {
        throw StateError("attribute list does not match evaluated prospects");
    }
    AttractionReport report;
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        for (std::size_t j = i + 1; j < attributes.size(); ++j) {
            const auto &ni = state.prospects[i].name;
            const auto &nj = state.prospects[j].name;
            if (!attributes[i] || !attributes[j]) {
                report.skipped.emplace_back(ni, nj);
                continue;
            }
            auto ij = repulsion_rules(*attributes[i], *attributes[j]);
            auto ji = repulsion_rules(*attributes[j], *attributes[i]);
            if (!ij.empty() && !ji.empty()) {
                report.conflicting.emplace_back(ni, nj);
                continue;
            }
            if (ij.empty() && ji.empty()) {
                continue;
            }
            const bool i_rep = !ij.empty();
            const std::size_t r = i_rep ? i : j;
            const std::size_t a = i_rep ? j : i;
            AttractionCheck check;
            check.repulsive = state.prospects[r].name;
            check.attractive = state.prospects[a].name;
            check.rules = i_rep ? std::move(ij) : std::move(ji);
            check.q_repulsive = state.prospects[r].q;
            check.q_attractive = state.prospects[a].q;
            check.pass = attraction_compare(check.q_repulsive, check.q_attractive,
                                            tie_epsilon) ==
                         Attraction::more_repulsive;
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

/**
 * @brief Post-evaluation lattice bounds: every declared empty prospect has
 * the minimum probability and the optimum has the maximum.
 */
inline bool check_lattice_bounds(const std::vector<bool> &is_empty,
                                 const ProbabilisticState &state) {
    if (is_empty.size() != state.prospects.size() || state.prospects.empty()) {
        throw StateError("lattice flags do not match evaluated prospects");
    }
    double lo = state.ordering_value(0);
    double hi = lo;
    for (std::size_t i = 1; i < state.prospects.size(); ++i) {
        lo = std::min(lo, state.ordering_value(i));
        hi = std::max(hi, state.ordering_value(i));
    }
    for (std::size_t i = 0; i < is_empty.size(); ++i) {
        if (is_empty[i] && state.ordering_value(i) != lo) {
            return false;
        }
    }
    return state.ordering_value(optimal_prospect(state).index) == hi;
}

} // namespace qdt
