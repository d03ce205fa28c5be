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
 * Combinatorics of the action ring: factors and their modes, elementary
 * prospects, the disjoint ring product and prospect supports.
 *
 * Elementary prospects are enumerated in row-major order over the factor
 * index (the last factor varies fastest). Every other module indexes the
 * mind-space basis with this order.
 */
#pragma once

#include <algorithm>
#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace qdt {

using Amplitude = std::complex<double>;

/// One disjoint branch of an action factor.
struct ActionMode {
    std::size_t factor_index{};
    std::size_t mode_index{};
    std::string label;

    bool operator==(const ActionMode &) const = default;
};

/// An action together with its modes. Composite iff it has more than one
/// mode.
struct ActionFactor {
    std::size_t index{};
    std::string label;
    std::vector<ActionMode> modes;

    [[nodiscard]] std::size_t size() const noexcept { return modes.size(); }
    [[nodiscard]] bool is_composite() const noexcept { return modes.size() > 1; }

    bool operator==(const ActionFactor &) const = default;
};

/**
 * @brief Build a factor from its mode labels.
 *
 * Labels must be nonempty and unique within the factor.
 */
inline ActionFactor make_factor(std::size_t index, std::string label,
                                const std::vector<std::string> &mode_labels) {
    if (mode_labels.empty()) {
        throw InvalidScenario("factor '" + label + "' has no modes");
    }
    ActionFactor factor{index, std::move(label), {}};
    std::set<std::string> seen;
    for (std::size_t j = 0; j < mode_labels.size(); ++j) {
        if (!seen.insert(mode_labels[j]).second) {
            throw InvalidScenario("duplicate mode label '" + mode_labels[j] +
                                  "' in factor '" + factor.label + "'");
        }
        factor.modes.push_back(ActionMode{index, j, mode_labels[j]});
    }
    return factor;
}

/// Multi-index selecting exactly one mode per factor.
struct ElementaryProspect {
    std::vector<std::size_t> modes;

    auto operator<=>(const ElementaryProspect &) const = default;
    bool operator==(const ElementaryProspect &) const = default;
};

/// Zero element of the action ring.
struct EmptyAction {
    bool operator==(const EmptyAction &) const = default;
};

using RingElement = std::variant<EmptyAction, ElementaryProspect>;

enum class PayoffSign { gain, loss, neutral };
enum class Certainty { certain, uncertain };
enum class Activity { active, passive, neutral };

/// Qualitative, user-declared description of a prospect. Only used to check
/// the sign of interference differences, never to produce them.
struct ProspectAttributes {
    PayoffSign payoff_sign{PayoffSign::neutral};
    Certainty certainty{Certainty::certain};
    Activity activity{Activity::neutral};

    bool operator==(const ProspectAttributes &) const = default;
};

/**
 * @brief A prospect: one nonempty mode subset per factor plus the complex
 * amplitudes of its prospect state over elementary prospects.
 *
 * The declared empty prospect has no subsets and no amplitudes; its state
 * is the vacuum.
 */
struct ProspectSpec {
    std::string name;
    bool empty{false};
    std::vector<std::vector<std::size_t>> mode_subsets;
    std::map<ElementaryProspect, Amplitude> amplitudes;
    std::optional<ProspectAttributes> attributes;

    bool operator==(const ProspectSpec &) const = default;
};

inline std::vector<std::size_t>
factor_dims(std::span<const ActionFactor> factors) {
    std::vector<std::size_t> dims;
    dims.reserve(factors.size());
    for (const auto &f : factors) {
        dims.push_back(f.size());
    }
    return dims;
}

/// All multi-indices over `dims` in row-major order.
inline std::vector<ElementaryProspect>
enumerate_elementary(std::span<const std::size_t> dims) {
    if (dims.empty()) {
        throw InvalidScenario("at least one action factor is required");
    }
    std::size_t total = 1;
    for (auto m : dims) {
        if (m == 0) {
            throw InvalidScenario("every action factor needs at least one mode");
        }
        total *= m;
    }
    std::vector<ElementaryProspect> out;
    out.reserve(total);
    std::vector<std::size_t> current(dims.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        out.push_back(ElementaryProspect{current});
        // odometer increment, last factor fastest
        for (std::size_t k = dims.size(); k-- > 0;) {
            if (++current[k] < dims[k]) {
                break;
            }
            current[k] = 0;
        }
    }
    return out;
}

inline std::vector<ElementaryProspect>
enumerate_elementary(std::span<const ActionFactor> factors) {
    const auto dims = factor_dims(factors);
    return enumerate_elementary(std::span<const std::size_t>(dims));
}

/**
 * @brief Product in the action ring restricted to elementary prospects.
 *
 * Elementary prospects are idempotent and mutually disjoint, so the product
 * is `a` when a == b and the empty action otherwise.
 */
inline RingElement ring_product(const ElementaryProspect &a,
                                const ElementaryProspect &b) {
    if (a.modes.size() != b.modes.size()) {
        throw InvalidScenario("ring product of prospects over different factors");
    }
    if (a == b) {
        return a;
    }
    return EmptyAction{};
}

/// Ring addition within one factor: union of mode sets, sorted.
inline std::vector<std::size_t> mode_union(std::span<const std::size_t> a,
                                           std::span<const std::size_t> b) {
    std::set<std::size_t> merged(a.begin(), a.end());
    merged.insert(b.begin(), b.end());
    return {merged.begin(), merged.end()};
}

namespace detail {

inline void check_subsets(const ProspectSpec &spec,
                          std::span<const ActionFactor> factors) {
    if (spec.mode_subsets.size() != factors.size()) {
        throw InvalidScenario("prospect '" + spec.name + "' declares " +
                              std::to_string(spec.mode_subsets.size()) +
                              " mode subsets for " +
                              std::to_string(factors.size()) + " factors");
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const auto &subset = spec.mode_subsets[k];
        if (subset.empty()) {
            throw InvalidScenario("prospect '" + spec.name +
                                  "' has an empty mode subset for factor '" +
                                  factors[k].label + "'");
        }
        std::set<std::size_t> seen;
        for (auto j : subset) {
            if (j >= factors[k].size()) {
                throw InvalidScenario("prospect '" + spec.name +
                                      "' selects mode " + std::to_string(j) +
                                      " outside factor '" + factors[k].label +
                                      "'");
            }
            if (!seen.insert(j).second) {
                throw InvalidScenario("prospect '" + spec.name +
                                      "' repeats a mode in factor '" +
                                      factors[k].label + "'");
            }
        }
    }
}

inline bool in_product(const ElementaryProspect &e,
                       const std::vector<std::vector<std::size_t>> &subsets) {
    for (std::size_t k = 0; k < subsets.size(); ++k) {
        if (std::find(subsets[k].begin(), subsets[k].end(), e.modes[k]) ==
            subsets[k].end()) {
            return false;
        }
    }
    return true;
}

inline void check_key(const ProspectSpec &spec, const ElementaryProspect &e,
                      std::span<const ActionFactor> factors) {
    if (e.modes.size() != factors.size()) {
        throw SupportViolation("prospect '" + spec.name +
                               "' has an amplitude key of wrong length");
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (e.modes[k] >= factors[k].size()) {
            throw SupportViolation("prospect '" + spec.name +
                                   "' has an amplitude on a mode outside factor '" +
                                   factors[k].label + "'");
        }
    }
}

} // namespace detail

/**
 * @brief Cartesian product of the prospect's mode subsets.
 *
 * Throws SupportViolation if an amplitude key lies outside that product.
 * The declared empty prospect has an empty support.
 */
inline std::set<ElementaryProspect>
prospect_support(const ProspectSpec &spec,
                 std::span<const ActionFactor> factors) {
    std::set<ElementaryProspect> support;
    if (spec.empty) {
        return support;
    }
    detail::check_subsets(spec, factors);

    std::vector<std::size_t> dims;
    for (const auto &s : spec.mode_subsets) {
        dims.push_back(s.size());
    }
    for (const auto &pos : enumerate_elementary(std::span<const std::size_t>(dims))) {
        ElementaryProspect e;
        e.modes.reserve(dims.size());
        for (std::size_t k = 0; k < dims.size(); ++k) {
            e.modes.push_back(spec.mode_subsets[k][pos.modes[k]]);
        }
        support.insert(std::move(e));
    }
    for (const auto &[key, amp] : spec.amplitudes) {
        detail::check_key(spec, key, factors);
        if (!support.contains(key)) {
            throw SupportViolation("prospect '" + spec.name +
                                   "' has an amplitude outside its declared mode subsets");
        }
    }
    return support;
}

/**
 * @brief Full structural validation of a prospect against its factors.
 *
 * With `allow_free_support` amplitude keys may leave the product of the
 * declared subsets; they must still be valid multi-indices.
 */
inline void validate_prospect(const ProspectSpec &spec,
                              std::span<const ActionFactor> factors,
                              bool allow_free_support = false) {
    if (spec.empty) {
        for (const auto &[key, amp] : spec.amplitudes) {
            if (amp != Amplitude{}) {
                throw InvalidScenario("empty prospect '" + spec.name +
                                      "' carries a nonzero amplitude");
            }
        }
        return;
    }
    if (allow_free_support) {
        detail::check_subsets(spec, factors);
        for (const auto &[key, amp] : spec.amplitudes) {
            detail::check_key(spec, key, factors);
        }
    } else {
        (void)prospect_support(spec, factors);
    }
    const bool any_nonzero =
        std::any_of(spec.amplitudes.begin(), spec.amplitudes.end(),
                    [](const auto &kv) { return kv.second != Amplitude{}; });
    if (!any_nonzero) {
        throw InvalidScenario("prospect '" + spec.name +
                              "' has no nonzero amplitude");
    }
}

/// True iff some factor contributes more than one mode.
inline bool is_composite(const ProspectSpec &spec) noexcept {
    return std::any_of(spec.mode_subsets.begin(), spec.mode_subsets.end(),
                       [](const auto &s) { return s.size() > 1; });
}

} // namespace qdt
