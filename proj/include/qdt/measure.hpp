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
 * The probability-operator measure evaluated in the elementary-prospect
 * basis.
 *
 * With b_a = <e_a|pi> and c_a = <e_a|psi>:
 *
 *   p(pi)      = |<pi|psi>|^2
 *   p(pi e_a)  = |b_a|^2 |c_a|^2
 *   q(pi)      = sum_{a != b} conj(c_a) b_a conj(b_b) c_b
 *
 * and p(pi) = sum_a p(pi e_a) + q(pi) holds identically. The interference
 * term is always computed from its double sum so that the identity remains a
 * check rather than a definition.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hilbert.hpp"

namespace qdt {

/// Tolerance for identities that are exact in exact arithmetic.
inline constexpr double identity_tolerance = 1e-12;

enum class NormalizationMode {
    strict, ///< sum_n p = 1 and unit column norms must hold for the given psi
    given,  ///< report residuals only
    renorm, ///< additionally divide probabilities by their sum
};

inline const char *to_string(NormalizationMode m) {
    switch (m) {
    case NormalizationMode::strict:
        return "strict";
    case NormalizationMode::given:
        return "given";
    case NormalizationMode::renorm:
        return "renorm";
    }
    return "?";
}

inline NormalizationMode parse_normalization_mode(const std::string &s) {
    if (s == "strict") {
        return NormalizationMode::strict;
    }
    if (s == "given") {
        return NormalizationMode::given;
    }
    if (s == "renorm") {
        return NormalizationMode::renorm;
    }
    throw UsageError("unknown normalization mode '" + s + "'");
}

/**
 * @brief How evaluate_all treats the normalization conditions.
 *
 * `unitary` additionally requires orthonormal amplitude-matrix columns in
 * strict mode, which makes sum_n p = 1 hold for every state of mind.
 */
struct NormalizationPolicy {
    NormalizationMode mode{NormalizationMode::strict};
    double tolerance{default_unit_tolerance};
    bool unitary{false};

    bool operator==(const NormalizationPolicy &) const = default;
};

inline void check_dimensions(const StateVector &prospect,
                             const StateOfMind &psi) {
    if (prospect.size() != psi.size()) {
        throw DimensionError("prospect state has dimension " +
                             std::to_string(prospect.size()) +
                             ", state of mind " + std::to_string(psi.size()));
    }
}

/// |<pi|psi>|^2
inline double prospect_probability(const StateVector &prospect,
                                   const StateOfMind &psi) {
    check_dimensions(prospect, psi);
    return std::norm(inner(prospect, psi.vector()));
}

/// |b|^2 |c|^2, the expectation of P(e_a) P(pi) P(e_a).
inline double conjunction_probability(Amplitude b, Amplitude c) noexcept {
    return std::norm(b) * std::norm(c);
}

/**
 * @brief q(pi) by direct summation over ordered pairs a != b.
 *
 * The sum is real analytically; an imaginary residue above
 * `tolerance * (sum_a |w_a|)^2` means the computation is broken and raises
 * NumericalError.
 */
inline double interference_term(const StateVector &prospect,
                                const StateOfMind &psi,
                                double tolerance = default_unit_tolerance) {
    check_dimensions(prospect, psi);
    // w_a = conj(c_a) b_a, restricted to its nonzero entries
    std::vector<Amplitude> w;
    double scale = 0.0;
    for (std::size_t a = 0; a < prospect.size(); ++a) {
        const Amplitude wa = std::conj(psi[a]) * prospect[a];
        if (wa != Amplitude{}) {
            w.push_back(wa);
            scale += std::abs(wa);
        }
    }
    Amplitude sum{};
    for (std::size_t a = 0; a < w.size(); ++a) {
        for (std::size_t b = 0; b < w.size(); ++b) {
            if (a != b) {
                sum += w[a] * std::conj(w[b]);
            }
        }
    }
    if (std::abs(sum.imag()) >= tolerance * std::max(1.0, scale * scale)) {
        throw NumericalError("interference term has imaginary residue " +
                             std::to_string(sum.imag()));
    }
    return sum.real();
}

struct Decomposition {
    double diag_sum{};
    double q{};
};

inline Decomposition decompose(const StateVector &prospect,
                               const StateOfMind &psi,
                               double tolerance = default_unit_tolerance) {
    check_dimensions(prospect, psi);
    double diag = 0.0;
    for (std::size_t a = 0; a < prospect.size(); ++a) {
        diag += conjunction_probability(prospect[a], psi[a]);
    }
    return {diag, interference_term(prospect, psi, tolerance)};
}

struct ProspectResult {
    std::string name;
    double p_raw{};
    double diag_sum{};
    double q{};
    std::optional<double> p_normalized;
    /// p(pi e_a) for every basis index a.
    std::vector<double> conjunction;
    /// |p_raw - diag_sum - q|
    double prop1_residual{};
};

/**
 * @brief All probabilities of one scenario plus the normalization
 * diagnostics.
 */
struct ProbabilisticState {
    std::vector<ProspectResult> prospects;
    NormalizationPolicy policy;
    double sum_p{};
    double sum_q{};
    /// sum over all (n, a) of p(pi_n e_a)
    double sum_conjunction{};
    double column_norm_max_dev{};
    double column_gram_max_dev{};
    double prop1_max_residual{};

    [[nodiscard]] bool uses_normalized() const noexcept {
        return policy.mode == NormalizationMode::renorm;
    }
    [[nodiscard]] const char *ordering_field() const noexcept {
        return uses_normalized() ? "p_normalized" : "p_raw";
    }
    /// The probability that orders the lattice.
    [[nodiscard]] double ordering_value(std::size_t i) const {
        const auto &r = at(i);
        if (uses_normalized()) {
            if (!r.p_normalized) {
                throw StateError("prospect '" + r.name +
                                 "' has no normalized probability");
            }
            return *r.p_normalized;
        }
        return r.p_raw;
    }
    [[nodiscard]] const ProspectResult &at(std::size_t i) const {
        if (i >= prospects.size()) {
            throw StateError("prospect index " + std::to_string(i) +
                             " was not evaluated");
        }
        return prospects[i];
    }
    [[nodiscard]] std::size_t index_of(const std::string &name) const {
        for (std::size_t i = 0; i < prospects.size(); ++i) {
            if (prospects[i].name == name) {
                return i;
            }
        }
        throw StateError("prospect '" + name + "' was not evaluated");
    }
};

/**
 * @brief Evaluate every prospect under `psi` and apply `policy`.
 *
 * Strict mode raises NormalizationError carrying the residuals of every
 * condition it checked. Given mode only reports. Renorm mode fills
 * p_normalized = p_raw / sum p_raw.
 */
inline ProbabilisticState evaluate_all(std::span<const std::string> names,
                                       std::span<const StateVector> prospects,
                                       const StateOfMind &psi,
                                       const NormalizationPolicy &policy = {}) {
    if (!(policy.tolerance > 0.0)) {
        throw InvalidScenario("normalization tolerance must be positive");
    }
    if (names.size() != prospects.size()) {
        throw InvalidScenario("prospect names and states differ in count");
    }
    if (prospects.empty()) {
        throw InvalidScenario("no prospects to evaluate");
    }

    ProbabilisticState state;
    state.policy = policy;
    for (std::size_t n = 0; n < prospects.size(); ++n) {
        const auto &pi = prospects[n];
        check_dimensions(pi, psi);
        ProspectResult r;
        r.name = names[n];
        r.p_raw = prospect_probability(pi, psi);
        r.conjunction.resize(pi.size());
        for (std::size_t a = 0; a < pi.size(); ++a) {
            r.conjunction[a] = conjunction_probability(pi[a], psi[a]);
            r.diag_sum += r.conjunction[a];
        }
        r.q = interference_term(pi, psi, policy.tolerance);
        r.prop1_residual = std::abs(r.p_raw - r.diag_sum - r.q);

        state.sum_p += r.p_raw;
        state.sum_q += r.q;
        state.sum_conjunction += r.diag_sum;
        state.prop1_max_residual =
            std::max(state.prop1_max_residual, r.prop1_residual);
        state.prospects.push_back(std::move(r));
    }

    const auto matrix = AmplitudeMatrix::from_states(prospects);
    state.column_norm_max_dev = matrix.column_norm_max_dev();
    if (policy.unitary) {
        state.column_gram_max_dev = matrix.column_gram_max_dev();
    }

    switch (policy.mode) {
    case NormalizationMode::strict: {
        std::map<std::string, double> residuals{
            {"sum_p", std::abs(state.sum_p - 1.0)},
            {"column_norm_max_dev", state.column_norm_max_dev}};
        if (policy.unitary) {
            residuals["column_gram_max_dev"] = state.column_gram_max_dev;
        }
        std::string failed;
        for (const auto &[key, value] : residuals) {
            if (!(value <= policy.tolerance)) {
                failed += (failed.empty() ? "" : ", ") + key + "=" +
                          std::to_string(value);
            }
        }
        if (!failed.empty()) {
            throw NormalizationError("strict normalization violated: " + failed,
                                     residuals);
        }
        break;
    }
    case NormalizationMode::renorm:
        if (!(state.sum_p > 0.0)) {
            throw NormalizationError("cannot renormalize: all probabilities are zero",
                                     {{"sum_p", state.sum_p}});
        }
        for (auto &r : state.prospects) {
            r.p_normalized = r.p_raw / state.sum_p;
        }
        break;
    case NormalizationMode::given:
        break;
    }
    return state;
}

} // namespace qdt
