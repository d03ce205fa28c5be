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
 * Built-in scenario templates and the seeded generator of scenarios whose
 * amplitude matrix has orthonormal columns.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "hilbert.hpp"
#include "scenario.hpp"

namespace qdt {

/**
 * @brief Seeded source of uniform and Gaussian deviates.
 *
 * Only the raw 64-bit output of std::mt19937_64 is used, which the standard
 * fixes bit for bit, so sequences are identical across standard libraries.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (cached_) {
            cached_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        cached_ = true;
        return r * std::cos(t);
    }

    Amplitude complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

  private:
    std::mt19937_64 engine_;
    double spare_{};
    bool cached_{false};
};

inline StateOfMind random_state_of_mind(Rng &rng, std::size_t dim) {
    StateVector v(dim);
    for (auto &a : v.amplitudes) {
        a = rng.complex_normal();
    }
    return StateOfMind::normalized(v);
}

/**
 * @brief Orthonormalize the columns of a row-major rows x cols matrix in
 * place by modified Gram-Schmidt with one reorthogonalization pass.
 */
inline void orthonormalize_columns(std::vector<Amplitude> &m, std::size_t rows,
                                   std::size_t cols) {
    auto at = [&](std::size_t r, std::size_t c) -> Amplitude & { return m[r * cols + c]; };
    for (std::size_t c = 0; c < cols; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t prev = 0; prev < c; ++prev) {
                Amplitude proj{};
                for (std::size_t r = 0; r < rows; ++r) {
                    proj += std::conj(at(r, prev)) * at(r, c);
                }
                for (std::size_t r = 0; r < rows; ++r) {
                    at(r, c) -= proj * at(r, prev);
                }
            }
        }
        double n2 = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            n2 += std::norm(at(r, c));
        }
        const double n = std::sqrt(n2);
        if (!(n > 0.0)) {
            throw NumericalError("rank-deficient matrix in orthonormalization");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            at(r, c) /= n;
        }
    }
}

namespace detail {

inline std::vector<std::vector<std::size_t>> all_modes(const std::vector<ActionFactor> &factors) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto &f : factors) {
        std::vector<std::size_t> s(f.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
            s[j] = j;
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace detail

/**
 * @brief Two prospects in a two-dimensional space.
 *
 * pi1 = (1, 1)/sqrt2, pi2 = (1, -1)/sqrt2 and psi = (1, 1)/sqrt2 give
 * p = (1, 0), diagonal parts (1/2, 1/2) and interference (+1/2, -1/2).
 */
inline Scenario h2_scenario() {
    Scenario s;
    s.factors.push_back(make_factor(0, "choice", {"m0", "m1"}));
    const double h = 1.0 / std::numbers::sqrt2;
    ProspectSpec pi1{"pi1", false, {{0, 1}}, {{{{0}}, h}, {{{1}}, h}}, std::nullopt};
    ProspectSpec pi2{"pi2", false, {{0, 1}}, {{{{0}}, h}, {{{1}}, -h}}, std::nullopt};
    s.prospects = {pi1, pi2};
    s.state_of_mind = {{{{0}}, h}, {{{1}}, h}};
    s.options.policy = {NormalizationMode::strict, default_unit_tolerance, true};
    return s;
}

/**
 * @brief Act or refrain under an uncertain two-outcome event.
 *
 * Factor "event" has modes {e0, e1}, factor "action" has {act, refrain}.
 * "act" has amplitude 1 on (e0, act) and e^{i phase} on (e1, act);
 * "refrain" has 1 and -e^{i phase} on the refrain column. The state of mind
 * is the product of (sqrt w, sqrt(1-w)) on the event and a uniform
 * superposition on the action, so that
 *   p(act) = 1/2 + sqrt(w(1-w)) cos(phase),  q(act) = -q(refrain).
 */
inline Scenario disjunction_scenario(double phase = 0.0, double event_weight = 0.5) {
    if (!(event_weight >= 0.0 && event_weight <= 1.0)) {
        throw UsageError("event weight must lie in [0, 1]");
    }
    Scenario s;
    s.factors.push_back(make_factor(0, "event", {"e0", "e1"}));
    s.factors.push_back(make_factor(1, "action", {"act", "refrain"}));
    const Amplitude phasor = std::polar(1.0, phase);

    ProspectSpec act{"act", false, {{0, 1}, {0}}, {}, std::nullopt};
    act.amplitudes = {{{{0, 0}}, 1.0}, {{{1, 0}}, phasor}};
    act.attributes = ProspectAttributes{PayoffSign::neutral, Certainty::uncertain,
                                        Activity::active};
    ProspectSpec refrain{"refrain", false, {{0, 1}, {1}}, {}, std::nullopt};
    refrain.amplitudes = {{{{0, 1}}, 1.0}, {{{1, 1}}, -phasor}};
    refrain.attributes = ProspectAttributes{PayoffSign::neutral, Certainty::uncertain,
                                            Activity::passive};
    s.prospects = {act, refrain};

    const double h = 1.0 / std::numbers::sqrt2;
    const auto psi = build_product_state(
        {{std::sqrt(event_weight), std::sqrt(1.0 - event_weight)}, {h, h}});
    MindSpace space(s.factors);
    s.state_of_mind = sparse_amplitudes(psi, space);
    s.options.policy = {NormalizationMode::strict, default_unit_tolerance, false};
    return s;
}

/**
 * @brief A multimode register: one factor per site, one mode per coherent
 * mode of that site.
 *
 * The state of mind is the product of the per-site mode superpositions
 * (normalized site by site). The prospects are the discrete Fourier basis of
 * the whole register, pi_k = K^{-1/2} sum_a exp(2 pi i k a / K) e_a, which
 * has orthonormal columns.
 */
inline Scenario register_scenario(const std::vector<std::vector<Amplitude>> &sites) {
    if (sites.empty()) {
        throw UsageError("register needs at least one site");
    }
    Scenario s;
    std::vector<std::vector<Amplitude>> normalized;
    for (std::size_t k = 0; k < sites.size(); ++k) {
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < sites[k].size(); ++j) {
            labels.push_back("mode" + std::to_string(j));
        }
        if (labels.empty()) {
            throw UsageError("register site " + std::to_string(k) + " has no modes");
        }
        s.factors.push_back(make_factor(k, "site" + std::to_string(k), labels));
        normalized.push_back(normalize(StateVector(sites[k])).amplitudes);
    }
    MindSpace space(s.factors);
    const std::size_t dim = space.dimension();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        ProspectSpec spec{"fourier" + std::to_string(k), false, detail::all_modes(s.factors),
                          {}, std::nullopt};
        for (std::size_t a = 0; a < dim; ++a) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * a) % dim) /
                                 static_cast<double>(dim);
            spec.amplitudes.emplace(space.basis()[a], std::polar(scale, angle));
        }
        s.prospects.push_back(std::move(spec));
    }
    s.state_of_mind = sparse_amplitudes(build_product_state(normalized, space), space);
    s.options.policy = {NormalizationMode::strict, default_unit_tolerance, true};
    return s;
}

/// Default register: two three-mode sites.
inline Scenario register_scenario() {
    return register_scenario({{0.8, 0.6, 0.0}, {Amplitude{0.6, 0.0}, 0.0, Amplitude{0.0, 0.8}}});
}

/**
 * @brief Seeded scenario whose amplitude matrix has orthonormal columns.
 *
 * A num_prospects x K complex Gaussian matrix is orthonormalized column by
 * column; row n becomes prospect "pi<n>" with full support. The state of
 * mind is a normalized complex Gaussian vector.
 */
inline Scenario random_strict_scenario(std::uint64_t seed,
                                       const std::vector<std::size_t> &modes_per_factor,
                                       std::size_t num_prospects) {
    if (modes_per_factor.empty()) {
        throw InvalidScenario("at least one action factor is required");
    }
    Scenario s;
    for (std::size_t k = 0; k < modes_per_factor.size(); ++k) {
        if (modes_per_factor[k] == 0) {
            throw InvalidScenario("every action factor needs at least one mode");
        }
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < modes_per_factor[k]; ++j) {
            labels.push_back("m" + std::to_string(j));
        }
        s.factors.push_back(make_factor(k, "f" + std::to_string(k), labels));
    }
    MindSpace space(s.factors);
    const std::size_t dim = space.dimension();
    if (num_prospects < dim) {
        throw InvalidScenario("orthonormal columns need at least " + std::to_string(dim) +
                              " prospects, got " + std::to_string(num_prospects));
    }

    Rng rng(seed);
    std::vector<Amplitude> b(num_prospects * dim);
    for (auto &x : b) {
        x = rng.complex_normal();
    }
    orthonormalize_columns(b, num_prospects, dim);

    const auto subsets = detail::all_modes(s.factors);
    for (std::size_t n = 0; n < num_prospects; ++n) {
        ProspectSpec spec{"pi" + std::to_string(n + 1), false, subsets, {}, std::nullopt};
        for (std::size_t a = 0; a < dim; ++a) {
            spec.amplitudes.emplace(space.basis()[a], b[n * dim + a]);
        }
        s.prospects.push_back(std::move(spec));
    }
    s.state_of_mind = sparse_amplitudes(random_state_of_mind(rng, dim).vector(), space);
    s.options.policy = {NormalizationMode::strict, default_unit_tolerance, true};
    s.options.seed = seed;
    return s;
}

inline Scenario random_strict_scenario(std::uint64_t seed, std::size_t num_factors,
                                       std::size_t modes_per_factor,
                                       std::size_t num_prospects) {
    return random_strict_scenario(
        seed, std::vector<std::size_t>(num_factors, modes_per_factor), num_prospects);
}

inline const std::vector<std::string> &builtin_names() {
    static const std::vector<std::string> names{"h2", "disjunction", "register"};
    return names;
}

inline Scenario builtin_scenario(const std::string &name) {
    if (name == "h2") {
        return h2_scenario();
    }
    if (name == "disjunction") {
        return disjunction_scenario();
    }
    if (name == "register") {
        return register_scenario();
    }
    throw UsageError("unknown built-in scenario '" + name + "'");
}

} // namespace qdt
