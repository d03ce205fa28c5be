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
 * Scenario documents: parsing, serialization and compilation into mind-space
 * vectors.
 *
 * A scenario is one JSON object:
 *
 * @code{.json}
 * {
 *   "factors": [{"label": "choice", "modes": ["m0", "m1"]}],
 *   "prospects": [
 *     {"name": "pi1", "modes": [["m0", "m1"]],
 *      "amplitudes": [{"modes": ["m0"], "amplitude": [0.7, 0.0]}, ...],
 *      "attributes": {"payoff": "gain", "certainty": "uncertain",
 *                     "activity": "active"}},
 *     {"name": "nothing", "empty": true}
 *   ],
 *   "state_of_mind": [{"modes": ["m0"], "amplitude": [1.0, 0.0]}],
 *   "options": {"normalization": "strict", "tolerance": 1e-10,
 *               "unitary": false, "allow_free_support": false,
 *               "oracle": false, "seed": 7}
 * }
 * @endcode
 *
 * Amplitudes are (re, im) pairs. Multi-indices name one mode label per
 * factor, in factor order. `schema/scenario.schema.json` documents the
 * format.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "errors.hpp"
#include "hilbert.hpp"
#include "measure.hpp"

namespace qdt {

struct ScenarioOptions {
    NormalizationPolicy policy;
    bool allow_free_support{false};
    bool oracle{false};
    std::optional<std::uint64_t> seed;

    bool operator==(const ScenarioOptions &) const = default;
};

struct Scenario {
    std::vector<ActionFactor> factors;
    std::vector<ProspectSpec> prospects;
    /// Raw amplitude entries of the state of mind.
    std::map<ElementaryProspect, Amplitude> state_of_mind;
    ScenarioOptions options;

    bool operator==(const Scenario &) const = default;
};

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] inline void invalid(const std::string &path, const std::string &msg) {
    throw InvalidScenario(path + ": " + msg);
}

inline void require_object(const json &j, const std::string &path,
                           const std::set<std::string> &allowed) {
    if (!j.is_object()) {
        invalid(path, "expected an object");
    }
    for (const auto &[key, value] : j.items()) {
        if (!allowed.contains(key)) {
            invalid(path, "unknown key '" + key + "'");
        }
    }
}

inline const json &require_key(const json &j, const std::string &path,
                               const std::string &key) {
    auto it = j.find(key);
    if (it == j.end()) {
        invalid(path, "missing key '" + key + "'");
    }
    return *it;
}

inline const json &require_array(const json &j, const std::string &path) {
    if (!j.is_array()) {
        invalid(path, "expected an array");
    }
    return j;
}

inline std::string require_string(const json &j, const std::string &path) {
    if (!j.is_string()) {
        invalid(path, "expected a string");
    }
    return j.get<std::string>();
}

inline bool require_bool(const json &j, const std::string &path) {
    if (!j.is_boolean()) {
        invalid(path, "expected a boolean");
    }
    return j.get<bool>();
}

inline double require_number(const json &j, const std::string &path) {
    if (!j.is_number()) {
        invalid(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        invalid(path, "expected a finite number");
    }
    return v;
}

inline Amplitude require_amplitude(const json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2) {
        invalid(path, "expected a [re, im] pair");
    }
    return {require_number(j[0], path + "[0]"), require_number(j[1], path + "[1]")};
}

inline std::size_t resolve_mode(const ActionFactor &factor, const json &j,
                                const std::string &path) {
    const auto label = require_string(j, path);
    for (const auto &m : factor.modes) {
        if (m.label == label) {
            return m.mode_index;
        }
    }
    invalid(path, "unknown mode '" + label + "' for factor '" + factor.label + "'");
}

inline ElementaryProspect parse_multi_index(const std::vector<ActionFactor> &factors,
                                            const json &j, const std::string &path) {
    require_array(j, path);
    if (j.size() != factors.size()) {
        invalid(path, "expected " + std::to_string(factors.size()) +
                          " mode labels, one per factor");
    }
    ElementaryProspect e;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        e.modes.push_back(resolve_mode(factors[k], j[k], path + "[" + std::to_string(k) + "]"));
    }
    return e;
}

inline std::map<ElementaryProspect, Amplitude>
parse_amplitude_list(const std::vector<ActionFactor> &factors, const json &j,
                     const std::string &path) {
    require_array(j, path);
    std::map<ElementaryProspect, Amplitude> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        require_object(j[i], p, {"modes", "amplitude"});
        auto key = parse_multi_index(factors, require_key(j[i], p, "modes"), p + ".modes");
        auto amp = require_amplitude(require_key(j[i], p, "amplitude"), p + ".amplitude");
        if (!out.emplace(std::move(key), amp).second) {
            invalid(p, "duplicate multi-index");
        }
    }
    return out;
}

inline ProspectAttributes parse_attributes(const json &j, const std::string &path) {
    require_object(j, path, {"payoff", "certainty", "activity"});
    ProspectAttributes a;
    const auto payoff = require_string(require_key(j, path, "payoff"), path + ".payoff");
    if (payoff == "gain") {
        a.payoff_sign = PayoffSign::gain;
    } else if (payoff == "loss") {
        a.payoff_sign = PayoffSign::loss;
    } else if (payoff == "neutral") {
        a.payoff_sign = PayoffSign::neutral;
    } else {
        invalid(path + ".payoff", "expected gain, loss or neutral");
    }
    const auto certainty =
        require_string(require_key(j, path, "certainty"), path + ".certainty");
    if (certainty == "certain") {
        a.certainty = Certainty::certain;
    } else if (certainty == "uncertain") {
        a.certainty = Certainty::uncertain;
    } else {
        invalid(path + ".certainty", "expected certain or uncertain");
    }
    const auto activity =
        require_string(require_key(j, path, "activity"), path + ".activity");
    if (activity == "active") {
        a.activity = Activity::active;
    } else if (activity == "passive") {
        a.activity = Activity::passive;
    } else if (activity == "neutral") {
        a.activity = Activity::neutral;
    } else {
        invalid(path + ".activity", "expected active, passive or neutral");
    }
    return a;
}

inline const char *to_string(PayoffSign s) {
    switch (s) {
    case PayoffSign::gain:
        return "gain";
    case PayoffSign::loss:
        return "loss";
    case PayoffSign::neutral:
        return "neutral";
    }
    return "?";
}

inline const char *to_string(Certainty c) {
    return c == Certainty::certain ? "certain" : "uncertain";
}

inline const char *to_string(Activity a) {
    switch (a) {
    case Activity::active:
        return "active";
    case Activity::passive:
        return "passive";
    case Activity::neutral:
        return "neutral";
    }
    return "?";
}

inline ordered_json multi_index_json(const std::vector<ActionFactor> &factors,
                                     const ElementaryProspect &e) {
    auto out = ordered_json::array();
    for (std::size_t k = 0; k < factors.size(); ++k) {
        out.push_back(factors[k].modes.at(e.modes.at(k)).label);
    }
    return out;
}

inline ordered_json amplitude_list_json(const std::vector<ActionFactor> &factors,
                                        const std::map<ElementaryProspect, Amplitude> &amps) {
    auto out = ordered_json::array();
    for (const auto &[key, amp] : amps) {
        ordered_json entry;
        entry["modes"] = multi_index_json(factors, key);
        entry["amplitude"] = ordered_json::array({amp.real(), amp.imag()});
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace detail

/**
 * @brief Parse and structurally validate a scenario document.
 *
 * Syntax errors raise ParseError with a line and column; semantic errors
 * raise InvalidScenario (prefixed with the JSON path) or SupportViolation.
 */
inline Scenario parse_scenario(std::string_view text) {
    using detail::invalid;
    using detail::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const auto byte = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, col] = detail::line_column(text, byte);
        throw ParseError("malformed scenario JSON", line, col);
    }

    Scenario s;
    detail::require_object(doc, "$", {"factors", "prospects", "state_of_mind", "options"});

    const auto &factors = detail::require_array(detail::require_key(doc, "$", "factors"),
                                                "$.factors");
    if (factors.empty()) {
        invalid("$.factors", "at least one factor is required");
    }
    std::set<std::string> factor_labels;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const auto p = "$.factors[" + std::to_string(k) + "]";
        detail::require_object(factors[k], p, {"label", "modes"});
        auto label = detail::require_string(detail::require_key(factors[k], p, "label"),
                                            p + ".label");
        if (!factor_labels.insert(label).second) {
            invalid(p + ".label", "duplicate factor label '" + label + "'");
        }
        const auto &modes = detail::require_array(
            detail::require_key(factors[k], p, "modes"), p + ".modes");
        std::vector<std::string> mode_labels;
        for (std::size_t j = 0; j < modes.size(); ++j) {
            mode_labels.push_back(
                detail::require_string(modes[j], p + ".modes[" + std::to_string(j) + "]"));
        }
        try {
            s.factors.push_back(make_factor(k, std::move(label), mode_labels));
        } catch (const InvalidScenario &e) {
            invalid(p, e.what());
        }
    }

    if (auto it = doc.find("options"); it != doc.end()) {
        const std::string p = "$.options";
        detail::require_object(*it, p,
                               {"normalization", "tolerance", "unitary",
                                "allow_free_support", "oracle", "seed"});
        auto &o = s.options;
        if (auto f = it->find("normalization"); f != it->end()) {
            const auto mode = detail::require_string(*f, p + ".normalization");
            try {
                o.policy.mode = parse_normalization_mode(mode);
            } catch (const UsageError &) {
                invalid(p + ".normalization", "expected strict, given or renorm");
            }
        }
        if (auto f = it->find("tolerance"); f != it->end()) {
            o.policy.tolerance = detail::require_number(*f, p + ".tolerance");
            if (!(o.policy.tolerance > 0.0)) {
                invalid(p + ".tolerance", "must be positive");
            }
        }
        if (auto f = it->find("unitary"); f != it->end()) {
            o.policy.unitary = detail::require_bool(*f, p + ".unitary");
        }
        if (auto f = it->find("allow_free_support"); f != it->end()) {
            o.allow_free_support = detail::require_bool(*f, p + ".allow_free_support");
        }
        if (auto f = it->find("oracle"); f != it->end()) {
            o.oracle = detail::require_bool(*f, p + ".oracle");
        }
        if (auto f = it->find("seed"); f != it->end() && !f->is_null()) {
            if (!f->is_number_unsigned()) {
                invalid(p + ".seed", "expected a non-negative integer");
            }
            o.seed = f->get<std::uint64_t>();
        }
    }

    const auto &prospects = detail::require_array(
        detail::require_key(doc, "$", "prospects"), "$.prospects");
    if (prospects.empty()) {
        invalid("$.prospects", "at least one prospect is required");
    }
    std::set<std::string> names;
    for (std::size_t n = 0; n < prospects.size(); ++n) {
        const auto p = "$.prospects[" + std::to_string(n) + "]";
        const auto &jp = prospects[n];
        detail::require_object(jp, p, {"name", "empty", "modes", "amplitudes", "attributes"});
        ProspectSpec spec;
        spec.name = detail::require_string(detail::require_key(jp, p, "name"), p + ".name");
        if (!names.insert(spec.name).second) {
            invalid(p + ".name", "duplicate prospect name '" + spec.name + "'");
        }
        if (auto f = jp.find("empty"); f != jp.end()) {
            spec.empty = detail::require_bool(*f, p + ".empty");
        }
        if (auto f = jp.find("modes"); f != jp.end()) {
            if (spec.empty) {
                invalid(p + ".modes", "the empty prospect selects no modes");
            }
            detail::require_array(*f, p + ".modes");
            if (f->size() != s.factors.size()) {
                invalid(p + ".modes", "expected one mode subset per factor");
            }
            for (std::size_t k = 0; k < s.factors.size(); ++k) {
                const auto pk = p + ".modes[" + std::to_string(k) + "]";
                detail::require_array((*f)[k], pk);
                std::vector<std::size_t> subset;
                for (std::size_t j = 0; j < (*f)[k].size(); ++j) {
                    subset.push_back(detail::resolve_mode(
                        s.factors[k], (*f)[k][j], pk + "[" + std::to_string(j) + "]"));
                }
                spec.mode_subsets.push_back(std::move(subset));
            }
        } else if (!spec.empty) {
            // omitted subsets default to every mode of every factor
            for (const auto &factor : s.factors) {
                std::vector<std::size_t> all(factor.size());
                for (std::size_t j = 0; j < all.size(); ++j) {
                    all[j] = j;
                }
                spec.mode_subsets.push_back(std::move(all));
            }
        }
        if (auto f = jp.find("amplitudes"); f != jp.end()) {
            spec.amplitudes = detail::parse_amplitude_list(s.factors, *f, p + ".amplitudes");
        } else if (!spec.empty) {
            invalid(p, "missing key 'amplitudes'");
        }
        if (auto f = jp.find("attributes"); f != jp.end()) {
            spec.attributes = detail::parse_attributes(*f, p + ".attributes");
        }
        try {
            validate_prospect(spec, s.factors, s.options.allow_free_support);
        } catch (const SupportViolation &e) {
            throw SupportViolation(p + ": " + e.what());
        } catch (const InvalidScenario &e) {
            invalid(p, e.what());
        }
        s.prospects.push_back(std::move(spec));
    }

    s.state_of_mind = detail::parse_amplitude_list(
        s.factors, detail::require_key(doc, "$", "state_of_mind"), "$.state_of_mind");
    double n2 = 0.0;
    for (const auto &[key, amp] : s.state_of_mind) {
        n2 += std::norm(amp);
    }
    if (!(n2 > 0.0)) {
        invalid("$.state_of_mind", "the state of mind is the zero vector");
    }
    return s;
}

/**
 * @brief Serialize to the scenario format. Doubles are written in their
 * shortest round-trip form, so parse_scenario(serialize_scenario(s)) == s.
 */
inline std::string serialize_scenario(const Scenario &s) {
    using detail::ordered_json;
    ordered_json doc;
    auto factors = ordered_json::array();
    for (const auto &f : s.factors) {
        ordered_json jf;
        jf["label"] = f.label;
        auto modes = ordered_json::array();
        for (const auto &m : f.modes) {
            modes.push_back(m.label);
        }
        jf["modes"] = std::move(modes);
        factors.push_back(std::move(jf));
    }
    doc["factors"] = std::move(factors);

    auto prospects = ordered_json::array();
    for (const auto &spec : s.prospects) {
        ordered_json jp;
        jp["name"] = spec.name;
        if (spec.empty) {
            jp["empty"] = true;
        } else {
            auto subsets = ordered_json::array();
            for (std::size_t k = 0; k < spec.mode_subsets.size(); ++k) {
                auto labels = ordered_json::array();
                for (auto j : spec.mode_subsets[k]) {
                    labels.push_back(s.factors.at(k).modes.at(j).label);
                }
                subsets.push_back(std::move(labels));
            }
            jp["modes"] = std::move(subsets);
        }
        if (!spec.empty || !spec.amplitudes.empty()) {
            jp["amplitudes"] = detail::amplitude_list_json(s.factors, spec.amplitudes);
        }
        if (spec.attributes) {
            ordered_json ja;
            ja["payoff"] = detail::to_string(spec.attributes->payoff_sign);
            ja["certainty"] = detail::to_string(spec.attributes->certainty);
            ja["activity"] = detail::to_string(spec.attributes->activity);
            jp["attributes"] = std::move(ja);
        }
        prospects.push_back(std::move(jp));
    }
    doc["prospects"] = std::move(prospects);
    doc["state_of_mind"] = detail::amplitude_list_json(s.factors, s.state_of_mind);

    ordered_json opts;
    opts["normalization"] = to_string(s.options.policy.mode);
    opts["tolerance"] = s.options.policy.tolerance;
    opts["unitary"] = s.options.policy.unitary;
    opts["allow_free_support"] = s.options.allow_free_support;
    opts["oracle"] = s.options.oracle;
    if (s.options.seed) {
        opts["seed"] = *s.options.seed;
    }
    doc["options"] = std::move(opts);
    return doc.dump(2) + "\n";
}

/// A scenario lowered to mind-space vectors, ready for evaluation.
struct CompiledScenario {
    MindSpace space;
    std::vector<std::string> names;
    std::vector<StateVector> states;
    StateOfMind psi;
    std::vector<std::optional<ProspectAttributes>> attributes;
    std::vector<bool> empty;
    NormalizationPolicy policy;
    bool oracle{false};

    [[nodiscard]] bool has_attributes() const {
        for (const auto &a : attributes) {
            if (a) {
                return true;
            }
        }
        return false;
    }
};

/**
 * @brief Build prospect states and the state of mind.
 *
 * A state of mind whose squared norm is within the policy tolerance of one
 * is used as written; otherwise it is rescaled to unit norm.
 */
inline CompiledScenario compile(const Scenario &s) {
    MindSpace space(s.factors);
    std::vector<std::string> names;
    std::vector<StateVector> states;
    std::vector<std::optional<ProspectAttributes>> attrs;
    std::vector<bool> empty;
    for (const auto &spec : s.prospects) {
        names.push_back(spec.name);
        states.push_back(build_prospect_state(spec, space, s.options.allow_free_support));
        attrs.push_back(spec.attributes);
        empty.push_back(spec.empty);
    }
    StateVector psi(space.dimension());
    for (const auto &[key, amp] : s.state_of_mind) {
        psi[basis_index(key, space)] = amp;
    }
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0)) {
        throw InvalidScenario("$.state_of_mind: the state of mind is the zero vector");
    }
    const bool unit = std::abs(n2 - 1.0) <= s.options.policy.tolerance;
    StateOfMind mind = unit ? StateOfMind(std::move(psi), s.options.policy.tolerance)
                            : StateOfMind::normalized(psi);
    return CompiledScenario{std::move(space), std::move(names), std::move(states),
                            std::move(mind),  std::move(attrs), std::move(empty),
                            s.options.policy, s.options.oracle};
}

/// Scenario amplitudes of a dense vector, keeping only nonzero entries.
inline std::map<ElementaryProspect, Amplitude> sparse_amplitudes(const StateVector &v,
                                                                 const MindSpace &space) {
    std::map<ElementaryProspect, Amplitude> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != Amplitude{}) {
            out.emplace(basis_unindex(i, space), v[i]);
        }
    }
    return out;
}

} // namespace qdt
