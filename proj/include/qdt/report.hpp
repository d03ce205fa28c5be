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
 * Decision reports and their table, JSON and CSV renderings.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lattice.hpp"
#include "measure.hpp"
#include "oracle.hpp"
#include "scenario.hpp"

namespace qdt {

/// Largest deviations between the fast path and the dense-operator oracle.
struct OracleComparison {
    double p_max_dev{};
    double conjunction_max_dev{};
    double q_max_dev{};
    double imag_max{};
    double identity_residual{};
    double hermitian_max_dev{};

    [[nodiscard]] double worst() const {
        return std::max({p_max_dev, conjunction_max_dev, q_max_dev});
    }
};

inline OracleComparison compare_with_oracle(const ProbabilisticState &state,
                                            const oracle::OracleResult &dense) {
    if (dense.prospects.size() != state.prospects.size()) {
        throw StateError("oracle and fast path evaluated different prospects");
    }
    OracleComparison c;
    for (std::size_t n = 0; n < dense.prospects.size(); ++n) {
        const auto &fast = state.prospects[n];
        const auto &slow = dense.prospects[n];
        c.p_max_dev = std::max(c.p_max_dev, std::abs(fast.p_raw - slow.p));
        c.q_max_dev = std::max(c.q_max_dev, std::abs(fast.q - slow.q));
        c.imag_max = std::max(c.imag_max, slow.imag_residue);
        for (std::size_t a = 0; a < slow.conjunction.size(); ++a) {
            c.conjunction_max_dev = std::max(
                c.conjunction_max_dev, std::abs(fast.conjunction.at(a) - slow.conjunction[a]));
        }
    }
    c.identity_residual = dense.identity_residual;
    c.hermitian_max_dev = dense.hermitian_max_dev;
    return c;
}

struct DecisionReport {
    ProbabilisticState state;
    std::vector<std::size_t> ranking;
    OptimalProspect optimal;
    std::optional<OracleComparison> oracle;
    std::optional<AttractionReport> attraction;
    bool lattice_bounds_ok{true};

    /// 1-based rank of prospect i.
    [[nodiscard]] std::size_t rank_of(std::size_t i) const {
        for (std::size_t r = 0; r < ranking.size(); ++r) {
            if (ranking[r] == i) {
                return r + 1;
            }
        }
        throw StateError("prospect not ranked");
    }
};

/**
 * @brief Evaluate a compiled scenario and gather every diagnostic.
 *
 * Strict-mode violations propagate as NormalizationError.
 */
inline DecisionReport make_report(const CompiledScenario &c, bool run_oracle,
                                  std::size_t oracle_cap = oracle::default_dimension_cap) {
    DecisionReport r;
    r.state = evaluate_all(c.names, c.states, c.psi, c.policy);
    r.ranking = ranking(r.state);
    r.optimal = optimal_prospect(r.state);
    r.lattice_bounds_ok = check_lattice_bounds(c.empty, r.state);
    if (run_oracle) {
        r.oracle = compare_with_oracle(r.state, oracle::evaluate(c.states, c.psi, oracle_cap));
    }
    if (c.has_attributes()) {
        r.attraction = check_attraction_consistency(c.attributes, r.state);
    }
    return r;
}

/// Reasons a report fails validation; empty when it passes.
inline std::vector<std::string> validation_failures(const DecisionReport &r) {
    std::vector<std::string> out;
    const auto &s = r.state;
    double scale = 1.0;
    for (const auto &p : s.prospects) {
        scale = std::max({scale, p.p_raw, p.diag_sum, std::abs(p.q)});
    }
    if (s.prop1_max_residual > identity_tolerance * scale) {
        out.push_back("prop1_max_residual");
    }
    if (s.policy.mode == NormalizationMode::strict) {
        if (std::abs(s.sum_p - 1.0) > s.policy.tolerance) {
            out.push_back("sum_p");
        }
        if (s.column_norm_max_dev > s.policy.tolerance) {
            out.push_back("column_norm_max_dev");
        }
        if (std::abs(s.sum_q) > 10.0 * s.policy.tolerance) {
            out.push_back("sum_q");
        }
        if (r.oracle && r.oracle->identity_residual > s.policy.tolerance) {
            out.push_back("identity_residual");
        }
    }
    if (r.oracle && r.oracle->worst() > identity_tolerance * scale) {
        out.push_back("oracle_mismatch");
    }
    if (!r.lattice_bounds_ok) {
        out.push_back("lattice_bounds");
    }
    if (r.attraction && !r.attraction->all_pass()) {
        out.push_back("attraction");
    }
    return out;
}

/// %.17g, the shortest fixed width that round-trips every double.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::ordered_json report_json(const DecisionReport &r) {
    using nlohmann::ordered_json;
    ordered_json doc;
    auto prospects = ordered_json::array();
    for (std::size_t i = 0; i < r.state.prospects.size(); ++i) {
        const auto &p = r.state.prospects[i];
        ordered_json jp;
        jp["name"] = p.name;
        jp["p_raw"] = p.p_raw;
        jp["diag_sum"] = p.diag_sum;
        jp["q"] = p.q;
        if (p.p_normalized) {
            jp["p_normalized"] = *p.p_normalized;
        }
        jp["rank"] = r.rank_of(i);
        prospects.push_back(std::move(jp));
    }
    doc["prospects"] = std::move(prospects);
    ordered_json checks;
    checks["sum_p"] = r.state.sum_p;
    checks["sum_q"] = r.state.sum_q;
    checks["column_norm_max_dev"] = r.state.column_norm_max_dev;
    if (r.oracle) {
        checks["identity_residual"] = r.oracle->identity_residual;
    }
    checks["prop1_max_residual"] = r.state.prop1_max_residual;
    doc["checks"] = std::move(checks);
    doc["optimal"] = r.optimal.name;
    if (r.attraction) {
        auto pairs = ordered_json::array();
        for (const auto &c : r.attraction->checks) {
            ordered_json jc;
            jc["repulsive"] = c.repulsive;
            jc["attractive"] = c.attractive;
            auto rules = ordered_json::array();
            for (auto rule : c.rules) {
                rules.push_back(to_string(rule));
            }
            jc["rules"] = std::move(rules);
            jc["q_repulsive"] = c.q_repulsive;
            jc["q_attractive"] = c.q_attractive;
            jc["pass"] = c.pass;
            pairs.push_back(std::move(jc));
        }
        doc["attraction"] = std::move(pairs);
    }
    return doc;
}

inline std::string render_json(const DecisionReport &r) { return report_json(r).dump(2) + "\n"; }

/**
 * @brief CSV with header name,p_raw,diag_sum,q,p_normalized,rank. Rows in
 * declaration order, or in rank order when `ranked` is set.
 */
inline std::string render_csv(const DecisionReport &r, bool ranked = false) {
    std::ostringstream out;
    out << "name,p_raw,diag_sum,q,p_normalized,rank\n";
    for (std::size_t k = 0; k < r.state.prospects.size(); ++k) {
        const std::size_t i = ranked ? r.ranking[k] : k;
        const auto &p = r.state.prospects[i];
        out << p.name << ',' << format_number(p.p_raw) << ',' << format_number(p.diag_sum)
            << ',' << format_number(p.q) << ','
            << (p.p_normalized ? format_number(*p.p_normalized) : std::string{}) << ','
            << r.rank_of(i) << '\n';
    }
    return out.str();
}

inline std::string render_table(const DecisionReport &r, bool ranked = false) {
    std::ostringstream out;
    char line[256];
    const bool norm = r.state.uses_normalized();
    std::snprintf(line, sizeof line, "%-16s %12s %12s %12s%s %5s\n", "prospect", "p_raw",
                  "diag_sum", "q", norm ? "  p_normalized" : "", "rank");
    out << line;
    for (std::size_t k = 0; k < r.state.prospects.size(); ++k) {
        const std::size_t i = ranked ? r.ranking[k] : k;
        const auto &p = r.state.prospects[i];
        char pn[32] = "";
        if (p.p_normalized) {
            std::snprintf(pn, sizeof pn, "  %12.9f", *p.p_normalized);
        }
        std::snprintf(line, sizeof line, "%-16s %12.9f %12.9f %12.9f%s %5zu\n", p.name.c_str(),
                      p.p_raw, p.diag_sum, p.q, pn, r.rank_of(i));
        out << line;
    }
    out << "\nnormalization: " << to_string(r.state.policy.mode)
        << "   ordered by: " << r.state.ordering_field() << '\n';
    out << "optimal: " << r.optimal.name << (r.optimal.tie ? " (tie)" : "") << '\n';
    out << "checks:\n";
    out << "  sum_p               " << format_number(r.state.sum_p) << '\n';
    out << "  sum_q               " << format_number(r.state.sum_q) << '\n';
    out << "  column_norm_max_dev " << format_number(r.state.column_norm_max_dev) << '\n';
    if (r.state.policy.unitary) {
        out << "  column_gram_max_dev " << format_number(r.state.column_gram_max_dev) << '\n';
    }
    out << "  prop1_max_residual  " << format_number(r.state.prop1_max_residual) << '\n';
    if (r.oracle) {
        out << "  identity_residual   " << format_number(r.oracle->identity_residual) << '\n';
        out << "  oracle p dev        " << format_number(r.oracle->p_max_dev) << '\n';
        out << "  oracle p(pi e) dev  " << format_number(r.oracle->conjunction_max_dev) << '\n';
        out << "  oracle q dev        " << format_number(r.oracle->q_max_dev) << '\n';
    }
    if (r.attraction) {
        out << "attraction:\n";
        for (const auto &c : r.attraction->checks) {
            out << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.repulsive
                << " more repulsive than " << c.attractive << "  (";
            for (std::size_t k = 0; k < c.rules.size(); ++k) {
                out << (k ? ", " : "") << to_string(c.rules[k]);
            }
            out << ")\n";
        }
        for (const auto &[a, b] : r.attraction->conflicting) {
            out << "  conflicting attributes: " << a << ", " << b << '\n';
        }
        for (const auto &[a, b] : r.attraction->skipped) {
            out << "  skipped (no attributes): " << a << ", " << b << '\n';
        }
    }
    return out.str();
}

} // namespace qdt
