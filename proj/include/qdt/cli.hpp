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
 * The `qdt` command line.
 *
 *   qdt validate <file>... [--oracle] [--jobs N]
 *   qdt evaluate <file>... [--jobs N]
 *   qdt rank <file>
 *   qdt demo <h2|disjunction|register> [--phase X] [--event-weight W] [--scenario]
 *   qdt random --seed S --modes 2,2 --prospects N
 *
 * Common flags: --tolerance T, --normalization strict|given|renorm,
 * --format table|json|csv, --oracle. A file argument of the form
 * `demo:<name>` loads a built-in scenario.
 *
 * Exit codes: 0 success, 1 validation failure, 2 parse or usage error.
 * Errors are reported as one JSON line on the diagnostic stream.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "builtins.hpp"
#include "errors.hpp"
#include "report.hpp"
#include "scenario.hpp"

namespace qdt::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, usage_error = 2 };

struct CommonOptions {
    std::optional<double> tolerance;
    std::optional<std::string> normalization;
    std::string format{"table"};
    bool oracle{false};
    std::size_t jobs{1};
};

struct Outcome {
    int code{ok};
    std::string out;
    std::string err;
};

inline std::string error_line(const std::string &kind, const std::string &message,
                              const std::map<std::string, double> &residuals = {}) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    if (!residuals.empty()) {
        nlohmann::ordered_json r;
        for (const auto &[k, v] : residuals) {
            r[k] = v;
        }
        j["residuals"] = std::move(r);
    }
    return j.dump() + "\n";
}

inline Scenario load_scenario(const std::string &target) {
    static const std::string prefix = "demo:";
    if (target.rfind(prefix, 0) == 0) {
        return builtin_scenario(target.substr(prefix.size()));
    }
    std::ifstream in(target, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + target + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

inline void apply_overrides(Scenario &s, const CommonOptions &opt) {
    if (opt.normalization) {
        s.options.policy.mode = parse_normalization_mode(*opt.normalization);
    }
    if (opt.tolerance) {
        if (!(*opt.tolerance > 0.0)) {
            throw UsageError("--tolerance must be positive");
        }
        s.options.policy.tolerance = *opt.tolerance;
    }
    if (opt.oracle) {
        s.options.oracle = true;
    }
}

enum class Command { evaluate, validate, rank };

inline std::string render(const DecisionReport &r, const std::string &format, bool ranked) {
    if (format == "json") {
        auto doc = report_json(r);
        if (ranked) {
            auto sorted = nlohmann::ordered_json::array();
            for (auto i : r.ranking) {
                sorted.push_back(doc["prospects"][i]);
            }
            doc["prospects"] = std::move(sorted);
        }
        return doc.dump(2) + "\n";
    }
    if (format == "csv") {
        return render_csv(r, ranked);
    }
    return render_table(r, ranked);
}

/// Run one command on an already loaded scenario. Never throws.
inline Outcome run_scenario(Command cmd, Scenario s, const CommonOptions &opt) {
    Outcome o;
    try {
        apply_overrides(s, opt);
        const auto compiled = compile(s);
        const auto report = make_report(compiled, s.options.oracle);
        o.out = render(report, opt.format, cmd == Command::rank);
        if (cmd == Command::validate) {
            const auto failures = validation_failures(report);
            if (!failures.empty()) {
                std::string list;
                for (const auto &f : failures) {
                    list += (list.empty() ? "" : ",") + f;
                }
                o.err = error_line("ValidationFailure", "failed checks: " + list);
                o.code = validation_failure;
            }
        }
    } catch (const NormalizationError &e) {
        o.err = error_line(e.kind(), e.what(), e.residuals());
        o.code = validation_failure;
    } catch (const NumericalError &e) {
        o.err = error_line(e.kind(), e.what());
        o.code = validation_failure;
    } catch (const StateError &e) {
        o.err = error_line(e.kind(), e.what());
        o.code = validation_failure;
    } catch (const Error &e) {
        o.err = error_line(e.kind(), e.what());
        o.code = usage_error;
    } catch (const std::exception &e) {
        o.err = error_line("InternalError", e.what());
        o.code = validation_failure;
    }
    return o;
}

inline Outcome run_target(Command cmd, const std::string &target, const CommonOptions &opt) {
    try {
        return run_scenario(cmd, load_scenario(target), opt);
    } catch (const Error &e) {
        return {usage_error, {}, error_line(e.kind(), e.what())};
    }
}

/// Files are processed concurrently when jobs > 1; output keeps input order.
inline int run_targets(Command cmd, const std::vector<std::string> &targets,
                       const CommonOptions &opt, std::ostream &out, std::ostream &err) {
    std::vector<Outcome> outcomes(targets.size());
    if (opt.jobs <= 1 || targets.size() <= 1) {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            outcomes[i] = run_target(cmd, targets[i], opt);
        }
    } else {
        for (std::size_t start = 0; start < targets.size(); start += opt.jobs) {
            const std::size_t stop = std::min(targets.size(), start + opt.jobs);
            std::vector<std::future<Outcome>> batch;
            for (std::size_t i = start; i < stop; ++i) {
                batch.push_back(std::async(std::launch::async, run_target, cmd,
                                           std::cref(targets[i]), std::cref(opt)));
            }
            for (std::size_t i = start; i < stop; ++i) {
                outcomes[i] = batch[i - start].get();
            }
        }
    }
    int code = ok;
    for (const auto &o : outcomes) {
        out << o.out;
        err << o.err;
        code = std::max(code, o.code);
    }
    return code;
}

inline void add_common(CLI::App *sub, CommonOptions &opt, bool with_jobs) {
    sub->add_option("--tolerance", opt.tolerance, "validation tolerance");
    sub->add_option("--normalization", opt.normalization, "strict, given or renorm")
        ->check(CLI::IsMember({"strict", "given", "renorm"}));
    sub->add_option("--format", opt.format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_flag("--oracle", opt.oracle, "cross-check with dense operators");
    if (with_jobs) {
        sub->add_option("--jobs", opt.jobs, "files evaluated concurrently")
            ->check(CLI::PositiveNumber);
    }
}

inline int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum decision theory engine", "qdt"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::vector<std::string> targets;
    std::string target;

    auto *validate = app.add_subcommand("validate", "evaluate and check every identity");
    validate->add_option("files", targets, "scenario files or demo:<name>")->required();
    add_common(validate, opt, true);

    auto *evaluate = app.add_subcommand("evaluate", "print the decision report");
    evaluate->add_option("files", targets, "scenario files or demo:<name>")->required();
    add_common(evaluate, opt, true);

    auto *rank = app.add_subcommand("rank", "print prospects from most to least preferred");
    rank->add_option("file", target, "scenario file or demo:<name>")->required();
    add_common(rank, opt, false);

    std::string demo_name;
    std::optional<double> phase;
    std::optional<double> event_weight;
    bool emit_scenario = false;
    auto *demo = app.add_subcommand("demo", "evaluate a built-in scenario");
    demo->add_option("name", demo_name, "h2, disjunction or register")
        ->required()
        ->check(CLI::IsMember(builtin_names()));
    demo->add_option("--phase", phase, "disjunction: relative phase of the act prospect");
    demo->add_option("--event-weight", event_weight, "disjunction: probability of event e0");
    demo->add_flag("--scenario", emit_scenario, "print the scenario document instead");
    add_common(demo, opt, false);

    std::uint64_t seed = 1;
    std::vector<std::size_t> modes{2, 2};
    std::optional<std::size_t> num_prospects;
    auto *random = app.add_subcommand("random", "print a seeded unitary-strict scenario");
    random->add_option("--seed", seed, "generator seed");
    random->add_option("--modes", modes, "modes per factor, e.g. 2,3")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    random->add_option("--prospects", num_prospects, "number of prospects (>= dimension)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << error_line("UsageError", e.what());
        return usage_error;
    }

    if (*validate) {
        return run_targets(Command::validate, targets, opt, out, err);
    }
    if (*evaluate) {
        return run_targets(Command::evaluate, targets, opt, out, err);
    }
    if (*rank) {
        return run_targets(Command::rank, {target}, opt, out, err);
    }
    try {
        if (*demo) {
            if ((phase || event_weight) && demo_name != "disjunction") {
                throw UsageError("--phase and --event-weight apply to the disjunction demo");
            }
            Scenario s = demo_name == "disjunction"
                             ? disjunction_scenario(phase.value_or(0.0), event_weight.value_or(0.5))
                             : builtin_scenario(demo_name);
            if (emit_scenario) {
                apply_overrides(s, opt);
                out << serialize_scenario(s);
                return ok;
            }
            const auto o = run_scenario(Command::evaluate, std::move(s), opt);
            out << o.out;
            err << o.err;
            return o.code;
        }
        if (*random) {
            std::size_t dim = 1;
            for (auto m : modes) {
                dim *= m;
            }
            out << serialize_scenario(
                random_strict_scenario(seed, modes, num_prospects.value_or(dim)));
            return ok;
        }
    } catch (const Error &e) {
        err << error_line(e.kind(), e.what());
        return usage_error;
    }
    return usage_error;
}

inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args, out, err);
}

} // namespace qdt::cli
