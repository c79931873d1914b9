/*
 * Copyright 2026 The wamc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// wamc: command-line front end (check, minimize, equiv, weight).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wamc/wamc.hpp"

namespace {

enum Exit { ok = 0, fails = 1, error = 2 };

struct Config {
    std::vector<std::string> models;
    std::string formula;
    std::string formula_file;
    std::string output = "plain";
    bool show_weights = false;
    bool report_classes = false;
    bool ctl = false;
    std::optional<std::string> seq;
    std::string path;
    std::string from;
    std::optional<std::uint64_t> any;
    bool reach = false;
    std::string out;
    double tol = wamc::default_bisim_tolerance;
};

std::string read_file(const std::string& name)
{
    std::ifstream in(name, std::ios::binary);
    if (!in) throw wamc::Error("cannot open '" + name + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

wamc::AnyAutomaton load(const std::string& name)
{
    try {
        return wamc::parse_automaton(read_file(name));
    } catch (const wamc::ParseError& e) {
        throw wamc::ParseError(name + ": " + e.what());
    }
}

std::vector<std::string> split_commas(const std::string& text)
{
    std::vector<std::string> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        auto comma = text.find(',', start);
        out.push_back(std::string(wamc::detail::trim(std::string_view(text).substr(start, comma - start))));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int cmd_check(const Config& cfg)
{
    std::string text = cfg.formula_file.empty() ? cfg.formula : read_file(cfg.formula_file);
    if (text.empty()) throw wamc::ConfigError("check needs --formula or --formula-file");
    auto model = load(cfg.models.front());
    return std::visit(
        [&]<class S>(const wamc::Automaton<S>& a) {
            auto phi = cfg.ctl ? wamc::ctl_compat<S>(text) : wamc::parse_formula<S>(text);
            wamc::CheckOptions opts;
            opts.full_weights = cfg.show_weights || cfg.output == "records";
            auto r = wamc::check(a, phi, opts);
            if (cfg.output == "records")
                std::cout << wamc::format_records(wamc::make_records(a, r));
            else
                std::cout << wamc::format_plain(a, r, cfg.show_weights);
            for (const auto& e : a.init().entries())
                if (!r.holds(e.index)) return Exit::fails;
            return Exit::ok;
        },
        model);
}

int cmd_minimize(const Config& cfg)
{
    auto model = load(cfg.models.front());
    return std::visit(
        [&]<class S>(const wamc::Automaton<S>& a) {
            auto p = wamc::largest_bisimulation(a, cfg.tol);
            auto q = wamc::quotient(a, p, cfg.tol);
            auto text = wamc::serialize_automaton(q);
            if (cfg.out.empty()) {
                std::cout << text;
                if (cfg.report_classes) std::cerr << wamc::class_report(a, p);
            } else {
                std::ofstream f(cfg.out, std::ios::binary);
                if (!(f << text)) throw wamc::Error("cannot write '" + cfg.out + "'");
                if (cfg.report_classes) std::cout << wamc::class_report(a, p);
            }
            return Exit::ok;
        },
        model);
}

int cmd_equiv(const Config& cfg)
{
    if (cfg.models.size() != 2) throw wamc::ConfigError("equiv needs exactly two --model options");
    auto m1 = load(cfg.models[0]);
    auto m2 = load(cfg.models[1]);
    if (m1.index() != m2.index()) throw wamc::ModelError("equiv: models use different semirings");
    bool same = std::visit(
        [&]<class S>(const wamc::Automaton<S>& a) {
            return wamc::automata_equivalent(a, std::get<wamc::Automaton<S>>(m2), cfg.tol);
        },
        m1);
    std::cout << (same ? "equivalent" : "not equivalent") << "\n";
    return same ? Exit::ok : Exit::fails;
}

int cmd_weight(const Config& cfg)
{
    int given = (cfg.seq ? 1 : 0) + (cfg.path.empty() ? 0 : 1) + (cfg.any ? 1 : 0);
    if (given != 1) throw wamc::ConfigError("weight needs exactly one of --seq, --path, --any");
    auto model = load(cfg.models.front());
    return std::visit(
        [&]<class S>(const wamc::Automaton<S>& a) {
            std::optional<wamc::StateId> from;
            if (!cfg.from.empty()) from = a.state(cfg.from);
            if (!cfg.path.empty()) {
                auto items = split_commas(cfg.path);
                if (items.size() % 2 == 0) throw wamc::ModelError("--path alternates states and labels: S,l,S,...");
                wamc::Path p;
                for (std::size_t i = 0; i < items.size(); ++i) {
                    if (i % 2 == 0)
                        p.states.push_back(a.state(items[i]));
                    else
                        p.labels.push_back(a.label(items[i]));
                }
                std::cout << S::format(wamc::path_weight(a, p)) << "\n";
            } else if (cfg.any) {
                std::cout << S::format(wamc::any_label_weight(a, *cfg.any, from)) << "\n";
            } else {
                auto labels = wamc::resolve_labels(a, split_commas(*cfg.seq));
                if (cfg.reach) {
                    auto d = wamc::reach_vector(a, std::span<const wamc::LabelId>(labels), from);
                    for (const auto& e : d.entries()) std::cout << a.state_name(e.index) << "\t" << S::format(e.value) << "\n";
                } else {
                    std::cout << S::format(wamc::seq_weight(a, std::span<const wamc::LabelId>(labels), from)) << "\n";
                }
            }
            return Exit::ok;
        },
        model);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Model checker for weighted automata over semirings"};
    app.require_subcommand(1);
    Config cfg;

    auto* check = app.add_subcommand("check", "Check a formula; exit 0 iff every initial state satisfies it");
    check->add_option("--model", cfg.models, "Model file")->required()->expected(1);
    check->add_option("--formula", cfg.formula, "Formula text");
    check->add_option("--formula-file", cfg.formula_file, "File holding the formula");
    check->add_option("--output", cfg.output, "plain or records")->check(CLI::IsMember({"plain", "records"}));
    check->add_flag("--show-weights", cfg.show_weights, "Print the weight compared against the threshold");
    check->add_flag("--ctl-compat", cfg.ctl, "Accept CTL operators (boolean models)");

    auto* minimize = app.add_subcommand("minimize", "Write the quotient by the largest bisimulation");
    minimize->add_option("--model", cfg.models, "Model file")->required()->expected(1);
    minimize->add_option("--out", cfg.out, "Output file (default: stdout)");
    minimize->add_flag("--report-classes", cfg.report_classes, "Print the equivalence classes");
    minimize->add_option("--tol", cfg.tol, "Signature tolerance")->capture_default_str();

    auto* equiv = app.add_subcommand("equiv", "Exit 0 iff two models are bisimulation equivalent");
    equiv->add_option("--model", cfg.models, "Model file (give twice)")->required();
    equiv->add_option("--tol", cfg.tol, "Signature tolerance")->capture_default_str();

    auto* weight = app.add_subcommand("weight", "Weight of a path, a label sequence, or all paths of a length");
    weight->add_option("--model", cfg.models, "Model file")->required()->expected(1);
    weight->add_option("--seq", cfg.seq, "Comma-separated labels; empty for the zero-length sequence");
    weight->add_option("--path", cfg.path, "State,label,state,... alternating");
    weight->add_option("--any", cfg.any, "Sum over all label sequences of this length");
    weight->add_option("--from", cfg.from, "Start in this state with its initial weight");
    weight->add_flag("--reach", cfg.reach, "With --seq, print the weight vector reached instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Exit::error;
    }

    try {
        if (*check) return cmd_check(cfg);
        if (*minimize) return cmd_minimize(cfg);
        if (*equiv) return cmd_equiv(cfg);
        if (*weight) return cmd_weight(cfg);
    } catch (const wamc::UnsupportedError& e) {
        std::cerr << "wamc: unsupported: " << e.what() << "\n";
        return Exit::error;
    } catch (const std::exception& e) {
        std::cerr << "wamc: error: " << e.what() << "\n";
        return Exit::error;
    }
    return Exit::error;
}
