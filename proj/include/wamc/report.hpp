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

#ifndef WAMC_REPORT_HPP
#define WAMC_REPORT_HPP

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wamc/automaton.hpp"
#include "wamc/checker.hpp"
#include "wamc/errors.hpp"

namespace wamc {

/// One line of record output: state, verdict, weight ("-" when the
/// formula has no quantitative root).
struct Record {
    std::string state;
    bool verdict = false;
    std::optional<std::string> weight;

    bool operator==(const Record&) const = default;
};

/// Satisfying states in index order, one per line; with weights, a tab
/// and the weight literal follow the name.
template <Semiring S>
std::string format_plain(const Automaton<S>& a, const SatResult<S>& r, bool show_weights)
{
    std::string out;
    for (StateId x = 0; x < a.num_states(); ++x) {
        if (!r.holds(x)) continue;
        out += a.state_name(x);
        if (show_weights && r.weights) out += "\t" + S::format((*r.weights)[x]);
        out += "\n";
    }
    return out;
}

template <Semiring S>
std::vector<Record> make_records(const Automaton<S>& a, const SatResult<S>& r)
{
    std::vector<Record> out;
    for (StateId x = 0; x < a.num_states(); ++x) {
        Record rec{a.state_name(x), r.holds(x), std::nullopt};
        if (r.weights) rec.weight = S::format((*r.weights)[x]);
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::string format_records(const std::vector<Record>& records)
{
    std::string out = "# state\tverdict\tweight\n";
    for (const auto& r : records)
        out += r.state + "\t" + (r.verdict ? "sat" : "unsat") + "\t" + r.weight.value_or("-") + "\n";
    return out;
}

inline std::vector<Record> parse_records(std::istream& in)
{
    std::vector<Record> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (fields.size() != 3) throw ParseError("record needs three tab-separated fields", no);
        Record r;
        r.state = fields[0];
        if (fields[1] == "sat")
            r.verdict = true;
        else if (fields[1] != "unsat")
            throw ParseError("bad verdict '" + fields[1] + "'", no);
        if (fields[2] != "-") r.weight = fields[2];
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<Record> parse_records(const std::string& text)
{
    std::istringstream in(text);
    return parse_records(in);
}

} // namespace wamc

#endif // WAMC_REPORT_HPP
