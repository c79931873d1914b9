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

// Builds the aggregated driving-test model in code and checks a few
// formulas over it.

#include <iostream>

#include "wamc/wamc.hpp"

using namespace wamc;
using P = ProbSemiring;

int main()
{
    AutomatonBuilder<P> b;
    for (const char* s : {"L'", "ABC", "DEF", "G'"}) b.add_state(s, {"learn"});
    b.add_state("H'", {"ok"});
    for (const char* l : {"l", "d", "e", "f"}) b.add_label(l);
    b.add_transition("L'", "l", "L'", 0.5);
    b.add_transition("L'", "l", "ABC", 0.5);
    b.add_transition("ABC", "d", "ABC", 1.0 / 3);
    b.add_transition("ABC", "e", "DEF", 1.0 / 3);
    b.add_transition("ABC", "f", "H'", 1.0 / 3);
    b.add_transition("DEF", "d", "DEF", 0.5);
    b.add_transition("DEF", "f", "G'", 0.5);
    b.add_transition("G'", "l", "L'", 1.0);
    b.set_init("L'", 1.0);
    b.set_final("H'", 1.0);
    auto a = b.build();

    for (const char* text : {"true U{>=0.5, 10} ok", "true U{>=0.99, inf} ok", "true AU{>=0.5, inf} ok",
                             "[l]{>=0.5}.learn"}) {
        auto r = check(a, parse_formula<P>(text), {.full_weights = true});
        std::cout << text << "\n";
        for (StateId x = 0; x < a.num_states(); ++x)
            std::cout << "  " << a.state_name(x) << "\t" << (r.holds(x) ? "sat  " : "unsat") << "\t"
                      << P::format((*r.weights)[x]) << "\n";
    }
}
