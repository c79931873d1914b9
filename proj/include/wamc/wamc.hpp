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

#ifndef WAMC_WAMC_HPP
#define WAMC_WAMC_HPP

#include "wamc/automaton.hpp"
#include "wamc/automaton_io.hpp"
#include "wamc/bisim.hpp"
#include "wamc/checker.hpp"
#include "wamc/closure.hpp"
#include "wamc/errors.hpp"
#include "wamc/formula.hpp"
#include "wamc/formula_parser.hpp"
#include "wamc/linalg.hpp"
#include "wamc/report.hpp"
#include "wamc/semiring.hpp"

#endif // WAMC_WAMC_HPP
