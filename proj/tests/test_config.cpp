// Copyright 2026 The docseg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include "doctest.h"
#include "docseg/config.hpp"

using namespace docseg;

TEST_CASE("empty config keeps every default") {
    const RunConfig rc = parse_run_config("");
    CHECK(rc.evolve.population_size == 500);
    CHECK(rc.evolve.max_evaluations == 200000);
    CHECK(rc.evolve.tournament_size == 4);
    CHECK(rc.evolve.crossover_rate == 0.9);
    CHECK(rc.evolve.mutation_rate == 0.2);
    CHECK(rc.evolve.max_len == 256);
    CHECK(rc.evolve.n_registers == 8);
    CHECK(rc.evolve.const_min == -10.0);
    CHECK(rc.evolve.const_max == 10.0);
    CHECK(rc.evolve.pos_weight == 1.0);
    CHECK(rc.evolve.neg_weight == 1.0);
    CHECK(rc.evolve.runs == 5);
    CHECK(rc.rlsa.h_threshold == 300);
    CHECK(rc.rlsa.v_threshold == 280);
    CHECK(rc.rlsa.final_threshold == 30);
    CHECK(rc.active_k == 1.0);
    CHECK(rc.despeckle_area == 4);
}

TEST_CASE("values override defaults, comments and blanks are ignored") {
    const RunConfig rc = parse_run_config(
        "# evolution\n"
        "population_size = 64\n"
        "\n"
        "  max_evaluations=5000   # inline note\n"
        "mutation_rate = 0.35\n"
        "seed = 99\n"
        "hth = 120\n"
        "k = 0.5\n"
        "despeckle_area = 9\n");
    CHECK(rc.evolve.population_size == 64);
    CHECK(rc.evolve.max_evaluations == 5000);
    CHECK(rc.evolve.mutation_rate == 0.35);
    CHECK(rc.evolve.rng_seed == 99);
    CHECK(rc.rlsa.h_threshold == 120);
    CHECK(rc.active_k == 0.5);
    CHECK(rc.despeckle_area == 9);
    CHECK(rc.rlsa.v_threshold == 280); // untouched keys keep defaults
}

TEST_CASE("unknown keys are rejected with their line number") {
    CHECK_THROWS_WITH_AS(parse_run_config("population_size = 10\nturbo = 1\n"),
                         "config line 2: unknown key 'turbo'", std::runtime_error);
}

TEST_CASE("malformed lines are rejected") {
    CHECK_THROWS_WITH_AS(parse_run_config("population_size\n"),
                         "config line 1: expected key = value", std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_run_config("seed =\n"),
                         "config line 1: missing value for 'seed'",
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_run_config("mutation_rate = fast\n"),
                         "config line 1: bad number 'fast'", std::runtime_error);
}

TEST_CASE("out-of-range values are rejected") {
    CHECK_THROWS_AS(parse_run_config("population_size = 3\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_run_config("tournament_size = 1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_run_config("crossover_rate = 1.5\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_run_config("n_registers = 65\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_run_config("hth = -1\n"), std::runtime_error);
}

TEST_CASE("cross-field constraints hold after parsing") {
    CHECK_THROWS_WITH_AS(parse_run_config("const_min = 5\nconst_max = -5\n"),
                         "config: const_min exceeds const_max", std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_run_config("population_size = 8\ntournament_size = 9\n"),
                         "config: tournament_size exceeds population_size",
                         std::runtime_error);
}
