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

#include "docseg/config.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace docseg {

namespace {

[[noreturn]] void cfg_fail(int line, const std::string& what) {
    throw std::runtime_error("config line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double num(std::string_view v, int line) {
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        cfg_fail(line, "bad number '" + std::string(v) + "'");
    return out;
}

long long integer(std::string_view v, int line) {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        cfg_fail(line, "bad integer '" + std::string(v) + "'");
    return out;
}

long long integer_in(std::string_view v, int line, long long lo, long long hi) {
    const long long out = integer(v, line);
    if (out < lo || out > hi)
        cfg_fail(line, "value " + std::to_string(out) + " outside [" +
                           std::to_string(lo) + "," + std::to_string(hi) + "]");
    return out;
}

double num_in(std::string_view v, int line, double lo, double hi) {
    const double out = num(v, line);
    if (!(out >= lo && out <= hi))
        cfg_fail(line, "value '" + std::string(v) + "' outside [" +
                           std::to_string(lo) + "," + std::to_string(hi) + "]");
    return out;
}

} // namespace

RunConfig parse_run_config(std::string_view text) {
    RunConfig rc;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) cfg_fail(line_no, "expected key = value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view val = trim(line.substr(eq + 1));
        if (val.empty()) cfg_fail(line_no, "missing value for '" + key + "'");

        EvolveConfig& ev = rc.evolve;
        if (key == "population_size")
            ev.population_size = static_cast<int>(integer_in(val, line_no, 4, 1000000));
        else if (key == "max_evaluations")
            ev.max_evaluations = integer_in(val, line_no, 1, 1000000000000ll);
        else if (key == "tournament_size")
            ev.tournament_size = static_cast<int>(integer_in(val, line_no, 2, 1000000));
        else if (key == "crossover_rate")
            ev.crossover_rate = num_in(val, line_no, 0.0, 1.0);
        else if (key == "mutation_rate")
            ev.mutation_rate = num_in(val, line_no, 0.0, 1.0);
        else if (key == "max_len")
            ev.max_len = static_cast<int>(integer_in(val, line_no, 4, 65535));
        else if (key == "n_registers")
            ev.n_registers = static_cast<int>(integer_in(val, line_no, 1, 64));
        else if (key == "const_min")
            ev.const_min = num(val, line_no);
        else if (key == "const_max")
            ev.const_max = num(val, line_no);
        else if (key == "pos_weight")
            ev.pos_weight = num_in(val, line_no, 0.0, 1e9);
        else if (key == "neg_weight")
            ev.neg_weight = num_in(val, line_no, 0.0, 1e9);
        else if (key == "runs")
            ev.runs = static_cast<int>(integer_in(val, line_no, 1, 10000));
        else if (key == "seed")
            ev.rng_seed = static_cast<std::uint64_t>(integer(val, line_no));
        else if (key == "hth")
            rc.rlsa.h_threshold = static_cast<int>(integer_in(val, line_no, 0, 1 << 28));
        else if (key == "vth")
            rc.rlsa.v_threshold = static_cast<int>(integer_in(val, line_no, 0, 1 << 28));
        else if (key == "final")
            rc.rlsa.final_threshold =
                static_cast<int>(integer_in(val, line_no, 0, 1 << 28));
        else if (key == "k")
            rc.active_k = num_in(val, line_no, 0.0, 1e6);
        else if (key == "despeckle_area")
            rc.despeckle_area = static_cast<long>(integer_in(val, line_no, 0, 1 << 28));
        else
            cfg_fail(line_no, "unknown key '" + key + "'");

        if (end == text.size()) break;
    }

    if (rc.evolve.const_min > rc.evolve.const_max)
        throw std::runtime_error("config: const_min exceeds const_max");
    if (rc.evolve.tournament_size > rc.evolve.population_size)
        throw std::runtime_error("config: tournament_size exceeds population_size");
    return rc;
}

} // namespace docseg
