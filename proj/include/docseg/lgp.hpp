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

#ifndef DOCSEG_LGP_HPP
#define DOCSEG_LGP_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "docseg/rng.hpp"

namespace docseg {

// Register-machine opcodes. Operand meaning by group:
//   reg/reg:   ADD SUB MUL DIV TRUNC_POW2 CMP_LT CMOV SWAP
//   reg only:  NEG ABS SIN COS SQRT LOG
//   constant:  SET_CONST ADD_CONST MUL_CONST        (src indexes the pool)
//   input:     LOAD_INPUT ADD_INPUT SUB_INPUT MUL_INPUT DIV_INPUT
enum class Opcode : std::uint8_t {
    ADD, SUB, MUL, DIV,
    NEG, ABS, SIN, COS, SQRT, LOG,
    TRUNC_POW2,
    SET_CONST, ADD_CONST, MUL_CONST,
    LOAD_INPUT, ADD_INPUT, SUB_INPUT, MUL_INPUT, DIV_INPUT,
    CMP_LT, CMOV, SWAP,
};

inline constexpr int kOpcodeCount = 22;

enum class OperandKind { Register, None, Constant, Input };

OperandKind operand_kind(Opcode op);
std::string_view opcode_name(Opcode op);

struct Instruction {
    Opcode op = Opcode::ADD;
    std::uint8_t dst = 0;
    std::uint16_t src = 0;

    bool operator==(const Instruction&) const = default;
};

/// An LGP genome: straight-line code over n_registers registers, a constant
/// pool, and n_inputs read-only inputs. Register 0 carries the output.
struct Program {
    std::vector<Instruction> instructions;
    std::vector<double> constants;
    int n_registers = 8;
    int n_inputs = 0;

    bool operator==(const Program&) const = default;
};

struct FitnessReport {
    double weighted_hits = 0;
    double hit_rate = 0;
    double raw_error = 0;
    long long evaluations = 0;
};

struct EvolveConfig {
    int population_size = 500;
    long long max_evaluations = 200000;
    int tournament_size = 4;
    double crossover_rate = 0.9;
    double mutation_rate = 0.2;
    int max_len = 256;
    int n_registers = 8;
    double const_min = -10.0;
    double const_max = 10.0;
    double pos_weight = 1.0;
    double neg_weight = 1.0;
    int runs = 5;
    std::uint64_t rng_seed = 0;
};

/// Binary-labeled instances, stored row-major.
struct LabeledData {
    int n_inputs = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> labels;

    std::size_t size() const { return labels.size(); }
    std::span<const double> row(std::size_t i) const {
        return {values.data() + i * n_inputs, static_cast<std::size_t>(n_inputs)};
    }
    void add(std::span<const double> features, int label) {
        values.insert(values.end(), features.begin(), features.end());
        labels.push_back(static_cast<std::uint8_t>(label));
    }
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run the program on one input vector; registers start at zero, the
/// condition flag at false. Returns register 0.
double execute(const Program& p, std::span<const double> inputs);

/// 1 iff the output is >= 0.5; NaN counts as class 0.
int classify_binary(const Program& p, std::span<const double> inputs);

/// Weighted hits, hit rate, and squared error over a labeled set. NaN
/// outputs add a fixed 1e6 error penalty.
FitnessReport evaluate(const Program& p, const LabeledData& data,
                       double pos_weight = 1.0, double neg_weight = 1.0);

/// Strictly better: more weighted hits, or equal hits and less raw error.
bool fitter(const FitnessReport& a, const FitnessReport& b);

Program random_program(Rng& rng, int n_inputs, const EvolveConfig& cfg);

/// Two-point segment exchange; offspring are truncated to max_len and
/// never empty.
std::pair<Program, Program> crossover(const Program& a, const Program& b,
                                      Rng& rng, int max_len);

/// Per-instruction mutation: opcode swap within the operand group, operand
/// redraw, or Gaussian nudge of the referenced constant. Length preserved.
Program mutate(const Program& p, Rng& rng, double rate);

struct EvolveResult {
    Program program;
    FitnessReport report;
};

/// Called whenever the best-ever individual improves:
/// (cumulative evaluations, best report).
using ProgressFn = std::function<void(long long, const FitnessReport&)>;

/// Multi-run steady-state tournament evolution; deterministic in
/// cfg.rng_seed. Returns the best individual seen across all runs.
EvolveResult evolve(const LabeledData& data, const EvolveConfig& cfg,
                    const ProgressFn& progress = nullptr);

/// Plain-text assembly, exact round trip through parse_program.
std::string serialize_program(const Program& p);
Program parse_program(std::string_view text);

} // namespace docseg

#endif
