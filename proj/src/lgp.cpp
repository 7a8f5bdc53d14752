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

#include "docseg/lgp.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace docseg {

namespace {

constexpr int kMaxRegisters = 64;
constexpr int kConstantPoolSize = 8;
constexpr int kInitLenMin = 4;
constexpr int kInitLenMax = 32;
constexpr double kNanPenalty = 1e6;

const std::array<std::string_view, kOpcodeCount> kOpcodeNames = {
    "ADD",        "SUB",       "MUL",       "DIV",        "NEG",
    "ABS",        "SIN",       "COS",       "SQRT",       "LOG",
    "TRUNC_POW2", "SET_CONST", "ADD_CONST", "MUL_CONST",  "LOAD_INPUT",
    "ADD_INPUT",  "SUB_INPUT", "MUL_INPUT", "DIV_INPUT",  "CMP_LT",
    "CMOV",       "SWAP"};

} // namespace

OperandKind operand_kind(Opcode op) {
    switch (op) {
        case Opcode::ADD:
        case Opcode::SUB:
        case Opcode::MUL:
        case Opcode::DIV:
        case Opcode::TRUNC_POW2:
        case Opcode::CMP_LT:
        case Opcode::CMOV:
        case Opcode::SWAP:
            return OperandKind::Register;
        case Opcode::NEG:
        case Opcode::ABS:
        case Opcode::SIN:
        case Opcode::COS:
        case Opcode::SQRT:
        case Opcode::LOG:
            return OperandKind::None;
        case Opcode::SET_CONST:
        case Opcode::ADD_CONST:
        case Opcode::MUL_CONST:
            return OperandKind::Constant;
        case Opcode::LOAD_INPUT:
        case Opcode::ADD_INPUT:
        case Opcode::SUB_INPUT:
        case Opcode::MUL_INPUT:
        case Opcode::DIV_INPUT:
            return OperandKind::Input;
    }
    return OperandKind::None;
}

std::string_view opcode_name(Opcode op) {
    return kOpcodeNames[static_cast<std::size_t>(op)];
}

double execute(const Program& p, std::span<const double> inputs) {
    assert(static_cast<int>(inputs.size()) == p.n_inputs);
    assert(p.n_registers >= 1 && p.n_registers <= kMaxRegisters);

    std::array<double, kMaxRegisters> reg{};
    bool flag = false;

    for (const Instruction& ins : p.instructions) {
        double& d = reg[ins.dst];
        switch (ins.op) {
            case Opcode::ADD: d += reg[ins.src]; break;
            case Opcode::SUB: d -= reg[ins.src]; break;
            case Opcode::MUL: d *= reg[ins.src]; break;
            case Opcode::DIV: d /= reg[ins.src]; break;
            case Opcode::NEG: d = -d; break;
            case Opcode::ABS: d = std::fabs(d); break;
            case Opcode::SIN: d = std::sin(d); break;
            case Opcode::COS: d = std::cos(d); break;
            case Opcode::SQRT: d = std::sqrt(d); break;
            case Opcode::LOG: d = std::log(d); break;
            case Opcode::TRUNC_POW2: {
                const double e = std::trunc(reg[ins.src]);
                if (std::isnan(e)) {
                    d *= e;
                } else {
                    const double clamped = e > 1023.0 ? 1023.0 : (e < -1023.0 ? -1023.0 : e);
                    d = std::ldexp(d, static_cast<int>(clamped));
                }
                break;
            }
            case Opcode::SET_CONST: d = p.constants[ins.src]; break;
            case Opcode::ADD_CONST: d += p.constants[ins.src]; break;
            case Opcode::MUL_CONST: d *= p.constants[ins.src]; break;
            case Opcode::LOAD_INPUT: d = inputs[ins.src]; break;
            case Opcode::ADD_INPUT: d += inputs[ins.src]; break;
            case Opcode::SUB_INPUT: d -= inputs[ins.src]; break;
            case Opcode::MUL_INPUT: d *= inputs[ins.src]; break;
            case Opcode::DIV_INPUT: d /= inputs[ins.src]; break;
            case Opcode::CMP_LT:
                flag = std::isnan(d) || std::isnan(reg[ins.src]) ? true : d < reg[ins.src];
                break;
            case Opcode::CMOV:
                if (flag) d = reg[ins.src];
                break;
            case Opcode::SWAP: std::swap(d, reg[ins.src]); break;
        }
    }
    return reg[0];
}

int classify_binary(const Program& p, std::span<const double> inputs) {
    const double out = execute(p, inputs);
    return out >= 0.5 ? 1 : 0; // NaN compares false, hence class 0
}

FitnessReport evaluate(const Program& p, const LabeledData& data,
                       double pos_weight, double neg_weight) {
    if (data.size() == 0)
        throw std::invalid_argument("evaluate: empty data");

    FitnessReport rep;
    long long correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double out = execute(p, data.row(i));
        const int label = data.labels[i];
        const int cls = out >= 0.5 ? 1 : 0;
        if (cls == label) {
            ++correct;
            rep.weighted_hits += label ? pos_weight : neg_weight;
        }
        if (std::isnan(out)) {
            rep.raw_error += kNanPenalty;
        } else {
            const double diff = out - static_cast<double>(label);
            rep.raw_error += diff * diff;
        }
    }
    rep.hit_rate = static_cast<double>(correct) / static_cast<double>(data.size());
    rep.evaluations = static_cast<long long>(data.size());
    return rep;
}

bool fitter(const FitnessReport& a, const FitnessReport& b) {
    if (a.weighted_hits != b.weighted_hits) return a.weighted_hits > b.weighted_hits;
    return a.raw_error < b.raw_error;
}

Program random_program(Rng& rng, int n_inputs, const EvolveConfig& cfg) {
    Program p;
    p.n_registers = cfg.n_registers;
    p.n_inputs = n_inputs;
    p.constants.resize(kConstantPoolSize);
    for (double& c : p.constants) c = rng.uniform(cfg.const_min, cfg.const_max);

    const int len = static_cast<int>(
        rng.range(kInitLenMin, std::min(kInitLenMax, cfg.max_len)));
    p.instructions.resize(len);
    for (Instruction& ins : p.instructions) {
        ins.op = static_cast<Opcode>(rng.below(kOpcodeCount));
        ins.dst = static_cast<std::uint8_t>(rng.below(p.n_registers));
        switch (operand_kind(ins.op)) {
            case OperandKind::Register:
                ins.src = static_cast<std::uint16_t>(rng.below(p.n_registers));
                break;
            case OperandKind::Constant:
                ins.src = static_cast<std::uint16_t>(rng.below(p.constants.size()));
                break;
            case OperandKind::Input:
                ins.src = static_cast<std::uint16_t>(rng.below(n_inputs));
                break;
            case OperandKind::None:
                ins.src = 0;
                break;
        }
    }
    return p;
}

std::pair<Program, Program> crossover(const Program& a, const Program& b,
                                      Rng& rng, int max_len) {
    const auto pick_segment = [&rng](std::size_t len) {
        const std::size_t start = rng.below(len + 1);
        const std::size_t take = rng.below(len - start + 1);
        return std::pair<std::size_t, std::size_t>{start, take};
    };

    std::size_t s1, t1, s2, t2;
    do {
        std::tie(s1, t1) = pick_segment(a.instructions.size());
        std::tie(s2, t2) = pick_segment(b.instructions.size());
    } while (a.instructions.size() - t1 + t2 == 0 ||
             b.instructions.size() - t2 + t1 == 0);

    const auto splice = [max_len](const Program& base, std::size_t s, std::size_t t,
                                  const Program& donor, std::size_t ds, std::size_t dt) {
        Program child = base;
        child.instructions.clear();
        child.instructions.insert(child.instructions.end(), base.instructions.begin(),
                                  base.instructions.begin() + s);
        child.instructions.insert(child.instructions.end(),
                                  donor.instructions.begin() + ds,
                                  donor.instructions.begin() + ds + dt);
        child.instructions.insert(child.instructions.end(),
                                  base.instructions.begin() + s + t,
                                  base.instructions.end());
        if (child.instructions.size() > static_cast<std::size_t>(max_len))
            child.instructions.resize(max_len);
        return child;
    };

    return {splice(a, s1, t1, b, s2, t2), splice(b, s2, t2, a, s1, t1)};
}

Program mutate(const Program& p, Rng& rng, double rate) {
    Program q = p;
    for (Instruction& ins : q.instructions) {
        if (!rng.chance(rate)) continue;

        const OperandKind kind = operand_kind(ins.op);
        int choice = static_cast<int>(rng.below(3));
        if (choice == 2 && kind != OperandKind::Constant)
            choice = 1; // no pool entry to nudge, redraw operands instead

        if (choice == 0) {
            // Swap in a different opcode of the same operand group so every
            // index stays valid.
            std::array<Opcode, kOpcodeCount> same{};
            int n = 0;
            for (int o = 0; o < kOpcodeCount; ++o) {
                const Opcode cand = static_cast<Opcode>(o);
                if (cand != ins.op && operand_kind(cand) == kind) same[n++] = cand;
            }
            ins.op = same[rng.below(n)];
        } else if (choice == 1) {
            ins.dst = static_cast<std::uint8_t>(rng.below(q.n_registers));
            switch (kind) {
                case OperandKind::Register:
                    ins.src = static_cast<std::uint16_t>(rng.below(q.n_registers));
                    break;
                case OperandKind::Constant:
                    ins.src = static_cast<std::uint16_t>(rng.below(q.constants.size()));
                    break;
                case OperandKind::Input:
                    ins.src = static_cast<std::uint16_t>(rng.below(q.n_inputs));
                    break;
                case OperandKind::None:
                    ins.src = 0;
                    break;
            }
        } else {
            q.constants[ins.src] += rng.gauss();
        }
    }
    return q;
}

namespace {

double max_weighted_hits(const LabeledData& data, double pos_w, double neg_w) {
    // Accumulated the same way evaluate() does, so the perfect-score test is
    // exact even for non-integer weights.
    double total = 0;
    for (std::uint8_t label : data.labels) total += label ? pos_w : neg_w;
    return total;
}

} // namespace

EvolveResult evolve(const LabeledData& data, const EvolveConfig& cfg,
                    const ProgressFn& progress) {
    if (data.size() == 0)
        throw std::invalid_argument("evolve: empty data");
    if (cfg.population_size < 4)
        throw std::invalid_argument("evolve: population_size must be >= 4");
    if (cfg.tournament_size < 2 ||
        cfg.tournament_size > cfg.population_size)
        throw std::invalid_argument("evolve: bad tournament_size");

    const double perfect = max_weighted_hits(data, cfg.pos_weight, cfg.neg_weight);

    EvolveResult best;
    bool have_best = false;
    long long total_evals = 0;

    const auto consider = [&](const Program& prog, const FitnessReport& rep) {
        if (!have_best || fitter(rep, best.report)) {
            best.program = prog;
            best.report = rep;
            have_best = true;
            if (progress) progress(total_evals, best.report);
        }
    };

    for (int run = 0; run < cfg.runs; ++run) {
        Rng rng(cfg.rng_seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(run + 1));

        std::vector<Program> pop;
        std::vector<FitnessReport> reps;
        pop.reserve(cfg.population_size);
        reps.reserve(cfg.population_size);

        long long run_evals = 0;
        std::size_t run_best = 0;
        for (int i = 0; i < cfg.population_size; ++i) {
            pop.push_back(random_program(rng, data.n_inputs, cfg));
            reps.push_back(evaluate(pop.back(), data, cfg.pos_weight, cfg.neg_weight));
            ++run_evals;
            ++total_evals;
            if (fitter(reps.back(), reps[run_best])) run_best = i;
            consider(pop.back(), reps.back());
        }

        std::vector<std::size_t> tourney(cfg.tournament_size);
        while (run_evals + 2 <= cfg.max_evaluations &&
               !(reps[run_best].weighted_hits >= perfect)) {
            // Distinct tournament members.
            for (int i = 0; i < cfg.tournament_size; ++i) {
                std::size_t pick;
                bool dup;
                do {
                    pick = rng.below(pop.size());
                    dup = false;
                    for (int j = 0; j < i; ++j)
                        if (tourney[j] == pick) dup = true;
                } while (dup);
                tourney[i] = pick;
            }
            std::sort(tourney.begin(), tourney.end(), [&](std::size_t x, std::size_t y) {
                if (fitter(reps[x], reps[y])) return true;
                if (fitter(reps[y], reps[x])) return false;
                return x < y;
            });

            const std::size_t p1 = tourney[0], p2 = tourney[1];
            const std::size_t w1 = tourney[cfg.tournament_size - 2];
            const std::size_t w2 = tourney[cfg.tournament_size - 1];

            Program c1, c2;
            if (rng.chance(cfg.crossover_rate)) {
                std::tie(c1, c2) = crossover(pop[p1], pop[p2], rng, cfg.max_len);
            } else {
                c1 = pop[p1];
                c2 = pop[p2];
            }
            c1 = mutate(c1, rng, cfg.mutation_rate);
            c2 = mutate(c2, rng, cfg.mutation_rate);

            pop[w1] = std::move(c1);
            reps[w1] = evaluate(pop[w1], data, cfg.pos_weight, cfg.neg_weight);
            pop[w2] = std::move(c2);
            reps[w2] = evaluate(pop[w2], data, cfg.pos_weight, cfg.neg_weight);
            run_evals += 2;
            total_evals += 2;

            // run_best may have been replaced; rescan lazily only if so.
            if (run_best == w1 || run_best == w2) {
                run_best = 0;
                for (std::size_t i = 1; i < reps.size(); ++i)
                    if (fitter(reps[i], reps[run_best])) run_best = i;
            } else {
                if (fitter(reps[w1], reps[run_best])) run_best = w1;
                if (fitter(reps[w2], reps[run_best])) run_best = w2;
            }
            consider(pop[w1], reps[w1]);
            consider(pop[w2], reps[w2]);
        }
    }
    return best;
}

std::string serialize_program(const Program& p) {
    std::string out = "lgp\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "registers %d\n", p.n_registers);
    out += buf;
    std::snprintf(buf, sizeof buf, "inputs %d\n", p.n_inputs);
    out += buf;
    std::snprintf(buf, sizeof buf, "constants %zu\n", p.constants.size());
    out += buf;
    for (std::size_t i = 0; i < p.constants.size(); ++i) {
        std::snprintf(buf, sizeof buf, "c%zu %.17g\n", i, p.constants[i]);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "code %zu\n", p.instructions.size());
    out += buf;
    for (const Instruction& ins : p.instructions) {
        out += opcode_name(ins.op);
        std::snprintf(buf, sizeof buf, " r%d", static_cast<int>(ins.dst));
        out += buf;
        switch (operand_kind(ins.op)) {
            case OperandKind::Register:
                std::snprintf(buf, sizeof buf, " r%d", static_cast<int>(ins.src));
                out += buf;
                break;
            case OperandKind::Constant:
                std::snprintf(buf, sizeof buf, " c%d", static_cast<int>(ins.src));
                out += buf;
                break;
            case OperandKind::Input:
                std::snprintf(buf, sizeof buf, " in%d", static_cast<int>(ins.src));
                out += buf;
                break;
            case OperandKind::None:
                break;
        }
        out += '\n';
    }
    return out;
}

namespace {

struct LineReader {
    std::string_view text;
    std::size_t pos = 0;
    int line_no = 0;

    bool next(std::string& line) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        line.assign(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        return true;
    }
};

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

long parse_long(const std::string& tok, int line, const char* what) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_fail(line, std::string("bad ") + what + " '" + tok + "'");
    return v;
}

double parse_double(const std::string& tok, int line) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_fail(line, "bad number '" + tok + "'");
    return v;
}

long parse_indexed(const std::string& tok, std::string_view prefix, int line,
                   const char* what) {
    if (tok.size() <= prefix.size() || tok.compare(0, prefix.size(), prefix) != 0)
        parse_fail(line, std::string("expected ") + what + ", got '" + tok + "'");
    return parse_long(tok.substr(prefix.size()), line, what);
}

std::string expect_line(LineReader& rd) {
    std::string line;
    if (!rd.next(line)) parse_fail(rd.line_no + 1, "unexpected end of input");
    return line;
}

long expect_field(LineReader& rd, const char* key) {
    const std::string line = expect_line(rd);
    const auto toks = tokens_of(line);
    if (toks.size() != 2 || toks[0] != key)
        parse_fail(rd.line_no, std::string("expected '") + key + " <n>'");
    return parse_long(toks[1], rd.line_no, key);
}

} // namespace

Program parse_program(std::string_view text) {
    LineReader rd{text};

    std::string line = expect_line(rd);
    if (line != "lgp") parse_fail(rd.line_no, "expected 'lgp' header");

    Program p;
    const long n_reg = expect_field(rd, "registers");
    if (n_reg < 1 || n_reg > kMaxRegisters)
        parse_fail(rd.line_no, "registers out of range [1," +
                                   std::to_string(kMaxRegisters) + "]");
    p.n_registers = static_cast<int>(n_reg);

    const long n_in = expect_field(rd, "inputs");
    if (n_in < 0 || n_in > 65535) parse_fail(rd.line_no, "inputs out of range");
    p.n_inputs = static_cast<int>(n_in);

    const long n_const = expect_field(rd, "constants");
    if (n_const < 0 || n_const > 65535) parse_fail(rd.line_no, "constants out of range");
    p.constants.resize(n_const);
    for (long i = 0; i < n_const; ++i) {
        line = expect_line(rd);
        const auto toks = tokens_of(line);
        if (toks.size() != 2) parse_fail(rd.line_no, "expected 'c<i> <value>'");
        const long idx = parse_indexed(toks[0], "c", rd.line_no, "constant index");
        if (idx != i) parse_fail(rd.line_no, "constant index out of order");
        p.constants[i] = parse_double(toks[1], rd.line_no);
    }

    const long n_code = expect_field(rd, "code");
    if (n_code < 1) parse_fail(rd.line_no, "program must have at least one instruction");
    p.instructions.reserve(n_code);
    for (long i = 0; i < n_code; ++i) {
        line = expect_line(rd);
        const auto toks = tokens_of(line);
        if (toks.empty()) parse_fail(rd.line_no, "empty instruction");

        int op_idx = -1;
        for (int o = 0; o < kOpcodeCount; ++o)
            if (kOpcodeNames[o] == toks[0]) op_idx = o;
        if (op_idx < 0) parse_fail(rd.line_no, "unknown opcode '" + toks[0] + "'");

        Instruction ins;
        ins.op = static_cast<Opcode>(op_idx);
        const OperandKind kind = operand_kind(ins.op);
        const std::size_t want = kind == OperandKind::None ? 2 : 3;
        if (toks.size() != want)
            parse_fail(rd.line_no, "wrong operand count for " + toks[0]);

        const long dst = parse_indexed(toks[1], "r", rd.line_no, "register");
        if (dst < 0 || dst >= p.n_registers)
            parse_fail(rd.line_no, "register r" + std::to_string(dst) +
                                       " out of range (registers " +
                                       std::to_string(p.n_registers) + ")");
        ins.dst = static_cast<std::uint8_t>(dst);

        if (kind == OperandKind::Register) {
            const long src = parse_indexed(toks[2], "r", rd.line_no, "register");
            if (src < 0 || src >= p.n_registers)
                parse_fail(rd.line_no, "register r" + std::to_string(src) +
                                           " out of range (registers " +
                                           std::to_string(p.n_registers) + ")");
            ins.src = static_cast<std::uint16_t>(src);
        } else if (kind == OperandKind::Constant) {
            const long src = parse_indexed(toks[2], "c", rd.line_no, "constant");
            if (src < 0 || src >= static_cast<long>(p.constants.size()))
                parse_fail(rd.line_no, "constant c" + std::to_string(src) + " out of range");
            ins.src = static_cast<std::uint16_t>(src);
        } else if (kind == OperandKind::Input) {
            const long src = parse_indexed(toks[2], "in", rd.line_no, "input");
            if (src < 0 || src >= p.n_inputs)
                parse_fail(rd.line_no, "input in" + std::to_string(src) + " out of range");
            ins.src = static_cast<std::uint16_t>(src);
        }
        p.instructions.push_back(ins);
    }

    while (rd.next(line)) {
        if (!tokens_of(line).empty())
            parse_fail(rd.line_no, "trailing content after program");
    }
    return p;
}

} // namespace docseg
