// generators.hpp -- random MiniC programs for differential testing of the
// verifier against the concrete interpreter.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "fathom/interp.hpp"
#include "fathom/parser.hpp"
#include "fathom/typecheck.hpp"

namespace testgen {

struct GenOptions {
    bool nondet_inputs = false;
    int input_range = 63;  // nondet inputs assumed into [0, input_range]
    int num_inputs = 1;
};

class ProgramGen {
  public:
    explicit ProgramGen(std::uint64_t seed) : rng_(seed) {}

    // A closed (or assume-bounded nondet) program with loops of at most 6
    // iterations and constants below 2^8, ending in one assertion.
    std::string generate(const GenOptions& opts = {}) {
        vars_ = {"a", "b", "c"};
        std::string body;
        if (opts.nondet_inputs) {
            for (int i = 0; i < opts.num_inputs; ++i) {
                std::string v = "x" + std::to_string(i);
                body += "    int " + v + " = nondet_int();\n";
                body += "    assume(" + v + " >= 0);\n";
                body += "    assume(" + v + " <= " + std::to_string(opts.input_range) + ");\n";
                vars_.push_back(v);
            }
        }
        for (const char* v : {"a", "b", "c"})
            body += "    int " + std::string(v) + " = " + std::to_string(small_const()) + ";\n";

        int statements = 2 + static_cast<int>(rng_() % 5);
        for (int i = 0; i < statements; ++i) body += stmt(1);

        body += "    assert(" + expr(2) + " " + cmp() + " " + expr(2) + ");\n";
        return "int main() {\n" + body + "    return 0;\n}\n";
    }

  private:
    std::mt19937_64 rng_;
    std::vector<std::string> vars_;

    int small_const() { return static_cast<int>(rng_() % 256); }
    std::string var() { return vars_[rng_() % vars_.size()]; }
    std::string mutable_var() { return vars_[rng_() % 3]; }  // a, b, c only

    std::string cmp() {
        static const char* ops[] = {"==", "!=", "<", "<=", ">", ">="};
        return ops[rng_() % 6];
    }

    std::string binop() {
        static const char* ops[] = {"+", "-", "*", "&", "|", "^", "+", "-", "<<", ">>"};
        return ops[rng_() % 10];
    }

    std::string expr(int depth) {
        if (depth == 0 || rng_() % 3 == 0)
            return rng_() % 2 ? var() : std::to_string(small_const());
        switch (rng_() % 8) {
            case 0:
                return "(" + expr(depth - 1) + " / ((" + expr(depth - 1) + " & 7) + 1))";
            case 1:
                return "(" + expr(depth - 1) + " % ((" + expr(depth - 1) + " & 3) + 1))";
            case 2:  // possibly-zero divisor: a reachable runtime violation
                return "(" + expr(depth - 1) + " / (" + var() + " & 3))";
            case 3:
                return "(" + expr(depth - 1) + " " + cmp() + " " + expr(depth - 1) + " ? " +
                       expr(depth - 1) + " : " + expr(depth - 1) + ")";
            case 4:
                return (rng_() % 2 ? std::string("min(") : std::string("max(")) +
                       expr(depth - 1) + ", " + expr(depth - 1) + ")";
            case 5:
                return "abs(" + expr(depth - 1) + ")";
            default:
                return "(" + expr(depth - 1) + " " + binop() + " " + expr(depth - 1) + ")";
        }
    }

    std::string stmt(int depth) {
        std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
        switch (rng_() % 6) {
            case 0:
            case 1:
                return pad + mutable_var() + " = " + expr(2) + ";\n";
            case 2:
                return pad + mutable_var() + " " +
                       (rng_() % 2 ? std::string("+=") : std::string("^=")) + " " + expr(1) +
                       ";\n";
            case 3: {
                std::string out = pad + "if (" + expr(1) + " " + cmp() + " " + expr(1) + ") {\n";
                out += stmt(depth + 1);
                out += pad + "} else {\n";
                out += stmt(depth + 1);
                out += pad + "}\n";
                return out;
            }
            case 4: {
                int trips = 1 + static_cast<int>(rng_() % 6);
                std::string i = "i" + std::to_string(rng_() % 1000);
                std::string out = pad + "for (int " + i + " = 0; " + i + " < " +
                                  std::to_string(trips) + "; " + i + " = " + i + " + 1) {\n";
                out += stmt(depth + 1);
                if (rng_() % 3 == 0)
                    out += pad + "    if (" + var() + " > " + std::to_string(small_const()) +
                           ") { " + (rng_() % 2 ? "break;" : "continue;") + " }\n";
                out += pad + "}\n";
                return out;
            }
            default: {
                // halving loop: at most ~9 iterations from 8-bit starts
                std::string v = mutable_var();
                return pad + v + " = " + v + " & 255;\n" + pad + "while (" + v + " > 0) {\n" +
                       pad + "    " + v + " = " + v + " / 2;\n" + stmt(depth + 1) + pad + "}\n";
            }
        }
    }
};

// Replaces every nondet_int() call with the next value from `values`
// (test-only: lets the interpreter enumerate input domains).
inline void substitute_nondet(fathom::minic::Expr& e, const std::vector<int>& values,
                              std::size_t& next) {
    if (e.kind == fathom::minic::Expr::Kind::Call && e.text == "nondet_int") {
        e.kind = fathom::minic::Expr::Kind::IntLit;
        e.text.clear();
        e.int_value = values.at(next++);
        return;
    }
    for (auto& a : e.args) substitute_nondet(*a, values, next);
}

inline void substitute_nondet(fathom::minic::Stmt& s, const std::vector<int>& values,
                              std::size_t& next) {
    if (s.expr) substitute_nondet(*s.expr, values, next);
    if (s.for_init) substitute_nondet(*s.for_init, values, next);
    if (s.for_update) substitute_nondet(*s.for_update, values, next);
    if (s.body) substitute_nondet(*s.body, values, next);
    if (s.else_body) substitute_nondet(*s.else_body, values, next);
    for (auto& c : s.stmts) substitute_nondet(*c, values, next);
}

// Interpreter outcome with the given nondet values substituted in.
inline fathom::minic::ExecutionOutcome run_with_inputs(
    const fathom::minic::CheckedProgram& program, const std::vector<int>& values) {
    fathom::minic::Program clone;
    clone.source = program.program.source;
    for (const auto& fn : program.program.functions) clone.functions.push_back(fn.clone());
    std::size_t next = 0;
    for (auto& fn : clone.functions) substitute_nondet(*fn.body, values, next);
    return fathom::minic::interpret_main(fathom::minic::typecheck(std::move(clone)));
}

}  // namespace testgen
