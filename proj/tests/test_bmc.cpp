#include <doctest.h>

#include "fathom/bmc.hpp"
#include "fathom/interp.hpp"
#include "fathom/printer.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace fathom;
using namespace fathom::minic;

namespace {

CheckedProgram load(const std::string& src) { return typecheck(parse(src)); }

bool violation(const ExecutionOutcome& o) {
    return o.status == ExecutionOutcome::Status::AssertionViolated ||
           (o.status == ExecutionOutcome::Status::RuntimeError &&
            o.error != ExecutionOutcome::ErrorKind::StepLimit);
}

}  // namespace

TEST_CASE("unrolling matches the structural definition") {
    CheckedProgram p = load("int main(){ int x = 3; while (x > 0) { x = x - 1; } return 0; }");
    UnrolledProgram u = unroll(p, 2, 8);
    std::string printed = print(*u.body);
    // two nested conditionals plus an unwinding assertion on the residue
    CHECK(printed.find("if (x") != std::string::npos);
    std::size_t first = printed.find("if (x");
    CHECK(printed.find("if (x", first + 1) != std::string::npos);
    CHECK(printed.find("assert(!(x") != std::string::npos);
    // no loops or calls survive
    CHECK(printed.find("while") == std::string::npos);
    CHECK(printed.find("for") == std::string::npos);
}

TEST_CASE("unrolled evaluation equals the direct interpretation") {
    CheckedProgram p = testsupport::load_c_fixture("algorithm2.c");
    UnrolledProgram u = unroll(p, 8, 8);
    CheckedProgram up = typecheck(to_program(u));
    ExecutionOutcome direct = interpret_main(p);
    ExecutionOutcome unrolled = interpret_main(up);
    CHECK(direct.status == unrolled.status);

    CheckedProgram fixed = testsupport::load_c_fixture("algorithm2_fixed.c");
    UnrolledProgram uf = unroll(fixed, 8, 8);
    ExecutionOutcome direct_f = interpret_main(fixed);
    ExecutionOutcome unrolled_f = interpret_main(typecheck(to_program(uf)));
    CHECK(direct_f.status == unrolled_f.status);
    CHECK(direct_f.exit_value == unrolled_f.exit_value);
}

TEST_CASE("recursion beyond the inline depth is a RecursionBound error") {
    CheckedProgram p = load("int f(){ return f(); } int main(){ return f(); }");
    CHECK_THROWS_AS(unroll(p, 4, 2), RecursionBound);
}

TEST_CASE("ssa: textbook version chains") {
    CheckedProgram p = load("int main(){ int x = 1; x = x + 1; assert(x == 2); return 0; }");
    SsaProgram ssa = to_ssa(unroll(p, 4, 4));
    // every versioned variable is defined exactly once
    std::set<std::string> defined;
    for (const auto& d : ssa.defs) {
        CAPTURE(d.var);
        CHECK(defined.insert(d.var).second);
    }
    // x has two versions in one chain
    int x_versions = 0;
    for (const auto& d : ssa.defs)
        if (d.var.find("x__") == 0) x_versions++;
    CHECK(x_versions == 2);
}

TEST_CASE("ssa: joins introduce merge definitions") {
    CheckedProgram p = load(
        "int main(){ int c = nondet_int(); int x = 0; if (c) { x = 1; } else { x = 2; } "
        "int y = x; assert(y != 3); return 0; }");
    SsaProgram ssa = to_ssa(unroll(p, 4, 4));
    bool has_merge = false;
    for (const auto& d : ssa.defs)
        if (d.control && d.rhs->kind == Expr::Kind::Ternary) has_merge = true;
    CHECK(has_merge);
    // uses are dominated by definitions in sequence order
    std::set<std::string> seen;
    auto check_uses = [&](const Expr& e, auto&& self) -> void {
        if (e.kind == Expr::Kind::Var) CHECK(seen.count(e.text));
        for (const auto& a : e.args) self(*a, self);
    };
    for (const auto& d : ssa.defs) {
        if (d.rhs->kind != Expr::Kind::Call) check_uses(*d.rhs, check_uses);
        if (!d.prev.empty()) CHECK(seen.count(d.prev));
        if (d.path) check_uses(*d.path, check_uses);
        seen.insert(d.var);
    }
}

TEST_CASE("ssa: the motivating program keeps one chain for ans") {
    CheckedProgram p = testsupport::load_c_fixture("algorithm2.c");
    SsaProgram ssa = to_ssa(unroll(p, 8, 8));
    std::string base;
    int versions = 0;
    for (const auto& d : ssa.defs) {
        if (d.var.find("ans__") == 0) {
            std::string b = d.var.substr(0, d.var.find('#'));
            if (base.empty()) base = b;
            CHECK(b == base);  // a single base variable
            versions++;
        }
    }
    CHECK(versions >= 2);  // decl, injected assign, loop updates and merges
}

TEST_CASE("trace formula: trivial verdicts") {
    bmc::BmcOptions opts;
    opts.unwind = 8;
    CHECK(bmc::check_bounded(
              load("int main(){ int x = nondet_int(); assume(x > 0); assert(x >= 1); return 0; }"),
              opts)
              .verified());

    bmc::Verdict v = bmc::check_bounded(
        load("int main(){ int x = nondet_int(); assert(x != 5); return 0; }"), opts);
    REQUIRE(v.violated());
    REQUIRE(v.trace.inputs.size() == 1);
    CHECK(v.trace.inputs[0].second == 5);  // the unique violating value

    bmc::Verdict v0 = bmc::check_bounded(load("int main(){ assert(0); return 0; }"), opts);
    CHECK(v0.violated());
    CHECK(v0.trace.inputs.empty());
}

TEST_CASE("verdicts on the motivating pair") {
    bmc::BmcOptions opts;
    opts.unwind = 8;
    bmc::Verdict buggy = bmc::check_bounded(testsupport::load_c_fixture("algorithm2.c"), opts);
    REQUIRE(buggy.violated());
    CheckedProgram p = testsupport::load_c_fixture("algorithm2.c");
    // the failing path passes through the injected statement on line 4
    bool through_line4 = false;
    for (auto id : buggy.trace.path)
        if (p.info(id).span.line == 4) through_line4 = true;
    CHECK(through_line4);

    CHECK(bmc::check_bounded(testsupport::load_c_fixture("algorithm2_fixed.c"), opts)
              .verified());
}

TEST_CASE("insufficient bounds are BoundExceeded, not Violated") {
    CheckedProgram p =
        load("int main(){ int i = 0; while (i < 100) { i = i + 1; } assert(i == 100); return 0; }");
    bmc::BmcOptions opts;
    opts.unwind = 10;
    bmc::Verdict v = bmc::check_bounded(p, opts);
    CHECK(v.kind == bmc::Verdict::Kind::BoundExceeded);
    opts.unwind = 100;
    CHECK(bmc::check_bounded(p, opts).verified());
}

TEST_CASE("monotonicity: a violation persists at larger bounds") {
    CheckedProgram p = load(
        "int main(){ int i = 0; int s = 0; while (i < 5) { s = s + i; i = i + 1; } "
        "assert(s != 10); return 0; }");
    for (int k : {5, 6, 12, 40}) {
        bmc::BmcOptions opts;
        opts.unwind = k;
        CAPTURE(k);
        CHECK(bmc::check_bounded(p, opts).violated());
    }
}

TEST_CASE("oracle equivalence on random closed programs") {
    testgen::ProgramGen gen(20250801);
    bmc::BmcOptions opts;
    opts.unwind = 12;
    for (int iter = 0; iter < 40; ++iter) {
        std::string src = gen.generate();
        CAPTURE(src);
        CheckedProgram p = load(src);
        ExecutionOutcome concrete = interpret_main(p);
        bmc::Verdict v = bmc::check_bounded(p, opts);
        REQUIRE(v.kind != bmc::Verdict::Kind::BoundExceeded);
        CHECK(v.violated() == violation(concrete));
    }
}

TEST_CASE("exhaustive-input equivalence on assume-bounded nondet programs") {
    testgen::ProgramGen gen(777);
    bmc::BmcOptions opts;
    opts.unwind = 12;
    testgen::GenOptions gopts;
    gopts.nondet_inputs = true;
    gopts.num_inputs = 1;
    gopts.input_range = 31;
    for (int iter = 0; iter < 12; ++iter) {
        std::string src = gen.generate(gopts);
        CAPTURE(src);
        CheckedProgram p = load(src);
        bool any_violation = false;
        for (int x = 0; x <= gopts.input_range; ++x) {
            ExecutionOutcome o = testgen::run_with_inputs(p, {x});
            if (violation(o)) any_violation = true;
        }
        bmc::Verdict v = bmc::check_bounded(p, opts);
        REQUIRE(v.kind != bmc::Verdict::Kind::BoundExceeded);
        CHECK(v.violated() == any_violation);
    }
}

TEST_CASE("the DIMACS dump and variable map are consistent") {
    CheckedProgram p = load("int main(){ int x = nondet_int(); assert(x != 7); return 0; }");
    bmc::BmcOptions opts;
    opts.unwind = 4;
    bmc::TraceFormula tf = bmc::encode_program(p, opts);
    std::string dimacs = sat::serialize_dimacs(tf.violation_instance());
    CHECK(dimacs.rfind("p cnf ", 0) == 0);
    std::string map = tf.variable_map();
    CHECK(map.find("[0]") != std::string::npos);
    CHECK(map.find("[31]") != std::string::npos);
    // the dumped instance is solvable and reproduces the violation
    sat::SolveResult r = sat::solve_cnf(sat::parse_dimacs_cnf(dimacs));
    CHECK(r.sat());
}

TEST_CASE("capacity ceiling raises CapacityError") {
    CheckedProgram p = testsupport::load_c_fixture("algorithm2.c");
    bmc::BmcOptions opts;
    opts.unwind = 8;
    opts.var_ceiling = 100;
    CHECK_THROWS_AS(bmc::check_bounded(p, opts), bmc::CapacityError);
}
