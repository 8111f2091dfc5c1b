#include <doctest.h>

#include <set>

#include "fathom/parser.hpp"
#include "fathom/typecheck.hpp"
#include "support.hpp"

using namespace fathom;
using namespace fathom::minic;

TEST_CASE("the motivating program receives 12 statement ids") {
    CheckedProgram p = testsupport::load_c_fixture("algorithm2.c");
    CHECK(p.statements.size() == 12);
    // ids are unique and map to exactly one span each
    std::set<int> ids;
    for (const auto& si : p.statements) {
        CHECK(si.id == static_cast<int>(ids.size()));
        ids.insert(si.id);
        CHECK(si.span.line >= 1);
    }
    // the injected fault is id'd and guardable
    bool found = false;
    for (const auto& si : p.statements) {
        if (p.statement_text(si.id) == "ans = 0 + 1;") {
            found = true;
            CHECK(si.span.line == 4);
            CHECK(si.guardable);
        }
    }
    CHECK(found);
}

TEST_CASE("undefined function call") {
    CHECK_THROWS_AS(typecheck(parse("int main(){ return g(); }")), UndefinedSymbol);
}

TEST_CASE("undefined variable") {
    CHECK_THROWS_AS(typecheck(parse("int main(){ return x; }")), UndefinedSymbol);
}

TEST_CASE("string in int context") {
    CHECK_THROWS_AS(typecheck(parse("int main(){ if (\"abc\") {} return 0; }")), TypeError);
}

TEST_CASE("program invariants") {
    CHECK_THROWS_AS(typecheck(parse("int f(){ return 0; }")), TypeError);  // no main
    CHECK_THROWS_AS(typecheck(parse("int main(int argc){ return 0; }")), TypeError);
    CHECK_THROWS_AS(typecheck(parse("int main(){ return 0; } int main(){ return 1; }")),
                    TypeError);
    CHECK_THROWS_AS(typecheck(parse("int f(int a, int a){ return a; } int main(){ return 0; }")),
                    TypeError);
}

TEST_CASE("non-void functions must return on every path") {
    CHECK_THROWS_AS(typecheck(parse("int f(int x){ if (x) { return 1; } } int main(){ return 0; }")),
                    TypeError);
    CHECK_NOTHROW(typecheck(
        parse("int f(int x){ if (x) { return 1; } else { return 2; } } int main(){ return 0; }")));
    CHECK_NOTHROW(typecheck(
        parse("int f(int x){ while (1) { if (x) { return 1; } } } int main(){ return 0; }")));
}

TEST_CASE("arity and argument type checks") {
    CHECK_THROWS_AS(
        typecheck(parse("int f(int a){ return a; } int main(){ return f(); }")), TypeError);
    CHECK_THROWS_AS(
        typecheck(parse("int f(int a){ return a; } int main(){ return f(\"s\"); }")),
        TypeError);
    CHECK_THROWS_AS(typecheck(parse("int main(){ return abs(1, 2); }")), TypeError);
    CHECK_THROWS_AS(typecheck(parse("int main(){ assume(); return 0; }")), TypeError);
}

TEST_CASE("assert arguments must be int") {
    CHECK_THROWS_AS(typecheck(parse("int main(){ assert(\"x\"); return 0; }")), TypeError);
}

TEST_CASE("statements in main are never guardable") {
    CheckedProgram p = typecheck(parse(
        "int main(){ int x = 5; x = x + 1; if (x) { x = 2; } assert(x == 2); return 0; }"));
    for (const auto& si : p.statements) CHECK_FALSE(si.guardable);
}

TEST_CASE("condition pseudo-statements carry construct text") {
    CheckedProgram p = testsupport::load_c_fixture("granite_57.c");
    bool found_if = false, found_while = false;
    for (const auto& si : p.statements) {
        if (!si.is_condition) continue;
        std::string text = p.statement_text(si.id);
        if (text == "if (mainTank < 5)") found_if = true;
        if (text == "while (mainTank)") found_while = true;
    }
    CHECK(found_if);
    CHECK(found_while);
}
