#include <doctest.h>

#include "fathom/parser.hpp"
#include "fathom/printer.hpp"
#include "support.hpp"

using namespace fathom;
using namespace fathom::minic;

TEST_CASE("the printed motivating C program parses to the expected shape") {
    Program p = parse(testsupport::read_fixture("minic/algorithm2.c"));
    REQUIRE(p.functions.size() == 2);
    CHECK(p.functions[0].name == "distributeCandies");
    CHECK(p.functions[0].params.size() == 2);
    CHECK(p.functions[1].name == "main");
    CHECK(p.functions[1].params.empty());
    // main body: assert(distributeCandies(5,2) == 3); return 0;
    const Stmt& body = *p.functions[1].body;
    REQUIRE(body.stmts.size() == 2);
    CHECK(body.stmts[0]->kind == Stmt::Kind::Assert);
    const Expr& cond = *body.stmts[0]->expr;
    CHECK(cond.kind == Expr::Kind::Binary);
    CHECK(cond.text == "==");
    CHECK(cond.args[0]->kind == Expr::Kind::Call);
    CHECK(cond.args[0]->text == "distributeCandies");
    CHECK(cond.args[1]->int_value == 3);
    CHECK(body.stmts[1]->kind == Stmt::Kind::Return);
}

TEST_CASE("minimal program") {
    Program p = parse("int main(){return 0;}");
    REQUIRE(p.functions.size() == 1);
    CHECK(p.functions[0].body->stmts.size() == 1);
}

TEST_CASE("constructs outside the subset are rejected") {
    CHECK_THROWS_AS(parse("int main(){ int *p = malloc(4); }"), ParseError);
    CHECK_THROWS_AS(parse("int main(){ int x = malloc(4); }"), ParseError);
    CHECK_THROWS_AS(parse("struct S { int x; };"), ParseError);
    CHECK_THROWS_AS(parse("int main(){ goto end; end: return 0; }"), ParseError);
    CHECK_THROWS_AS(parse("int main(){ int x = (char)65; return 0; }"), ParseError);
    CHECK_THROWS_AS(parse("int main(){ float f = 1; return 0; }"), ParseError);
    CHECK_THROWS_AS(parse("int main(){ int x = *p; return 0; }"), ParseError);
    CHECK_THROWS_AS(parse("unsigned int f(){ return 0; }"), ParseError);
}

TEST_CASE("casts to int are allowed") {
    Program p = parse("int main(){ int x = (int)5; return x; }");
    CHECK(p.functions[0].body->stmts[0]->expr->kind == Expr::Kind::Cast);
}

TEST_CASE("parse errors carry the expected/found shape") {
    try {
        parse("int main(){ return 0 }");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
        CHECK(std::string(e.what()).find("found") != std::string::npos);
    }
}

TEST_CASE("const char* parameters and string locals") {
    Program p = parse(testsupport::read_fixture("minic/deepseek_188.c"));
    const FunctionDef* f = p.find_function("furthestDistanceFromOrigin");
    REQUIRE(f != nullptr);
    REQUIRE(f->params.size() == 1);
    CHECK(f->params[0].type == Type::CharPtr);
}

TEST_CASE("pretty-print round trip on every fixture") {
    for (const char* name : {"algorithm2.c", "algorithm2_fixed.c", "deepseek_188.c",
                             "granite_57.c", "qwen_76.c", "deepseek_463.c"}) {
        Program original = parse(testsupport::read_fixture(std::string("minic/") + name));
        Program reparsed = parse(print(original));
        CAPTURE(name);
        CHECK(structurally_equal(original, reparsed));
    }
}

TEST_CASE("round trip normalizes sugared forms") {
    Program p = parse(
        "int main(){ int i = 0, j = 1; i++; --j; if (i) j += 2; else if (j) j = 3; "
        "for (;;) { break; } while (1) { continue; } return i; }");
    Program q = parse(print(p));
    CHECK(structurally_equal(p, q));
}
