#include <doctest.h>

#include "fathom/interp.hpp"
#include "fathom/parser.hpp"
#include "fathom/typecheck.hpp"
#include "support.hpp"

using namespace fathom;
using namespace fathom::minic;

namespace {
CheckedProgram load(const std::string& src) { return typecheck(parse(src)); }
}  // namespace

TEST_CASE("the corrected motivating program completes, the printed one fails its assert") {
    CheckedProgram fixed = testsupport::load_c_fixture("algorithm2_fixed.c");
    ExecutionOutcome ok = interpret_main(fixed);
    CHECK(ok.status == ExecutionOutcome::Status::Completed);
    CHECK(ok.exit_value == 0);

    CheckedProgram buggy = testsupport::load_c_fixture("algorithm2.c");
    ExecutionOutcome bad = interpret_main(buggy);
    CHECK(bad.status == ExecutionOutcome::Status::AssertionViolated);
    CHECK(bad.span.line == 16);  // the assert in main
}

TEST_CASE("call_function on the motivating pair") {
    CheckedProgram fixed = testsupport::load_c_fixture("algorithm2_fixed.c");
    CHECK(call_function(fixed, "distributeCandies", {Value::of_int(5), Value::of_int(2)}).i == 3);

    CheckedProgram buggy = testsupport::load_c_fixture("algorithm2.c");
    CHECK(call_function(buggy, "distributeCandies", {Value::of_int(5), Value::of_int(2)}).i == 4);
}

TEST_CASE("distanceTraveled(10, 0) on the corrected candidate returns 100") {
    std::string src = testsupport::read_fixture("minic/granite_57.c");
    std::size_t pos = src.find("mainTank < 5");
    REQUIRE(pos != std::string::npos);
    src.replace(pos, 12, "mainTank >= 5");
    CheckedProgram p = load(src);
    CHECK(call_function(p, "distanceTraveled", {Value::of_int(10), Value::of_int(0)}).i == 100);
    CHECK(interpret_main(p).status == ExecutionOutcome::Status::Completed);
}

TEST_CASE("step limit stops infinite loops") {
    CheckedProgram p = load("int main(){ while (1) {} return 0; }");
    InterpLimits limits;
    limits.step_limit = 1'000'000;
    ExecutionOutcome o = interpret_main(p, limits);
    CHECK(o.status == ExecutionOutcome::Status::RuntimeError);
    CHECK(o.error == ExecutionOutcome::ErrorKind::StepLimit);
}

TEST_CASE("interpretation is deterministic including step counts") {
    CheckedProgram p = testsupport::load_c_fixture("algorithm2.c");
    ExecutionOutcome a = interpret_main(p);
    ExecutionOutcome b = interpret_main(p);
    CHECK(a.status == b.status);
    CHECK(a.steps == b.steps);
}

TEST_CASE("32-bit wraparound") {
    CheckedProgram p =
        load("int f(){ int x = 2147483647; return x + 1; } int main(){ return 0; }");
    CHECK(call_function(p, "f", {}).i == -2147483648);
}

TEST_CASE("division truncates toward zero, remainder follows the dividend") {
    CheckedProgram p = load(R"(
int main() {
    assert(7 / 2 == 3);
    assert(-7 / 2 == -3);
    assert(7 / -2 == -3);
    assert(-7 / -2 == 3);
    assert(-7 % 2 == -1);
    assert(7 % -2 == 1);
    return 0;
}
)");
    CHECK(interpret_main(p).status == ExecutionOutcome::Status::Completed);
}

TEST_CASE("division by zero is a runtime error") {
    CheckedProgram p = load("int main(){ int x = 0; return 1 / x; }");
    ExecutionOutcome o = interpret_main(p);
    CHECK(o.status == ExecutionOutcome::Status::RuntimeError);
    CHECK(o.error == ExecutionOutcome::ErrorKind::DivByZero);
}

TEST_CASE("string indexing: terminating zero readable, out of bounds is an error") {
    CheckedProgram p = load(R"(
int f(const char* s, int i) { return s[i]; }
int main() { return 0; }
)");
    static const std::string bytes = "ab";
    CHECK(call_function(p, "f", {Value::of_str(bytes), Value::of_int(0)}).i == 'a');
    CHECK(call_function(p, "f", {Value::of_str(bytes), Value::of_int(2)}).i == 0);

    CheckedProgram q = load(R"(
int main() { const char* s = "ab"; return s[3]; }
)");
    ExecutionOutcome o = interpret_main(q);
    CHECK(o.status == ExecutionOutcome::Status::RuntimeError);
    CHECK(o.error == ExecutionOutcome::ErrorKind::OutOfBounds);
}

TEST_CASE("assume violations are reported distinctly") {
    CheckedProgram p = load("int main(){ assume(0); return 0; }");
    CHECK(interpret_main(p).status == ExecutionOutcome::Status::AssumeViolated);
}

TEST_CASE("nondet_int is forbidden in concrete interpretation") {
    CheckedProgram p = load("int main(){ int x = nondet_int(); return x; }");
    CHECK_THROWS_AS(interpret_main(p), UnsupportedError);
}

TEST_CASE("printf is a no-op returning 0") {
    CheckedProgram p =
        load("int main(){ int x = printf(\"%d\\n\", 42); assert(x == 0); return 0; }");
    CHECK(interpret_main(p).status == ExecutionOutcome::Status::Completed);
}

TEST_CASE("short-circuit evaluation guards division") {
    CheckedProgram p = load(
        "int main(){ int x = 0; assert(x == 0 || 10 / x > 0); assert(!(x != 0 && 10 / x > 0)); "
        "return 0; }");
    CHECK(interpret_main(p).status == ExecutionOutcome::Status::Completed);
}

TEST_CASE("shift semantics: low five bits, arithmetic right shift") {
    CheckedProgram p = load(R"(
int main() {
    assert(1 << 33 == 2);
    assert(-8 >> 1 == -4);
    assert(256 >> 35 == 32);
    return 0;
}
)");
    CHECK(interpret_main(p).status == ExecutionOutcome::Status::Completed);
}
