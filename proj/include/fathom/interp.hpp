// interp.hpp -- concrete big-step interpreter for checked MiniC programs.
//
// Shared MiniC evaluation rules (also implemented bit-precisely by the
// verifier, so the two sides must never diverge):
//   - int is 32-bit two's complement; arithmetic wraps silently
//   - division/remainder truncate toward zero; divisor 0 is a runtime error
//   - shift amounts use the low 5 bits of the RHS; >> is arithmetic
//   - locals declared without an initializer start at 0
//   - string literals are immutable byte arrays; reading the terminating
//     zero byte is allowed, anything outside [0, len] is out-of-bounds
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fathom/ast.hpp"

namespace fathom::minic {

struct Value {
    enum class Kind { Int, Str, Void };
    Kind kind = Kind::Void;
    std::int32_t i = 0;
    const std::string* str = nullptr;  // owned by the AST / string table

    static Value of_int(std::int32_t v) { return Value{Kind::Int, v, nullptr}; }
    static Value of_str(const std::string& s) { return Value{Kind::Str, 0, &s}; }
    static Value void_value() { return Value{}; }
};

struct ExecutionOutcome {
    enum class Status { Completed, AssertionViolated, AssumeViolated, RuntimeError };
    enum class ErrorKind { None, DivByZero, OutOfBounds, StepLimit };

    Status status = Status::Completed;
    std::int32_t exit_value = 0;
    ErrorKind error = ErrorKind::None;
    SourceSpan span;
    long long steps = 0;

    bool completed() const { return status == Status::Completed; }
};

std::string to_string(const ExecutionOutcome& o);

struct InterpLimits {
    long long step_limit = 10'000'000;
    long long wall_timeout_ms = 5'000;
};

// Misuse of the concrete interpreter (e.g. nondet_int outside the
// verifier); distinct from the program-level outcomes above.
class UnsupportedError : public Error {
  public:
    using Error::Error;
};

// Runs main() to completion under the given limits.
ExecutionOutcome interpret_main(const CheckedProgram& program,
                                const InterpLimits& limits = {});

// Calls a named function with the given arguments. Throws Error on a
// runtime failure (assertion/assume violations inside callees included).
Value call_function(const CheckedProgram& program, const std::string& name,
                    const std::vector<Value>& args, const InterpLimits& limits = {});

// 32-bit helpers shared with the CNF encoder's semantics.
std::int32_t wrap_add(std::int32_t a, std::int32_t b);
std::int32_t wrap_sub(std::int32_t a, std::int32_t b);
std::int32_t wrap_mul(std::int32_t a, std::int32_t b);
std::int32_t wrap_neg(std::int32_t a);
std::int32_t trunc_div(std::int32_t a, std::int32_t b);  // b != 0
std::int32_t trunc_rem(std::int32_t a, std::int32_t b);  // b != 0
std::int32_t shift_left(std::int32_t a, std::int32_t s);
std::int32_t shift_right(std::int32_t a, std::int32_t s);

}  // namespace fathom::minic
