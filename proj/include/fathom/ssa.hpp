// ssa.hpp -- guarded single-assignment form of an unrolled program: the
// last stop before bit-level encoding.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "fathom/unroll.hpp"

namespace fathom::minic {

// One versioned definition. `rhs` is an expression over versioned names.
// When `prev` is non-empty the definition executes only under `path`
// (a guard expression over versioned names): the encoder emits
//   path -> (var = rhs)   and   !path -> (var = prev).
struct SsaDef {
    std::string var;        // versioned name, e.g. "ans__3#2"
    ExprPtr rhs;
    std::string prev;       // previous version under !path; empty for decls
    ExprPtr path;           // null means unconditional
    StatementId origin = kNoStatement;
    bool guardable = false; // may carry a healthy variable
    bool control = false;   // synthetic plumbing: always hard, never guarded
};

struct SsaObligation {
    ExprPtr expr;           // must be truthy whenever path holds
    ExprPtr path;           // null means unconditional
    StatementId origin = kNoStatement;
    bool unwind = false;
};

struct SsaAssumption {
    ExprPtr expr;
    ExprPtr path;
    StatementId origin = kNoStatement;
    bool unwind = false;
};

struct SsaProgram {
    std::vector<SsaDef> defs;
    std::vector<SsaObligation> obligations;   // assertion obligations
    std::vector<SsaAssumption> assumptions;   // assume statements (+ unwind blocks)
    std::vector<std::string> nondet_vars;     // versioned input names, in order
    std::string exit_var;                     // final version of the exit value
    UnwindPolicy policy = UnwindPolicy::Fail;
};

SsaProgram to_ssa(const UnrolledProgram& u);

}  // namespace fathom::minic
