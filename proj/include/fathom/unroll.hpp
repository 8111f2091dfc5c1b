// unroll.hpp -- loop unrolling and call inlining: turns a checked program
// into a loop-free, call-free statement tree suitable for SSA conversion.
#pragma once

#include <string>
#include <vector>

#include "fathom/ast.hpp"

namespace fathom::minic {

// What happens to executions that would need more than k iterations of a
// loop: Fail plants an unwinding assertion (its violation is reported as
// BoundExceeded); Assume blocks those executions so bound artifacts cannot
// masquerade as property violations during localisation.
enum class UnwindPolicy { Fail, Assume };

class RecursionBound : public Error {
  public:
    using Error::Error;
};

// Loop-free, call-free lowering of a whole program, rooted at main.
// Every statement carries the StatementId of the source statement it
// originates from; synthetic control statements are flagged.
struct UnrolledProgram {
    StmtPtr body;                          // a Block
    std::string exit_var;                  // holds main's return value
    std::vector<std::string> nondet_vars;  // nondet_int instances, in order
    int bound = 0;
    int inline_depth = 0;
    UnwindPolicy policy = UnwindPolicy::Fail;
};

UnrolledProgram unroll(const CheckedProgram& program, int k, int d,
                       UnwindPolicy policy = UnwindPolicy::Fail);

// Repackages the unrolled body as a standalone program (used to cross-check
// unrolling against the concrete interpreter).
Program to_program(const UnrolledProgram& u);

}  // namespace fathom::minic
