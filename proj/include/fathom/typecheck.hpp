// typecheck.hpp -- scope/type checking and StatementId assignment.
#pragma once

#include "fathom/ast.hpp"

namespace fathom::minic {

// Checks scoping, arities and types, enforces the program invariants
// (single parameterless main, unique function names, all paths return),
// and annotates every simple statement and every if/while/for condition
// with a unique StatementId. Throws TypeError or UndefinedSymbol.
CheckedProgram typecheck(Program program);

}  // namespace fathom::minic
