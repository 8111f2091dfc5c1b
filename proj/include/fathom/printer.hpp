// printer.hpp -- MiniC pretty-printer; output reparses to a structurally
// equal program.
#pragma once

#include <string>

#include "fathom/ast.hpp"

namespace fathom::minic {

std::string print(const Program& prog);
std::string print(const Expr& e);
std::string print(const Stmt& s, int indent = 0);

}  // namespace fathom::minic
