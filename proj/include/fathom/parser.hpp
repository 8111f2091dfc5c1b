// parser.hpp -- recursive-descent parser for MiniC.
#pragma once

#include <string>

#include "fathom/ast.hpp"

namespace fathom::minic {

// Parses MiniC source text. Constructs outside the subset (pointers other
// than const-char parameters/locals, structs, goto, non-int casts, dynamic
// allocation) are rejected with ParseError; in the pipeline a ParseError
// plays the role of "fails to compile".
Program parse(const std::string& source);

}  // namespace fathom::minic
