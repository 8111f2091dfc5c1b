// ast.hpp -- abstract syntax for MiniC, the bounded C subset the pipeline
// verifies. Construction happens in the parser; statement ids are assigned
// by the type checker.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fathom/diag.hpp"

namespace fathom::minic {

using StatementId = int;
constexpr StatementId kNoStatement = -1;

enum class Type { Int, Void, CharPtr };

std::string type_name(Type t);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind { IntLit, StrLit, Var, Index, Unary, Binary, Ternary, Call, Cast };

    Kind kind;
    SourceSpan span;
    long long int_value = 0;   // IntLit
    std::string text;          // StrLit bytes, Var/Call name, Unary/Binary operator
    std::vector<ExprPtr> args; // children: Unary 1, Binary 2, Ternary 3, Index 2, Call n, Cast 1
    Type type = Type::Int;     // set by the type checker

    ExprPtr clone() const;
};

ExprPtr make_int(long long v, SourceSpan span = {});
ExprPtr make_var(std::string name, SourceSpan span = {});
ExprPtr make_unary(std::string op, ExprPtr a, SourceSpan span = {});
ExprPtr make_binary(std::string op, ExprPtr a, ExprPtr b, SourceSpan span = {});
ExprPtr make_ternary(ExprPtr c, ExprPtr a, ExprPtr b, SourceSpan span = {});

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
    enum class Kind {
        Decl,           // int x;  or  const char* s;   (init optional)
        Assign,         // x = e;
        CompoundAssign, // x op= e;  (++/-- normalized to += 1 / -= 1)
        If,
        While,
        For,
        Break,
        Continue,
        Return,         // expr may be null (void return)
        ExprStmt,
        Assert,
        Assume,
        Block,
    };

    Kind kind;
    SourceSpan span;                  // whole statement (simple stmts: through ';')
    StatementId id = kNoStatement;    // simple statements only
    StatementId cond_id = kNoStatement; // if/while/for condition pseudo-statement
    SourceSpan cond_span;             // e.g. "while (x < y)" or the for-condition text

    std::string name;                 // Decl/Assign/CompoundAssign target
    std::string op;                   // CompoundAssign operator spelling ("+=", ...)
    bool unwind = false;              // Assert/Assume introduced by loop unrolling
    bool synthetic = false;           // control plumbing introduced by unrolling;
                                      // never guarded during fault localisation
    Type decl_type = Type::Int;       // Decl only
    ExprPtr expr;                     // init / rhs / return value / assert arg / condition
    StmtPtr body;                     // If then / While / For body
    StmtPtr else_body;                // If only
    StmtPtr for_init;                 // For only (Decl or Assign), may be null
    StmtPtr for_update;               // For only (Assign/CompoundAssign), may be null
    std::vector<StmtPtr> stmts;       // Block

    StmtPtr clone() const;
};

struct Param {
    std::string name;
    Type type = Type::Int;
    SourceSpan span;
};

struct FunctionDef {
    std::string name;
    std::vector<Param> params;
    Type return_type = Type::Int;
    StmtPtr body;  // always a Block
    SourceSpan span;

    FunctionDef clone() const;
};

// Role a statement plays for verification: which ids exist and which may
// carry a healthy-variable guard during fault localisation.
struct StmtInfo {
    StatementId id = kNoStatement;
    SourceSpan span;
    std::string function;
    Stmt::Kind kind = Stmt::Kind::ExprStmt;
    bool is_condition = false;  // condition pseudo-statement of if/while/for
    bool guardable = false;     // assignments, decl-with-init, conditions, non-main returns
};

struct Program {
    std::vector<FunctionDef> functions;
    std::string source;  // original text, for span slicing

    const FunctionDef* find_function(const std::string& name) const;
};

// A type-checked program: every simple statement and condition has a unique
// StatementId recorded in `statements`, indexed by id.
struct CheckedProgram {
    Program program;
    std::vector<StmtInfo> statements;

    const StmtInfo& info(StatementId id) const { return statements.at(static_cast<std::size_t>(id)); }
    // Verbatim source text of a statement, whitespace runs collapsed.
    std::string statement_text(StatementId id) const;
};

// Structural equality ignoring spans and ids (used by round-trip tests).
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const Program& a, const Program& b);

// Names callable without a definition. printf is evaluated as a no-op.
bool is_intrinsic(const std::string& name);

}  // namespace fathom::minic
