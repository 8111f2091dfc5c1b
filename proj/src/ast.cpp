#include "fathom/ast.hpp"

#include <algorithm>

namespace fathom::minic {

std::string type_name(Type t) {
    switch (t) {
        case Type::Int: return "int";
        case Type::Void: return "void";
        case Type::CharPtr: return "const char*";
    }
    return "?";
}

ExprPtr Expr::clone() const {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->span = span;
    e->int_value = int_value;
    e->text = text;
    e->type = type;
    e->args.reserve(args.size());
    for (const auto& a : args) e->args.push_back(a->clone());
    return e;
}

ExprPtr make_int(long long v, SourceSpan span) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::IntLit;
    e->int_value = v;
    e->span = span;
    return e;
}

ExprPtr make_var(std::string name, SourceSpan span) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Var;
    e->text = std::move(name);
    e->span = span;
    return e;
}

ExprPtr make_unary(std::string op, ExprPtr a, SourceSpan span) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Unary;
    e->text = std::move(op);
    e->span = span;
    e->args.push_back(std::move(a));
    return e;
}

ExprPtr make_binary(std::string op, ExprPtr a, ExprPtr b, SourceSpan span) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Binary;
    e->text = std::move(op);
    e->span = span;
    e->args.push_back(std::move(a));
    e->args.push_back(std::move(b));
    return e;
}

ExprPtr make_ternary(ExprPtr c, ExprPtr a, ExprPtr b, SourceSpan span) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Ternary;
    e->span = span;
    e->args.push_back(std::move(c));
    e->args.push_back(std::move(a));
    e->args.push_back(std::move(b));
    return e;
}

StmtPtr Stmt::clone() const {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->span = span;
    s->id = id;
    s->cond_id = cond_id;
    s->cond_span = cond_span;
    s->name = name;
    s->op = op;
    s->unwind = unwind;
    s->synthetic = synthetic;
    s->decl_type = decl_type;
    if (expr) s->expr = expr->clone();
    if (body) s->body = body->clone();
    if (else_body) s->else_body = else_body->clone();
    if (for_init) s->for_init = for_init->clone();
    if (for_update) s->for_update = for_update->clone();
    s->stmts.reserve(stmts.size());
    for (const auto& c : stmts) s->stmts.push_back(c->clone());
    return s;
}

FunctionDef FunctionDef::clone() const {
    FunctionDef f;
    f.name = name;
    f.params = params;
    f.return_type = return_type;
    f.body = body ? body->clone() : nullptr;
    f.span = span;
    return f;
}

const FunctionDef* Program::find_function(const std::string& name) const {
    for (const auto& f : functions)
        if (f.name == name) return &f;
    return nullptr;
}

std::string CheckedProgram::statement_text(StatementId id) const {
    const StmtInfo& si = info(id);
    std::string raw = program.source.substr(si.span.begin, si.span.end - si.span.begin);
    std::string out;
    bool in_space = false;
    for (char c : raw) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out += ' ';
        in_space = false;
        out += c;
    }
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.int_value != b.int_value || a.text != b.text) return false;
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!structurally_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

namespace {
bool eq(const ExprPtr& a, const ExprPtr& b) {
    if (!a != !b) return false;
    return !a || structurally_equal(*a, *b);
}
bool eq(const StmtPtr& a, const StmtPtr& b) {
    if (!a != !b) return false;
    return !a || structurally_equal(*a, *b);
}
}  // namespace

bool structurally_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.name != b.name || a.op != b.op || a.decl_type != b.decl_type)
        return false;
    if (!eq(a.expr, b.expr) || !eq(a.body, b.body) || !eq(a.else_body, b.else_body) ||
        !eq(a.for_init, b.for_init) || !eq(a.for_update, b.for_update))
        return false;
    if (a.stmts.size() != b.stmts.size()) return false;
    for (std::size_t i = 0; i < a.stmts.size(); ++i)
        if (!structurally_equal(*a.stmts[i], *b.stmts[i])) return false;
    return true;
}

bool structurally_equal(const Program& a, const Program& b) {
    if (a.functions.size() != b.functions.size()) return false;
    for (std::size_t i = 0; i < a.functions.size(); ++i) {
        const FunctionDef& fa = a.functions[i];
        const FunctionDef& fb = b.functions[i];
        if (fa.name != fb.name || fa.return_type != fb.return_type) return false;
        if (fa.params.size() != fb.params.size()) return false;
        for (std::size_t j = 0; j < fa.params.size(); ++j)
            if (fa.params[j].name != fb.params[j].name || fa.params[j].type != fb.params[j].type)
                return false;
        if (!eq(fa.body, fb.body)) return false;
    }
    return true;
}

bool is_intrinsic(const std::string& name) {
    return name == "assert" || name == "assume" || name == "nondet_int" ||
           name == "abs" || name == "min" || name == "max" || name == "printf";
}

}  // namespace fathom::minic
