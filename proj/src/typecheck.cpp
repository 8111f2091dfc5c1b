#include "fathom/typecheck.hpp"

#include <map>
#include <set>
#include <vector>

namespace fathom::minic {

namespace {

class Checker {
  public:
    explicit Checker(Program prog) : prog_(std::move(prog)) {}

    CheckedProgram run() {
        check_function_table();
        for (auto& fn : prog_.functions) check_function(fn);
        CheckedProgram out;
        out.program = std::move(prog_);
        out.statements = std::move(infos_);
        return out;
    }

  private:
    Program prog_;
    std::vector<StmtInfo> infos_;
    std::vector<std::map<std::string, Type>> scopes_;
    const FunctionDef* current_fn_ = nullptr;

    void check_function_table() {
        std::set<std::string> names;
        const FunctionDef* main_fn = nullptr;
        for (const auto& fn : prog_.functions) {
            if (!names.insert(fn.name).second)
                throw TypeError(fn.span, "duplicate function '" + fn.name + "'");
            if (is_intrinsic(fn.name))
                throw TypeError(fn.span, "'" + fn.name + "' shadows an intrinsic");
            if (fn.name == "main") main_fn = &fn;
        }
        if (!main_fn) throw TypeError(SourceSpan{1, 1, 0, 0}, "no function named 'main'");
        if (!main_fn->params.empty())
            throw TypeError(main_fn->span, "'main' must take no parameters");
        if (main_fn->return_type != Type::Int)
            throw TypeError(main_fn->span, "'main' must return int");
    }

    StatementId fresh_id(const SourceSpan& span, Stmt::Kind kind, bool is_condition,
                         bool guardable) {
        StmtInfo info;
        info.id = static_cast<StatementId>(infos_.size());
        info.span = span;
        info.function = current_fn_->name;
        info.kind = kind;
        info.is_condition = is_condition;
        info.guardable = guardable;
        infos_.push_back(info);
        return info.id;
    }

    void declare(const std::string& name, Type type, const SourceSpan& span) {
        auto& scope = scopes_.back();
        if (scope.count(name))
            throw TypeError(span, "redeclaration of '" + name + "'");
        scope[name] = type;
    }

    const Type* lookup(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto f = it->find(name);
            if (f != it->end()) return &f->second;
        }
        return nullptr;
    }

    void check_function(FunctionDef& fn) {
        current_fn_ = &fn;
        scopes_.clear();
        scopes_.emplace_back();
        std::set<std::string> pnames;
        for (const auto& p : fn.params) {
            if (!pnames.insert(p.name).second)
                throw TypeError(p.span, "duplicate parameter '" + p.name + "'");
            declare(p.name, p.type, p.span);
        }
        check_block(*fn.body);
        if (fn.return_type != Type::Void && !all_paths_return(*fn.body))
            throw TypeError(fn.span,
                            "non-void function '" + fn.name + "' may fall off the end");
        current_fn_ = nullptr;
    }

    bool all_paths_return(const Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::Return:
                return true;
            case Stmt::Kind::Block:
                for (const auto& c : s.stmts)
                    if (all_paths_return(*c)) return true;
                return false;
            case Stmt::Kind::If:
                return s.else_body && all_paths_return(*s.body) &&
                       all_paths_return(*s.else_body);
            // A loop is only counted when it cannot terminate normally:
            // constant-true condition with no break anywhere inside.
            case Stmt::Kind::While:
            case Stmt::Kind::For:
                return s.expr->kind == Expr::Kind::IntLit && s.expr->int_value != 0 &&
                       !contains_break(*s.body);
            default:
                return false;
        }
    }

    bool contains_break(const Stmt& s) {
        if (s.kind == Stmt::Kind::Break) return true;
        if (s.kind == Stmt::Kind::While || s.kind == Stmt::Kind::For)
            return false;  // break binds to the inner loop
        for (const auto& c : s.stmts)
            if (contains_break(*c)) return true;
        if (s.body && contains_break(*s.body)) return true;
        if (s.else_body && contains_break(*s.else_body)) return true;
        return false;
    }

    void check_block(Stmt& block) {
        scopes_.emplace_back();
        for (auto& s : block.stmts) check_stmt(*s);
        scopes_.pop_back();
    }

    void require_int(Expr& e) {
        Type t = check_expr(e);
        if (t != Type::Int)
            throw TypeError(e.span, "expected an int value, found " + type_name(t));
    }

    void check_stmt(Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::Block:
                check_block(s);
                return;
            case Stmt::Kind::Decl: {
                if (s.decl_type == Type::CharPtr) {
                    if (!s.expr)
                        throw TypeError(s.span, "const char* locals must be initialized");
                    Type t = check_expr(*s.expr);
                    if (t != Type::CharPtr)
                        throw TypeError(s.expr->span, "const char* initializer must be a string");
                } else if (s.expr) {
                    require_int(*s.expr);
                }
                declare(s.name, s.decl_type, s.span);
                s.id = fresh_id(s.span, s.kind, false,
                                s.expr != nullptr && s.decl_type == Type::Int);
                return;
            }
            case Stmt::Kind::Assign:
            case Stmt::Kind::CompoundAssign: {
                const Type* t = lookup(s.name);
                if (!t) throw UndefinedSymbol(s.span, s.name);
                if (*t != Type::Int)
                    throw TypeError(s.span, "cannot assign to '" + s.name + "' of type " +
                                                type_name(*t));
                require_int(*s.expr);
                s.id = fresh_id(s.span, s.kind, false, true);
                return;
            }
            case Stmt::Kind::If:
            case Stmt::Kind::While: {
                require_int(*s.expr);
                s.cond_id = fresh_id(s.cond_span, s.kind, true, true);
                check_stmt(*s.body);
                if (s.else_body) check_stmt(*s.else_body);
                return;
            }
            case Stmt::Kind::For: {
                scopes_.emplace_back();  // for-init scope
                if (s.for_init) check_stmt(*s.for_init);
                require_int(*s.expr);
                s.cond_id = fresh_id(s.cond_span, s.kind, true, true);
                if (s.for_update) check_stmt(*s.for_update);
                check_stmt(*s.body);
                scopes_.pop_back();
                return;
            }
            case Stmt::Kind::Break:
            case Stmt::Kind::Continue:
                s.id = fresh_id(s.span, s.kind, false, false);
                return;
            case Stmt::Kind::Return: {
                if (current_fn_->return_type == Type::Void) {
                    if (s.expr)
                        throw TypeError(s.span, "void function returns a value");
                } else {
                    if (!s.expr)
                        throw TypeError(s.span, "non-void function returns no value");
                    require_int(*s.expr);
                }
                bool in_main = current_fn_->name == "main";
                s.id = fresh_id(s.span, s.kind, false, s.expr != nullptr && !in_main);
                return;
            }
            case Stmt::Kind::ExprStmt:
                check_expr(*s.expr);
                s.id = fresh_id(s.span, s.kind, false, false);
                return;
            case Stmt::Kind::Assert:
            case Stmt::Kind::Assume:
                require_int(*s.expr);
                s.id = fresh_id(s.span, s.kind, false, false);
                return;
        }
    }

    Type check_call(Expr& e) {
        const std::string& name = e.text;
        if (name == "printf") {
            // parsed and evaluated as a no-op returning 0; arguments are
            // accepted as-is (format strings, values of either type)
            for (auto& a : e.args) check_expr(*a);
            return Type::Int;
        }
        if (name == "assert" || name == "assume")
            throw TypeError(e.span, "'" + name + "' cannot be used inside an expression");
        if (name == "nondet_int") {
            if (!e.args.empty())
                throw TypeError(e.span, "nondet_int takes no arguments");
            return Type::Int;
        }
        if (name == "abs") {
            if (e.args.size() != 1)
                throw TypeError(e.span, "abs takes exactly one argument");
            require_int(*e.args[0]);
            return Type::Int;
        }
        if (name == "min" || name == "max") {
            if (e.args.size() != 2)
                throw TypeError(e.span, name + " takes exactly two arguments");
            require_int(*e.args[0]);
            require_int(*e.args[1]);
            return Type::Int;
        }
        const FunctionDef* fn = prog_.find_function(name);
        if (!fn) throw UndefinedSymbol(e.span, name);
        if (fn->params.size() != e.args.size())
            throw TypeError(e.span, "call to '" + name + "' with " +
                                        std::to_string(e.args.size()) + " arguments, expected " +
                                        std::to_string(fn->params.size()));
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            Type t = check_expr(*e.args[i]);
            if (t != fn->params[i].type)
                throw TypeError(e.args[i]->span,
                                "argument " + std::to_string(i + 1) + " of '" + name +
                                    "' expects " + type_name(fn->params[i].type) + ", found " +
                                    type_name(t));
        }
        return fn->return_type;
    }

    Type check_expr(Expr& e) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return e.type = Type::Int;
            case Expr::Kind::StrLit:
                return e.type = Type::CharPtr;
            case Expr::Kind::Var: {
                const Type* t = lookup(e.text);
                if (!t) throw UndefinedSymbol(e.span, e.text);
                return e.type = *t;
            }
            case Expr::Kind::Index: {
                Type base = check_expr(*e.args[0]);
                if (base != Type::CharPtr)
                    throw TypeError(e.span, "only const char* values can be indexed");
                require_int(*e.args[1]);
                return e.type = Type::Int;
            }
            case Expr::Kind::Unary:
                require_int(*e.args[0]);
                return e.type = Type::Int;
            case Expr::Kind::Binary:
                require_int(*e.args[0]);
                require_int(*e.args[1]);
                return e.type = Type::Int;
            case Expr::Kind::Ternary:
                require_int(*e.args[0]);
                require_int(*e.args[1]);
                require_int(*e.args[2]);
                return e.type = Type::Int;
            case Expr::Kind::Cast:
                require_int(*e.args[0]);
                return e.type = Type::Int;
            case Expr::Kind::Call:
                return e.type = check_call(e);
        }
        return Type::Int;
    }
};

}  // namespace

CheckedProgram typecheck(Program program) {
    return Checker(std::move(program)).run();
}

}  // namespace fathom::minic
