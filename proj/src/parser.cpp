#include "fathom/parser.hpp"

#include "fathom/lexer.hpp"

namespace fathom::minic {

namespace {

// Binary operator precedence, higher binds tighter.
int binop_prec(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "|") return 3;
    if (op == "^") return 4;
    if (op == "&") return 5;
    if (op == "==" || op == "!=") return 6;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 7;
    if (op == "<<" || op == ">>") return 8;
    if (op == "+" || op == "-") return 9;
    if (op == "*" || op == "/" || op == "%") return 10;
    return 0;
}

bool is_compound_op(const std::string& op) {
    return op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "%=" ||
           op == "&=" || op == "|=" || op == "^=" || op == "<<=" || op == ">>=";
}

class Parser {
  public:
    explicit Parser(const std::string& source)
        : source_(source), toks_(tokenize(source)) {}

    Program run() {
        Program prog;
        prog.source = source_;
        while (!peek().is(Tok::End)) {
            if (peek().is(Tok::Preprocessor)) {
                next();
                continue;
            }
            prog.functions.push_back(parse_function());
        }
        return prog;
    }

  private:
    const std::string& source_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t off = 0) const {
        std::size_t i = pos_ + off;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token& t, const std::string& expected) {
        std::string found = t.is(Tok::End) ? "end of input"
                            : t.text.empty() ? std::to_string(t.value)
                                             : "'" + t.text + "'";
        throw ParseError(t.span, "expected " + expected + ", found " + found);
    }

    const Token& expect_punct(const char* p) {
        if (!peek().is_punct(p)) fail(peek(), std::string("'") + p + "'");
        return next();
    }
    std::string expect_ident() {
        if (!peek().is(Tok::Ident)) fail(peek(), "identifier");
        return next().text;
    }

    void reject_keyword(const Token& t) {
        static const char* kOutside[] = {"struct", "goto",  "sizeof", "unsigned",
                                         "long",   "short", "float",  "double",
                                         "static", "do",    "switch", "enum",
                                         "union",  "typedef"};
        for (const char* k : kOutside)
            if (t.is_kw(k))
                throw ParseError(t.span, std::string("'") + k + "' is outside the supported C subset");
    }

    // int | void | [const] char *
    Type parse_type() {
        reject_keyword(peek());
        if (peek().is_kw("int")) {
            next();
            if (peek().is_punct("*"))
                throw ParseError(peek().span, "pointer declarations are outside the supported C subset");
            return Type::Int;
        }
        if (peek().is_kw("void")) {
            next();
            return Type::Void;
        }
        if (peek().is_kw("const") || peek().is_kw("char")) {
            if (peek().is_kw("const")) next();
            if (!peek().is_kw("char")) fail(peek(), "'char'");
            next();
            if (!peek().is_punct("*"))
                throw ParseError(peek().span, "'char' values are only supported as const char* parameters");
            next();
            return Type::CharPtr;
        }
        fail(peek(), "a type");
    }

    bool at_type() const {
        return peek().is_kw("int") || peek().is_kw("void") || peek().is_kw("char") ||
               (peek().is_kw("const") && peek(1).is_kw("char"));
    }

    FunctionDef parse_function() {
        FunctionDef fn;
        SourceSpan start = peek().span;
        fn.return_type = parse_type();
        fn.name = expect_ident();
        expect_punct("(");
        if (peek().is_kw("void") && peek(1).is_punct(")")) next();
        if (!peek().is_punct(")")) {
            while (true) {
                Param p;
                p.span = peek().span;
                p.type = parse_type();
                if (p.type == Type::Void)
                    throw ParseError(p.span, "'void' is not a valid parameter type");
                p.name = expect_ident();
                // tolerate array-of-char parameter spelling: const char s[]
                if (peek().is_punct("[")) {
                    if (p.type != Type::CharPtr)
                        throw ParseError(peek().span, "array parameters are outside the supported C subset");
                    next();
                    expect_punct("]");
                }
                fn.params.push_back(std::move(p));
                if (!peek().is_punct(",")) break;
                next();
            }
        }
        expect_punct(")");
        fn.body = parse_block();
        fn.span = start;
        fn.span.end = fn.body->span.end;
        return fn;
    }

    StmtPtr parse_block() {
        auto block = std::make_unique<Stmt>();
        block->kind = Stmt::Kind::Block;
        block->span = peek().span;
        expect_punct("{");
        while (!peek().is_punct("}")) {
            if (peek().is(Tok::End)) fail(peek(), "'}'");
            if (peek().is_punct(";")) {  // stray empty statement
                next();
                continue;
            }
            block->stmts.push_back(parse_stmt());
        }
        block->span.end = peek().span.end;
        expect_punct("}");
        return block;
    }

    // Wrap a non-block body into a single-statement block so that printed
    // and reparsed programs compare structurally equal.
    StmtPtr parse_body() {
        if (peek().is_punct("{")) return parse_block();
        auto block = std::make_unique<Stmt>();
        block->kind = Stmt::Kind::Block;
        block->span = peek().span;
        block->stmts.push_back(parse_stmt());
        block->span.end = block->stmts.back()->span.end;
        return block;
    }

    StmtPtr finish_simple(StmtPtr s, SourceSpan start) {
        s->span = start;
        s->span.end = expect_punct(";").span.end;
        return s;
    }

    StmtPtr parse_stmt() {
        const Token& t = peek();
        reject_keyword(t);
        if (t.is_punct("{")) return parse_block();
        if (at_type()) return parse_decl();
        if (t.is_kw("if")) return parse_if();
        if (t.is_kw("while")) return parse_while();
        if (t.is_kw("for")) return parse_for();
        if (t.is_kw("break") || t.is_kw("continue")) {
            auto s = std::make_unique<Stmt>();
            s->kind = t.is_kw("break") ? Stmt::Kind::Break : Stmt::Kind::Continue;
            SourceSpan start = next().span;
            return finish_simple(std::move(s), start);
        }
        if (t.is_kw("return")) {
            auto s = std::make_unique<Stmt>();
            s->kind = Stmt::Kind::Return;
            SourceSpan start = next().span;
            if (!peek().is_punct(";")) s->expr = parse_expr();
            return finish_simple(std::move(s), start);
        }
        if (t.is(Tok::Ident) && (t.text == "assert" || t.text == "assume") &&
            peek(1).is_punct("(")) {
            auto s = std::make_unique<Stmt>();
            s->kind = t.text == "assert" ? Stmt::Kind::Assert : Stmt::Kind::Assume;
            SourceSpan start = next().span;
            expect_punct("(");
            s->expr = parse_expr();
            expect_punct(")");
            return finish_simple(std::move(s), start);
        }
        return finish_simple(parse_simple(), t.span);
    }

    // Assignment, compound assignment, ++/--, or expression statement;
    // no trailing ';' consumed (shared with for-init/for-update).
    StmtPtr parse_simple() {
        const Token& t = peek();
        if (t.is_punct("++") || t.is_punct("--")) {
            std::string op = next().text;
            auto s = std::make_unique<Stmt>();
            s->kind = Stmt::Kind::CompoundAssign;
            s->name = expect_ident();
            s->op = op == "++" ? "+=" : "-=";
            s->expr = make_int(1);
            return s;
        }
        if (t.is(Tok::Ident)) {
            if (peek(1).is_punct("=")) {
                auto s = std::make_unique<Stmt>();
                s->kind = Stmt::Kind::Assign;
                s->name = next().text;
                next();
                s->expr = parse_expr();
                return s;
            }
            if (peek(1).is(Tok::Punct) && is_compound_op(peek(1).text)) {
                auto s = std::make_unique<Stmt>();
                s->kind = Stmt::Kind::CompoundAssign;
                s->name = next().text;
                s->op = next().text;
                s->expr = parse_expr();
                return s;
            }
            if (peek(1).is_punct("++") || peek(1).is_punct("--")) {
                auto s = std::make_unique<Stmt>();
                s->kind = Stmt::Kind::CompoundAssign;
                s->name = next().text;
                s->op = next().text == "++" ? "+=" : "-=";
                s->expr = make_int(1);
                return s;
            }
        }
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::ExprStmt;
        s->expr = parse_expr();
        return s;
    }

    StmtPtr parse_decl() {
        SourceSpan start = peek().span;
        Type ty = parse_type();
        if (ty == Type::Void)
            throw ParseError(start, "'void' is not a valid variable type");
        // One or more declarators; split multi-declarator lines into
        // separate Decl statements inside a block.
        std::vector<StmtPtr> decls;
        while (true) {
            auto s = std::make_unique<Stmt>();
            s->kind = Stmt::Kind::Decl;
            s->decl_type = ty;
            SourceSpan dspan = decls.empty() ? start : peek().span;
            s->name = expect_ident();
            if (peek().is_punct("=")) {
                next();
                s->expr = parse_expr();
            }
            dspan.end = peek().span.end;  // ends at ',' or ';'
            s->span = dspan;
            decls.push_back(std::move(s));
            if (peek().is_punct(",")) {
                next();
                continue;
            }
            break;
        }
        SourceSpan semi = expect_punct(";").span;
        decls.back()->span.end = semi.end;
        if (decls.size() == 1) return std::move(decls.front());
        auto block = std::make_unique<Stmt>();
        block->kind = Stmt::Kind::Block;
        block->span = start;
        block->span.end = semi.end;
        block->stmts = std::move(decls);
        return block;
    }

    StmtPtr parse_if() {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::If;
        s->span = peek().span;
        s->cond_span = peek().span;
        next();
        expect_punct("(");
        s->expr = parse_expr();
        s->cond_span.end = expect_punct(")").span.end;
        s->body = parse_body();
        s->span.end = s->body->span.end;
        if (peek().is_kw("else")) {
            next();
            s->else_body = peek().is_kw("if") ? wrap_block(parse_if()) : parse_body();
            s->span.end = s->else_body->span.end;
        }
        return s;
    }

    StmtPtr wrap_block(StmtPtr inner) {
        auto block = std::make_unique<Stmt>();
        block->kind = Stmt::Kind::Block;
        block->span = inner->span;
        block->stmts.push_back(std::move(inner));
        return block;
    }

    StmtPtr parse_while() {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::While;
        s->span = peek().span;
        s->cond_span = peek().span;
        next();
        expect_punct("(");
        s->expr = parse_expr();
        s->cond_span.end = expect_punct(")").span.end;
        s->body = parse_body();
        s->span.end = s->body->span.end;
        return s;
    }

    StmtPtr parse_for() {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::For;
        s->span = peek().span;
        next();
        expect_punct("(");
        if (!peek().is_punct(";")) {
            if (at_type()) {
                SourceSpan dstart = peek().span;
                Type ty = parse_type();
                auto d = std::make_unique<Stmt>();
                d->kind = Stmt::Kind::Decl;
                d->decl_type = ty;
                d->name = expect_ident();
                if (peek().is_punct("=")) {
                    next();
                    d->expr = parse_expr();
                }
                d->span = dstart;
                d->span.end = peek().span.begin;
                s->for_init = std::move(d);
            } else {
                SourceSpan istart = peek().span;
                s->for_init = parse_simple();
                s->for_init->span = istart;
                s->for_init->span.end = peek().span.begin;
            }
        }
        expect_punct(";");
        if (!peek().is_punct(";")) {
            s->cond_span = peek().span;
            s->expr = parse_expr();
            s->cond_span.end = s->expr->span.end;
        } else {
            s->expr = make_int(1, peek().span);  // omitted condition: always true
            s->cond_span = peek().span;
        }
        expect_punct(";");
        if (!peek().is_punct(")")) {
            SourceSpan ustart = peek().span;
            s->for_update = parse_simple();
            s->for_update->span = ustart;
            s->for_update->span.end = peek().span.begin;
        }
        expect_punct(")");
        s->body = parse_body();
        s->span.end = s->body->span.end;
        return s;
    }

    ExprPtr parse_expr() { return parse_ternary(); }

    ExprPtr parse_ternary() {
        ExprPtr cond = parse_binary(1);
        if (!peek().is_punct("?")) return cond;
        SourceSpan span = cond->span;
        next();
        ExprPtr then = parse_expr();
        expect_punct(":");
        ExprPtr other = parse_ternary();
        span.end = other->span.end;
        return make_ternary(std::move(cond), std::move(then), std::move(other), span);
    }

    ExprPtr parse_binary(int min_prec) {
        ExprPtr lhs = parse_unary();
        while (peek().is(Tok::Punct)) {
            int prec = binop_prec(peek().text);
            if (prec < min_prec || prec == 0) break;
            std::string op = next().text;
            ExprPtr rhs = parse_binary(prec + 1);
            SourceSpan span = lhs->span;
            span.end = rhs->span.end;
            lhs = make_binary(op, std::move(lhs), std::move(rhs), span);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        const Token& t = peek();
        if (t.is_punct("-") || t.is_punct("!") || t.is_punct("~")) {
            std::string op = t.text;
            SourceSpan span = next().span;
            ExprPtr a = parse_unary();
            span.end = a->span.end;
            return make_unary(std::move(op), std::move(a), span);
        }
        if (t.is_punct("+")) {  // unary plus is a no-op
            next();
            return parse_unary();
        }
        if (t.is_punct("*") || t.is_punct("&"))
            throw ParseError(t.span, "pointer operations are outside the supported C subset");
        if (t.is_punct("++") || t.is_punct("--"))
            throw ParseError(t.span, "'" + t.text + "' is only supported as a statement");
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (true) {
            if (peek().is_punct("[")) {
                SourceSpan span = e->span;
                next();
                ExprPtr idx = parse_expr();
                span.end = expect_punct("]").span.end;
                auto node = std::make_unique<Expr>();
                node->kind = Expr::Kind::Index;
                node->span = span;
                node->args.push_back(std::move(e));
                node->args.push_back(std::move(idx));
                e = std::move(node);
                continue;
            }
            if (peek().is_punct("++") || peek().is_punct("--"))
                throw ParseError(peek().span, "'" + peek().text + "' is only supported as a statement");
            break;
        }
        return e;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        reject_keyword(t);
        if (t.is(Tok::IntLit)) {
            ExprPtr e = make_int(t.value, t.span);
            next();
            return e;
        }
        if (t.is(Tok::StrLit)) {
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::StrLit;
            e->text = t.text;
            e->span = t.span;
            next();
            return e;
        }
        if (t.is_punct("(")) {
            // cast to int is the only permitted cast
            if (peek(1).is_kw("int") && peek(2).is_punct(")")) {
                SourceSpan span = next().span;
                next();
                next();
                ExprPtr a = parse_unary();
                span.end = a->span.end;
                auto e = std::make_unique<Expr>();
                e->kind = Expr::Kind::Cast;
                e->span = span;
                e->args.push_back(std::move(a));
                return e;
            }
            if (peek(1).is(Tok::Keyword) && peek(2).is_punct(")"))
                throw ParseError(peek(1).span, "only casts to int are supported");
            next();
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (t.is(Tok::Ident)) {
            std::string name = next().text;
            if (name == "malloc" || name == "calloc" || name == "free" || name == "realloc")
                throw ParseError(t.span, "dynamic allocation is outside the supported C subset");
            if (peek().is_punct("(")) {
                auto e = std::make_unique<Expr>();
                e->kind = Expr::Kind::Call;
                e->text = name;
                e->span = t.span;
                next();
                if (!peek().is_punct(")")) {
                    while (true) {
                        e->args.push_back(parse_expr());
                        if (!peek().is_punct(",")) break;
                        next();
                    }
                }
                e->span.end = expect_punct(")").span.end;
                return e;
            }
            return make_var(name, t.span);
        }
        fail(t, "an expression");
    }
};

}  // namespace

Program parse(const std::string& source) {
    return Parser(source).run();
}

}  // namespace fathom::minic
