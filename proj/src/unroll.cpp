#include "fathom/unroll.hpp"

#include <map>
#include <optional>

namespace fathom::minic {

namespace {

// One lexical binding: the unique lowered name, or a resolved string
// constant for const char* bindings.
struct Binding {
    std::string name;
    std::optional<std::string> string_bytes;
};

bool contains_return(const Stmt& s) {
    if (s.kind == Stmt::Kind::Return) return true;
    for (const auto& c : s.stmts)
        if (contains_return(*c)) return true;
    if (s.body && contains_return(*s.body)) return true;
    if (s.else_body && contains_return(*s.else_body)) return true;
    return false;
}

// break/continue that would escape `s` itself (nested loops swallow theirs).
bool contains_loop_jump(const Stmt& s) {
    if (s.kind == Stmt::Kind::Break || s.kind == Stmt::Kind::Continue) return true;
    if (s.kind == Stmt::Kind::While || s.kind == Stmt::Kind::For) return false;
    for (const auto& c : s.stmts)
        if (contains_loop_jump(*c)) return true;
    if (s.body && contains_loop_jump(*s.body)) return true;
    if (s.else_body && contains_loop_jump(*s.else_body)) return true;
    return false;
}

class Unroller {
  public:
    Unroller(const CheckedProgram& prog, int k, int d, UnwindPolicy policy)
        : prog_(prog), k_(k), d_(d), policy_(policy) {}

    UnrolledProgram run() {
        UnrolledProgram out;
        auto block = std::make_unique<Stmt>();
        block->kind = Stmt::Kind::Block;
        sink_ = &block->stmts;
        const FunctionDef* fn = prog_.program.find_function("main");
        out.exit_var = inline_call(*fn, {}, 1, fn->span);
        out.body = std::move(block);
        out.nondet_vars = std::move(nondet_vars_);
        out.bound = k_;
        out.inline_depth = d_;
        out.policy = policy_;
        return out;
    }

  private:
    const CheckedProgram& prog_;
    int k_, d_;
    UnwindPolicy policy_;
    int name_counter_ = 0;
    std::vector<std::string> nondet_vars_;
    std::vector<StmtPtr>* sink_ = nullptr;

    // Per-frame lowering state.
    struct LoopCtx {
        std::string brk_flag;   // empty when the loop has no break
        std::string cont_flag;  // reset per iteration; empty when unused
    };
    struct Frame {
        std::vector<std::map<std::string, Binding>> scopes;
        std::string ret_flag;  // empty when the function body cannot return early
        std::string ret_val;   // empty for void functions
        std::vector<LoopCtx> loops;
    };
    Frame frame_;

    std::string fresh(const std::string& base) {
        return base + "__" + std::to_string(name_counter_++);
    }

    void emit(StmtPtr s) { sink_->push_back(std::move(s)); }

    StmtPtr make_assign(std::string name, ExprPtr rhs, StatementId id, bool synthetic,
                        SourceSpan span) {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::Assign;
        s->name = std::move(name);
        s->expr = std::move(rhs);
        s->id = id;
        s->synthetic = synthetic;
        s->span = span;
        return s;
    }

    StmtPtr make_decl(std::string name, ExprPtr init, StatementId id, bool synthetic,
                      SourceSpan span) {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::Decl;
        s->decl_type = Type::Int;
        s->name = std::move(name);
        s->expr = std::move(init);
        s->id = id;
        s->synthetic = synthetic;
        s->span = span;
        return s;
    }

    Binding* lookup(const std::string& name) {
        for (auto it = frame_.scopes.rbegin(); it != frame_.scopes.rend(); ++it) {
            auto f = it->find(name);
            if (f != it->end()) return &f->second;
        }
        return nullptr;
    }

    // --- expression lowering: rename vars, resolve strings, hoist calls ---

    ExprPtr lower_expr(const Expr& e, int depth) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
            case Expr::Kind::StrLit:
                return e.clone();
            case Expr::Kind::Var: {
                Binding* b = lookup(e.text);
                if (b->string_bytes) {
                    auto s = std::make_unique<Expr>();
                    s->kind = Expr::Kind::StrLit;
                    s->text = *b->string_bytes;
                    s->span = e.span;
                    s->type = Type::CharPtr;
                    return s;
                }
                auto v = make_var(b->name, e.span);
                v->type = e.type;
                return v;
            }
            case Expr::Kind::Call:
                return lower_call(e, depth);
            default: {
                auto out = std::make_unique<Expr>();
                out->kind = e.kind;
                out->span = e.span;
                out->int_value = e.int_value;
                out->text = e.text;
                out->type = e.type;
                for (const auto& a : e.args) out->args.push_back(lower_expr(*a, depth));
                return out;
            }
        }
    }

    ExprPtr lower_call(const Expr& e, int depth) {
        const std::string& name = e.text;
        if (name == "printf") return make_int(0, e.span);
        if (name == "nondet_int") {
            std::string v = fresh("__nondet");
            auto call = std::make_unique<Expr>();
            call->kind = Expr::Kind::Call;
            call->text = "nondet_int";
            call->span = e.span;
            emit(make_decl(v, std::move(call), current_id_, true, e.span));
            nondet_vars_.push_back(v);
            return make_var(v, e.span);
        }
        if (is_intrinsic(name)) {  // abs/min/max stay as value operators
            auto out = e.clone();
            out->args.clear();
            for (const auto& a : e.args) out->args.push_back(lower_expr(*a, depth));
            return out;
        }
        const FunctionDef* fn = prog_.program.find_function(name);
        if (depth >= d_)
            throw RecursionBound(e.span, "call inlining exceeded depth " + std::to_string(d_) +
                                             " at '" + name + "'");
        std::vector<ExprPtr> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(lower_expr(*a, depth));
        std::string ret = inline_call(*fn, std::move(args), depth + 1, e.span);
        return make_var(ret, e.span);
    }

    // Inlines a call; returns the name of the variable holding the return
    // value ("" for void). Calls hoisted out of expressions are evaluated
    // unconditionally, which is value-preserving because MiniC functions
    // have no side effects.
    std::string inline_call(const FunctionDef& fn, std::vector<ExprPtr> args, int depth,
                            SourceSpan site) {
        Frame saved = std::move(frame_);
        frame_ = Frame{};
        frame_.scopes.emplace_back();

        for (std::size_t i = 0; i < fn.params.size(); ++i) {
            const Param& p = fn.params[i];
            if (p.type == Type::CharPtr) {
                // resolved statically; string args are literals by now
                frame_.scopes.back()[p.name] = Binding{"", args[i]->text};
            } else {
                std::string v = fresh(p.name);
                emit(make_decl(v, std::move(args[i]), current_id_, false, site));
                frame_.scopes.back()[p.name] = Binding{v, std::nullopt};
            }
        }

        bool needs_ret_flag = contains_return(*fn.body);
        if (needs_ret_flag) {
            frame_.ret_flag = fresh("__ret");
            emit(make_decl(frame_.ret_flag, make_int(0), current_id_, true, site));
        }
        if (fn.return_type != Type::Void) {
            frame_.ret_val = fresh("__retval");
            emit(make_decl(frame_.ret_val, make_int(0), current_id_, true, site));
        }

        lower_block(*fn.body, depth);

        std::string result = frame_.ret_val;
        frame_ = std::move(saved);
        return result;
    }

    // --- statement lowering ---

    StatementId current_id_ = kNoStatement;

    // Abort conditions that may cut off the rest of the current block.
    ExprPtr abort_guard(bool include_loop) {
        ExprPtr g;
        auto add = [&](const std::string& flag) {
            if (flag.empty()) return;
            ExprPtr term = make_unary("!", make_var(flag));
            g = g ? make_binary("&&", std::move(g), std::move(term)) : std::move(term);
        };
        add(frame_.ret_flag);
        if (include_loop && !frame_.loops.empty()) {
            add(frame_.loops.back().brk_flag);
            add(frame_.loops.back().cont_flag);
        }
        return g;
    }

    bool may_abort(const Stmt& s) {
        if (contains_return(s)) return true;
        if (!frame_.loops.empty() && contains_loop_jump(s)) return true;
        return false;
    }

    void lower_block(const Stmt& block, int depth) {
        frame_.scopes.emplace_back();
        lower_stmt_seq(block.stmts, 0, depth);
        frame_.scopes.pop_back();
    }

    void lower_stmt_seq(const std::vector<StmtPtr>& stmts, std::size_t from, int depth) {
        for (std::size_t i = from; i < stmts.size(); ++i) {
            const Stmt& s = *stmts[i];
            lower_stmt(s, depth);
            if (may_abort(s) && i + 1 < stmts.size()) {
                ExprPtr guard = abort_guard(true);
                if (!guard) continue;  // no flags in scope, nothing was lowered
                auto wrap = std::make_unique<Stmt>();
                wrap->kind = Stmt::Kind::If;
                wrap->expr = std::move(guard);
                wrap->synthetic = true;
                wrap->cond_id = s.id != kNoStatement ? s.id : s.cond_id;
                wrap->span = s.span;
                wrap->body = std::make_unique<Stmt>();
                wrap->body->kind = Stmt::Kind::Block;
                auto* outer = sink_;
                sink_ = &wrap->body->stmts;
                frame_.scopes.emplace_back();
                lower_stmt_seq(stmts, i + 1, depth);
                frame_.scopes.pop_back();
                sink_ = outer;
                emit(std::move(wrap));
                return;
            }
        }
    }

    void lower_stmt(const Stmt& s, int depth) {
        current_id_ = s.id != kNoStatement ? s.id : s.cond_id;
        switch (s.kind) {
            case Stmt::Kind::Block:
                lower_block(s, depth);
                return;
            case Stmt::Kind::Decl: {
                if (s.decl_type == Type::CharPtr) {
                    ExprPtr v = lower_expr(*s.expr, depth);
                    frame_.scopes.back()[s.name] = Binding{"", v->text};
                    return;
                }
                ExprPtr init = s.expr ? lower_expr(*s.expr, depth) : make_int(0, s.span);
                std::string v = fresh(s.name);
                emit(make_decl(v, std::move(init), s.id, false, s.span));
                frame_.scopes.back()[s.name] = Binding{v, std::nullopt};
                return;
            }
            case Stmt::Kind::Assign: {
                ExprPtr rhs = lower_expr(*s.expr, depth);
                emit(make_assign(lookup(s.name)->name, std::move(rhs), s.id, false, s.span));
                return;
            }
            case Stmt::Kind::CompoundAssign: {
                const std::string& v = lookup(s.name)->name;
                std::string binop = s.op.substr(0, s.op.size() - 1);
                ExprPtr rhs = make_binary(binop, make_var(v, s.span),
                                          lower_expr(*s.expr, depth), s.span);
                emit(make_assign(v, std::move(rhs), s.id, false, s.span));
                return;
            }
            case Stmt::Kind::If: {
                ExprPtr cond = lower_expr(*s.expr, depth);
                auto node = std::make_unique<Stmt>();
                node->kind = Stmt::Kind::If;
                node->expr = std::move(cond);
                node->cond_id = s.cond_id;
                node->cond_span = s.cond_span;
                node->span = s.span;
                node->body = lower_into_block(*s.body, depth);
                if (s.else_body) node->else_body = lower_into_block(*s.else_body, depth);
                emit(std::move(node));
                return;
            }
            case Stmt::Kind::While:
                lower_loop(s, nullptr, nullptr, depth);
                return;
            case Stmt::Kind::For: {
                frame_.scopes.emplace_back();
                if (s.for_init) lower_stmt(*s.for_init, depth);
                lower_loop(s, s.for_update.get(), nullptr, depth);
                frame_.scopes.pop_back();
                return;
            }
            case Stmt::Kind::Break:
                emit(make_assign(frame_.loops.back().brk_flag, make_int(1), s.id, true, s.span));
                return;
            case Stmt::Kind::Continue:
                emit(make_assign(frame_.loops.back().cont_flag, make_int(1), s.id, true,
                                 s.span));
                return;
            case Stmt::Kind::Return: {
                if (s.expr) {
                    ExprPtr v = lower_expr(*s.expr, depth);
                    emit(make_assign(frame_.ret_val, std::move(v), s.id, false, s.span));
                }
                if (!frame_.ret_flag.empty())
                    emit(make_assign(frame_.ret_flag, make_int(1), s.id, true, s.span));
                return;
            }
            case Stmt::Kind::ExprStmt: {
                ExprPtr v = lower_expr(*s.expr, depth);
                // keep non-trivial expressions so runtime obligations
                // (division, indexing) stay checked
                if (v->kind == Expr::Kind::Var || v->kind == Expr::Kind::IntLit ||
                    v->kind == Expr::Kind::StrLit)
                    return;
                emit(make_decl(fresh("__discard"), std::move(v), s.id, false, s.span));
                return;
            }
            case Stmt::Kind::Assert:
            case Stmt::Kind::Assume: {
                auto node = std::make_unique<Stmt>();
                node->kind = s.kind;
                node->expr = lower_expr(*s.expr, depth);
                node->id = s.id;
                node->span = s.span;
                node->unwind = s.unwind;
                emit(std::move(node));
                return;
            }
        }
    }

    StmtPtr lower_into_block(const Stmt& body, int depth) {
        auto block = std::make_unique<Stmt>();
        block->kind = Stmt::Kind::Block;
        auto* outer = sink_;
        sink_ = &block->stmts;
        if (body.kind == Stmt::Kind::Block) {
            lower_block(body, depth);
        } else {
            lower_stmt(body, depth);
        }
        sink_ = outer;
        return block;
    }

    // Shared lowering for while/for. `update` is the for-update statement.
    void lower_loop(const Stmt& loop, const Stmt* update, const char*, int depth) {
        LoopCtx ctx;
        bool has_jump = contains_loop_jump(*loop.body);
        if (has_jump) {
            ctx.brk_flag = fresh("__brk");
            emit(make_decl(ctx.brk_flag, make_int(0), loop.cond_id, true, loop.span));
        }
        frame_.loops.push_back(ctx);
        unroll_iteration(loop, update, 1, depth);
        frame_.loops.pop_back();
    }

    void unroll_iteration(const Stmt& loop, const Stmt* update, int iter, int depth) {
        // guard residual iterations by "no early exit yet"
        ExprPtr alive = abort_guard(false);
        if (!frame_.loops.back().brk_flag.empty()) {
            ExprPtr nb = make_unary("!", make_var(frame_.loops.back().brk_flag));
            alive = alive ? make_binary("&&", std::move(alive), std::move(nb)) : std::move(nb);
        }

        auto* outer_sink = sink_;
        StmtPtr alive_wrap;
        if (alive) {
            alive_wrap = std::make_unique<Stmt>();
            alive_wrap->kind = Stmt::Kind::If;
            alive_wrap->expr = std::move(alive);
            alive_wrap->synthetic = true;
            alive_wrap->cond_id = loop.cond_id;
            alive_wrap->span = loop.span;
            alive_wrap->body = std::make_unique<Stmt>();
            alive_wrap->body->kind = Stmt::Kind::Block;
            sink_ = &alive_wrap->body->stmts;
        }

        if (iter > k_) {
            // residual iterations: unwinding assertion or blocking assumption
            auto marker = std::make_unique<Stmt>();
            marker->kind =
                policy_ == UnwindPolicy::Fail ? Stmt::Kind::Assert : Stmt::Kind::Assume;
            marker->expr = make_unary("!", lower_expr(*loop.expr, depth), loop.cond_span);
            marker->unwind = true;
            marker->id = loop.cond_id;
            marker->span = loop.cond_span;
            emit(std::move(marker));
        } else {
            ExprPtr cond = lower_expr(*loop.expr, depth);
            auto node = std::make_unique<Stmt>();
            node->kind = Stmt::Kind::If;
            node->expr = std::move(cond);
            node->cond_id = loop.cond_id;
            node->cond_span = loop.cond_span;
            node->span = loop.span;
            node->body = std::make_unique<Stmt>();
            node->body->kind = Stmt::Kind::Block;

            auto* outer2 = sink_;
            sink_ = &node->body->stmts;
            frame_.scopes.emplace_back();

            bool has_continue = contains_loop_jump(*loop.body);
            if (has_continue) {
                frame_.loops.back().cont_flag = fresh("__cont");
                emit(make_decl(frame_.loops.back().cont_flag, make_int(0), loop.cond_id, true,
                               loop.span));
            }

            if (loop.body->kind == Stmt::Kind::Block) {
                lower_block(*loop.body, depth);
            } else {
                lower_stmt(*loop.body, depth);
            }
            frame_.loops.back().cont_flag.clear();

            if (update) {
                // the update runs unless the loop was exited for good
                ExprPtr guard = abort_guard(false);
                if (!frame_.loops.back().brk_flag.empty()) {
                    ExprPtr nb = make_unary("!", make_var(frame_.loops.back().brk_flag));
                    guard = guard ? make_binary("&&", std::move(guard), std::move(nb))
                                  : std::move(nb);
                }
                if (guard) {
                    auto wrap = std::make_unique<Stmt>();
                    wrap->kind = Stmt::Kind::If;
                    wrap->expr = std::move(guard);
                    wrap->synthetic = true;
                    wrap->cond_id = loop.cond_id;
                    wrap->span = loop.span;
                    wrap->body = std::make_unique<Stmt>();
                    wrap->body->kind = Stmt::Kind::Block;
                    auto* outer3 = sink_;
                    sink_ = &wrap->body->stmts;
                    lower_stmt(*update, depth);
                    sink_ = outer3;
                    emit(std::move(wrap));
                } else {
                    lower_stmt(*update, depth);
                }
            }

            unroll_iteration(loop, update, iter + 1, depth);

            frame_.scopes.pop_back();
            sink_ = outer2;
            emit(std::move(node));
        }

        if (alive_wrap) {
            sink_ = outer_sink;
            emit(std::move(alive_wrap));
        }
    }
};

}  // namespace

UnrolledProgram unroll(const CheckedProgram& program, int k, int d, UnwindPolicy policy) {
    return Unroller(program, k, d, policy).run();
}

Program to_program(const UnrolledProgram& u) {
    Program prog;
    FunctionDef main_fn;
    main_fn.name = "main";
    main_fn.return_type = Type::Int;
    main_fn.body = u.body->clone();
    auto ret = std::make_unique<Stmt>();
    ret->kind = Stmt::Kind::Return;
    ret->expr = make_var(u.exit_var);
    main_fn.body->stmts.push_back(std::move(ret));
    prog.functions.push_back(std::move(main_fn));
    return prog;
}

}  // namespace fathom::minic
