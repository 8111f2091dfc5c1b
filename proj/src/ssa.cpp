#include "fathom/ssa.hpp"

namespace fathom::minic {

namespace {

std::string versioned(const std::string& base, int version) {
    return base + "#" + std::to_string(version);
}

class SsaBuilder {
  public:
    explicit SsaBuilder(const UnrolledProgram& u) : u_(u) {}

    SsaProgram run() {
        walk_block(*u_.body, nullptr);
        out_.exit_var = versioned(u_.exit_var, env_.at(u_.exit_var));
        out_.policy = u_.policy;
        return std::move(out_);
    }

  private:
    const UnrolledProgram& u_;
    SsaProgram out_;
    std::map<std::string, int> env_;           // base -> current version
    std::map<std::string, int> next_version_;  // base -> next free version
    int guard_counter_ = 0;

    ExprPtr version_expr(const Expr& e) {
        if (e.kind == Expr::Kind::Var) {
            auto v = make_var(versioned(e.text, env_.at(e.text)), e.span);
            v->type = e.type;
            return v;
        }
        auto out = std::make_unique<Expr>();
        out->kind = e.kind;
        out->span = e.span;
        out->int_value = e.int_value;
        out->text = e.text;
        out->type = e.type;
        for (const auto& a : e.args) out->args.push_back(version_expr(*a));
        return out;
    }

    static ExprPtr clone_or_null(const ExprPtr& e) { return e ? e->clone() : nullptr; }

    int bump(const std::string& base) {
        int v = next_version_.count(base) ? next_version_[base] : 0;
        next_version_[base] = v + 1;
        env_[base] = v;
        return v;
    }

    void walk_block(const Stmt& block, const ExprPtr& path) {
        for (const auto& s : block.stmts) walk(*s, path);
    }

    void walk(const Stmt& s, const ExprPtr& path) {
        switch (s.kind) {
            case Stmt::Kind::Block:
                walk_block(s, path);
                return;
            case Stmt::Kind::Decl: {
                bool is_nondet = s.expr->kind == Expr::Kind::Call &&
                                 s.expr->text == "nondet_int";
                ExprPtr rhs = is_nondet ? s.expr->clone() : version_expr(*s.expr);
                int v = bump(s.name);
                SsaDef def;
                def.var = versioned(s.name, v);
                def.rhs = std::move(rhs);
                def.path = clone_or_null(path);
                def.origin = s.id;
                def.control = s.synthetic || is_nondet;
                def.guardable = !def.control && s.id != kNoStatement;
                if (is_nondet) out_.nondet_vars.push_back(def.var);
                out_.defs.push_back(std::move(def));
                return;
            }
            case Stmt::Kind::Assign: {
                ExprPtr rhs = version_expr(*s.expr);
                int prev = env_.at(s.name);
                int v = bump(s.name);
                SsaDef def;
                def.var = versioned(s.name, v);
                def.rhs = std::move(rhs);
                def.prev = versioned(s.name, prev);
                def.path = clone_or_null(path);
                def.origin = s.id;
                def.control = s.synthetic;
                def.guardable = !s.synthetic && s.id != kNoStatement;
                out_.defs.push_back(std::move(def));
                return;
            }
            case Stmt::Kind::If: {
                // branch decision variable
                std::string gbase = "__g" + std::to_string(guard_counter_++);
                ExprPtr cond = version_expr(*s.expr);
                int gv = bump(gbase);
                SsaDef gdef;
                gdef.var = versioned(gbase, gv);
                gdef.rhs = std::move(cond);
                gdef.path = clone_or_null(path);
                gdef.origin = s.cond_id;
                gdef.control = s.synthetic;
                gdef.guardable = !s.synthetic && s.cond_id != kNoStatement;
                std::string gname = gdef.var;
                out_.defs.push_back(std::move(gdef));

                ExprPtr then_path = make_var(gname);
                if (path) then_path = make_binary("&&", path->clone(), std::move(then_path));
                ExprPtr else_path = make_unary("!", make_var(gname));
                if (path) else_path = make_binary("&&", path->clone(), std::move(else_path));

                auto before = env_;
                walk(*s.body, then_path);
                auto after_then = env_;
                env_ = before;
                if (s.else_body) walk(*s.else_body, else_path);
                auto after_else = env_;

                // merge modified variables
                for (const auto& [base, tv] : after_then) {
                    auto it = after_else.find(base);
                    if (it == after_else.end()) continue;  // branch-local
                    int ev = it->second;
                    if (tv == ev) continue;
                    int m = bump(base);
                    SsaDef merge;
                    merge.var = versioned(base, m);
                    merge.rhs = make_ternary(make_var(gname), make_var(versioned(base, tv)),
                                             make_var(versioned(base, ev)));
                    merge.control = true;
                    out_.defs.push_back(std::move(merge));
                }
                return;
            }
            case Stmt::Kind::Assert: {
                SsaObligation ob;
                ob.expr = version_expr(*s.expr);
                ob.path = clone_or_null(path);
                ob.origin = s.id;
                ob.unwind = s.unwind;
                out_.obligations.push_back(std::move(ob));
                return;
            }
            case Stmt::Kind::Assume: {
                SsaAssumption as;
                as.expr = version_expr(*s.expr);
                as.path = clone_or_null(path);
                as.origin = s.id;
                as.unwind = s.unwind;
                out_.assumptions.push_back(std::move(as));
                return;
            }
            default:
                throw Error(s.span, "unexpected statement kind after unrolling");
        }
    }
};

}  // namespace

SsaProgram to_ssa(const UnrolledProgram& u) {
    return SsaBuilder(u).run();
}

}  // namespace fathom::minic
