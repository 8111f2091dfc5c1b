#include "fathom/interp.hpp"

#include <chrono>
#include <map>

namespace fathom::minic {

std::int32_t wrap_add(std::int32_t a, std::int32_t b) {
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) +
                                     static_cast<std::uint32_t>(b));
}
std::int32_t wrap_sub(std::int32_t a, std::int32_t b) {
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) -
                                     static_cast<std::uint32_t>(b));
}
std::int32_t wrap_mul(std::int32_t a, std::int32_t b) {
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) *
                                     static_cast<std::uint32_t>(b));
}
std::int32_t wrap_neg(std::int32_t a) {
    return static_cast<std::int32_t>(0u - static_cast<std::uint32_t>(a));
}
std::int32_t trunc_div(std::int32_t a, std::int32_t b) {
    return static_cast<std::int32_t>(
        static_cast<std::uint64_t>(static_cast<std::int64_t>(a) / static_cast<std::int64_t>(b)));
}
std::int32_t trunc_rem(std::int32_t a, std::int32_t b) {
    return static_cast<std::int32_t>(
        static_cast<std::uint64_t>(static_cast<std::int64_t>(a) % static_cast<std::int64_t>(b)));
}
std::int32_t shift_left(std::int32_t a, std::int32_t s) {
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(a)
                                     << (static_cast<std::uint32_t>(s) & 31));
}
std::int32_t shift_right(std::int32_t a, std::int32_t s) {
    return a >> (static_cast<std::uint32_t>(s) & 31);  // arithmetic since C++20
}

std::string to_string(const ExecutionOutcome& o) {
    switch (o.status) {
        case ExecutionOutcome::Status::Completed:
            return "completed(" + std::to_string(o.exit_value) + ")";
        case ExecutionOutcome::Status::AssertionViolated:
            return "assertion violated at line " + std::to_string(o.span.line);
        case ExecutionOutcome::Status::AssumeViolated:
            return "assume violated at line " + std::to_string(o.span.line);
        case ExecutionOutcome::Status::RuntimeError:
            switch (o.error) {
                case ExecutionOutcome::ErrorKind::DivByZero:
                    return "division by zero at line " + std::to_string(o.span.line);
                case ExecutionOutcome::ErrorKind::OutOfBounds:
                    return "out-of-bounds access at line " + std::to_string(o.span.line);
                case ExecutionOutcome::ErrorKind::StepLimit:
                    return "step/time limit exceeded";
                default:
                    break;
            }
            return "runtime error";
    }
    return "?";
}

namespace {

// Non-error control transfers and program-level stops, as exceptions.
struct BreakSignal {};
struct ContinueSignal {};
struct ReturnSignal {
    Value value;
};
struct Stop {
    ExecutionOutcome outcome;
};

class Interp {
  public:
    Interp(const CheckedProgram& program, const InterpLimits& limits)
        : prog_(program), limits_(limits),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(limits.wall_timeout_ms)) {}

    ExecutionOutcome run_main() {
        const FunctionDef* fn = prog_.program.find_function("main");
        ExecutionOutcome out;
        try {
            Value v = call(*fn, {});
            out.status = ExecutionOutcome::Status::Completed;
            out.exit_value = v.kind == Value::Kind::Int ? v.i : 0;
        } catch (const Stop& stop) {
            out = stop.outcome;
        }
        out.steps = steps_;
        return out;
    }

    Value run_call(const std::string& name, const std::vector<Value>& args) {
        const FunctionDef* fn = prog_.program.find_function(name);
        if (!fn) throw UndefinedSymbol(SourceSpan{}, name);
        if (fn->params.size() != args.size())
            throw UnsupportedError(fn->span, "argument count mismatch in call_function");
        return call(*fn, args);
    }

  private:
    const CheckedProgram& prog_;
    InterpLimits limits_;
    std::chrono::steady_clock::time_point deadline_;
    long long steps_ = 0;

    using Scope = std::map<std::string, Value>;
    std::vector<std::vector<Scope>> frames_;

    [[noreturn]] void stop(ExecutionOutcome::Status status, ExecutionOutcome::ErrorKind err,
                           SourceSpan span) {
        ExecutionOutcome o;
        o.status = status;
        o.error = err;
        o.span = span;
        throw Stop{o};
    }

    void tick(const SourceSpan& span) {
        if (++steps_ > limits_.step_limit)
            stop(ExecutionOutcome::Status::RuntimeError, ExecutionOutcome::ErrorKind::StepLimit,
                 span);
        if ((steps_ & 0x1fff) == 0 && std::chrono::steady_clock::now() > deadline_)
            stop(ExecutionOutcome::Status::RuntimeError, ExecutionOutcome::ErrorKind::StepLimit,
                 span);
    }

    Value* lookup(const std::string& name) {
        auto& scopes = frames_.back();
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto f = it->find(name);
            if (f != it->end()) return &f->second;
        }
        return nullptr;
    }

    Value call(const FunctionDef& fn, const std::vector<Value>& args) {
        frames_.emplace_back();
        frames_.back().emplace_back();
        for (std::size_t i = 0; i < fn.params.size(); ++i)
            frames_.back().back()[fn.params[i].name] = args[i];
        Value result = Value::void_value();
        try {
            exec_block(*fn.body);
        } catch (const ReturnSignal& ret) {
            result = ret.value;
        }
        frames_.pop_back();
        return result;
    }

    void exec_block(const Stmt& block) {
        frames_.back().emplace_back();
        for (const auto& s : block.stmts) exec(*s);
        frames_.back().pop_back();
    }

    void exec(const Stmt& s) {
        tick(s.span);
        switch (s.kind) {
            case Stmt::Kind::Block:
                exec_block(s);
                return;
            case Stmt::Kind::Decl: {
                Value v = s.expr ? eval(*s.expr) : Value::of_int(0);
                frames_.back().back()[s.name] = v;
                return;
            }
            case Stmt::Kind::Assign: {
                Value v = eval(*s.expr);
                *lookup(s.name) = v;
                return;
            }
            case Stmt::Kind::CompoundAssign: {
                Value* slot = lookup(s.name);
                std::int32_t rhs = eval(*s.expr).i;
                slot->i = apply_binop(s.op.substr(0, s.op.size() - 1), slot->i, rhs, s.span);
                return;
            }
            case Stmt::Kind::If:
                if (eval(*s.expr).i != 0) {
                    exec(*s.body);
                } else if (s.else_body) {
                    exec(*s.else_body);
                }
                return;
            case Stmt::Kind::While:
                while (true) {
                    tick(s.span);
                    if (eval(*s.expr).i == 0) break;
                    try {
                        exec(*s.body);
                    } catch (const BreakSignal&) {
                        break;
                    } catch (const ContinueSignal&) {
                    }
                }
                return;
            case Stmt::Kind::For: {
                frames_.back().emplace_back();  // for-init scope
                if (s.for_init) exec(*s.for_init);
                while (true) {
                    tick(s.span);
                    if (eval(*s.expr).i == 0) break;
                    try {
                        exec(*s.body);
                    } catch (const BreakSignal&) {
                        break;
                    } catch (const ContinueSignal&) {
                    }
                    if (s.for_update) exec(*s.for_update);
                }
                frames_.back().pop_back();
                return;
            }
            case Stmt::Kind::Break:
                throw BreakSignal{};
            case Stmt::Kind::Continue:
                throw ContinueSignal{};
            case Stmt::Kind::Return:
                throw ReturnSignal{s.expr ? eval(*s.expr) : Value::void_value()};
            case Stmt::Kind::ExprStmt:
                eval(*s.expr);
                return;
            case Stmt::Kind::Assert:
                if (eval(*s.expr).i == 0)
                    stop(ExecutionOutcome::Status::AssertionViolated,
                         ExecutionOutcome::ErrorKind::None, s.span);
                return;
            case Stmt::Kind::Assume:
                if (eval(*s.expr).i == 0)
                    stop(ExecutionOutcome::Status::AssumeViolated,
                         ExecutionOutcome::ErrorKind::None, s.span);
                return;
        }
    }

    std::int32_t apply_binop(const std::string& op, std::int32_t a, std::int32_t b,
                             const SourceSpan& span) {
        if (op == "+") return wrap_add(a, b);
        if (op == "-") return wrap_sub(a, b);
        if (op == "*") return wrap_mul(a, b);
        if (op == "/" || op == "%") {
            if (b == 0)
                stop(ExecutionOutcome::Status::RuntimeError,
                     ExecutionOutcome::ErrorKind::DivByZero, span);
            return op == "/" ? trunc_div(a, b) : trunc_rem(a, b);
        }
        if (op == "<") return a < b;
        if (op == "<=") return a <= b;
        if (op == ">") return a > b;
        if (op == ">=") return a >= b;
        if (op == "==") return a == b;
        if (op == "!=") return a != b;
        if (op == "&") return a & b;
        if (op == "|") return a | b;
        if (op == "^") return a ^ b;
        if (op == "<<") return shift_left(a, b);
        if (op == ">>") return shift_right(a, b);
        throw UnsupportedError(span, "unknown operator '" + op + "'");
    }

    Value eval(const Expr& e) {
        tick(e.span);
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return Value::of_int(static_cast<std::int32_t>(e.int_value));
            case Expr::Kind::StrLit:
                return Value::of_str(e.text);
            case Expr::Kind::Var:
                return *lookup_checked(e);
            case Expr::Kind::Index: {
                Value base = eval(*e.args[0]);
                std::int32_t idx = eval(*e.args[1]).i;
                const std::string& bytes = *base.str;
                if (idx < 0 || static_cast<std::size_t>(idx) > bytes.size())
                    stop(ExecutionOutcome::Status::RuntimeError,
                         ExecutionOutcome::ErrorKind::OutOfBounds, e.span);
                return Value::of_int(static_cast<std::size_t>(idx) == bytes.size()
                                         ? 0
                                         : static_cast<unsigned char>(bytes[idx]));
            }
            case Expr::Kind::Unary: {
                std::int32_t a = eval(*e.args[0]).i;
                if (e.text == "-") return Value::of_int(wrap_neg(a));
                if (e.text == "!") return Value::of_int(a == 0);
                return Value::of_int(~a);
            }
            case Expr::Kind::Binary: {
                if (e.text == "&&") {
                    if (eval(*e.args[0]).i == 0) return Value::of_int(0);
                    return Value::of_int(eval(*e.args[1]).i != 0);
                }
                if (e.text == "||") {
                    if (eval(*e.args[0]).i != 0) return Value::of_int(1);
                    return Value::of_int(eval(*e.args[1]).i != 0);
                }
                std::int32_t a = eval(*e.args[0]).i;
                std::int32_t b = eval(*e.args[1]).i;
                return Value::of_int(apply_binop(e.text, a, b, e.span));
            }
            case Expr::Kind::Ternary:
                return eval(*e.args[0]).i != 0 ? eval(*e.args[1]) : eval(*e.args[2]);
            case Expr::Kind::Cast:
                return eval(*e.args[0]);
            case Expr::Kind::Call:
                return eval_call(e);
        }
        return Value::void_value();
    }

    Value* lookup_checked(const Expr& e) {
        Value* v = lookup(e.text);
        if (!v) throw UndefinedSymbol(e.span, e.text);
        return v;
    }

    Value eval_call(const Expr& e) {
        const std::string& name = e.text;
        if (name == "printf") return Value::of_int(0);
        if (name == "nondet_int")
            throw UnsupportedError(e.span,
                                   "nondet_int is only available under the verifier");
        if (name == "abs") {
            std::int32_t a = eval(*e.args[0]).i;
            return Value::of_int(a < 0 ? wrap_neg(a) : a);
        }
        if (name == "min" || name == "max") {
            std::int32_t a = eval(*e.args[0]).i;
            std::int32_t b = eval(*e.args[1]).i;
            return Value::of_int(name == "min" ? (a < b ? a : b) : (a > b ? a : b));
        }
        const FunctionDef* fn = prog_.program.find_function(name);
        std::vector<Value> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(eval(*a));
        return call(*fn, args);
    }
};

}  // namespace

ExecutionOutcome interpret_main(const CheckedProgram& program, const InterpLimits& limits) {
    return Interp(program, limits).run_main();
}

Value call_function(const CheckedProgram& program, const std::string& name,
                    const std::vector<Value>& args, const InterpLimits& limits) {
    Interp interp(program, limits);
    try {
        return interp.run_call(name, args);
    } catch (const Stop& stop) {
        throw Error(stop.outcome.span, to_string(stop.outcome));
    }
}

}  // namespace fathom::minic
