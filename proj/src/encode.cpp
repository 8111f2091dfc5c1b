#include "fathom/encode.hpp"

#include <tuple>
#include <utility>

namespace fathom::bmc {

using minic::Expr;
using fathom::Error;
using sat::Lit;

sat::CnfInstance TraceFormula::hard_instance() const {
    sat::CnfInstance inst;
    inst.num_vars = num_vars;
    inst.clauses = clauses;
    return inst;
}

sat::CnfInstance TraceFormula::violation_instance() const {
    sat::CnfInstance inst = hard_instance();
    sat::Clause any_violated;
    for (const Obligation& ob : obligations)
        if (ob.kind != ObKind::Unwind) any_violated.push_back(-ob.holds);
    if (any_violated.empty()) {
        // no obligations: nothing can be violated
        inst.clauses.push_back({1});
        inst.clauses.push_back({-1});
    } else {
        inst.clauses.push_back(std::move(any_violated));
    }
    return inst;
}

std::string TraceFormula::variable_map() const {
    std::string out;
    for (const auto& [name, bits] : bitmap) {
        for (int i = 0; i < 32; ++i) {
            out += "var " + std::to_string(bits[i]) + " = " + name + "[" + std::to_string(i) +
                   "]\n";
        }
    }
    return out;
}

std::int32_t TraceFormula::decode_int(const std::vector<bool>& model,
                                      const std::string& var) const {
    const auto& bits = bitmap.at(var);
    std::uint32_t v = 0;
    for (int i = 0; i < 32; ++i) {
        Lit b = bits[i];
        bool val = b > 0 ? model[static_cast<std::size_t>(b) - 1]
                         : !model[static_cast<std::size_t>(-b) - 1];
        if (val) v |= (1u << i);
    }
    return static_cast<std::int32_t>(v);
}

namespace {

using BV = std::array<Lit, 32>;

class Encoder {
  public:
    Encoder(const minic::SsaProgram& ssa, const EncodeOptions& opts)
        : ssa_(ssa), opts_(opts) {}

    TraceFormula run() {
        true_lit_ = new_var();
        tf_.clauses.push_back({true_lit_});

        for (const auto& def : ssa_.defs) encode_def(def);
        for (const auto& as : ssa_.assumptions) {
            Lit path = path_lit(as.path);
            Lit hold = truthy(encode_expr(*as.expr, path, as.origin));
            tf_.clauses.push_back({-path, hold});
        }
        for (const auto& ob : ssa_.obligations) {
            Lit path = path_lit(ob.path);
            Lit value = truthy(encode_expr(*ob.expr, path, ob.origin));
            Lit holds = mk_or(-path, value);
            tf_.obligations.push_back(
                {holds, ob.origin, ob.unwind ? ObKind::Unwind : ObKind::Assert});
            if (opts_.guarded && !ob.unwind) tf_.clauses.push_back({holds});
        }
        tf_.num_vars = nvars_;
        tf_.nondet_vars = ssa_.nondet_vars;
        tf_.exit_var = ssa_.exit_var;
        return std::move(tf_);
    }

  private:
    const minic::SsaProgram& ssa_;
    EncodeOptions opts_;
    TraceFormula tf_;
    int nvars_ = 0;
    Lit true_lit_ = 0;
    Lit soft_ctx_ = 0;  // healthy variable of the statement being encoded
    std::map<std::string, Lit> truthy_cache_;
    // structural hashing of gates
    std::map<std::pair<Lit, Lit>, Lit> and_cache_;
    std::map<std::pair<Lit, Lit>, Lit> xor_cache_;
    std::map<std::tuple<Lit, Lit, Lit>, Lit> ite_cache_;

    Lit new_var() {
        if (nvars_ >= opts_.var_ceiling)
            throw CapacityError("formula exceeds " + std::to_string(opts_.var_ceiling) +
                                " variables");
        return ++nvars_;
    }

    static bool is_const(Lit l, Lit true_lit) { return l == true_lit || l == -true_lit; }
    bool is_true(Lit l) const { return l == true_lit_; }
    bool is_false(Lit l) const { return l == -true_lit_; }

    // --- gates with constant folding ---

    Lit mk_and(Lit a, Lit b) {
        if (is_false(a) || is_false(b)) return -true_lit_;
        if (is_true(a)) return b;
        if (is_true(b)) return a;
        if (a == b) return a;
        if (a == -b) return -true_lit_;
        if (a > b) std::swap(a, b);
        auto [it, fresh] = and_cache_.try_emplace({a, b}, 0);
        if (!fresh) return it->second;
        Lit g = new_var();
        it->second = g;
        tf_.clauses.push_back({-g, a});
        tf_.clauses.push_back({-g, b});
        tf_.clauses.push_back({g, -a, -b});
        return g;
    }

    Lit mk_or(Lit a, Lit b) { return -mk_and(-a, -b); }

    Lit mk_xor(Lit a, Lit b) {
        if (is_false(a)) return b;
        if (is_false(b)) return a;
        if (is_true(a)) return -b;
        if (is_true(b)) return -a;
        if (a == b) return -true_lit_;
        if (a == -b) return true_lit_;
        // normalize: positive literals, canonical order
        bool flip = false;
        if (a < 0) {
            a = -a;
            flip = !flip;
        }
        if (b < 0) {
            b = -b;
            flip = !flip;
        }
        if (a > b) std::swap(a, b);
        auto [it, fresh] = xor_cache_.try_emplace({a, b}, 0);
        if (!fresh) return flip ? -it->second : it->second;
        Lit g = new_var();
        it->second = g;
        tf_.clauses.push_back({-g, a, b});
        tf_.clauses.push_back({-g, -a, -b});
        tf_.clauses.push_back({g, -a, b});
        tf_.clauses.push_back({g, a, -b});
        return flip ? -g : g;
    }

    Lit mk_ite(Lit c, Lit t, Lit e) {
        if (is_true(c)) return t;
        if (is_false(c)) return e;
        if (t == e) return t;
        if (is_true(t)) return mk_or(c, e);
        if (is_false(t)) return mk_and(-c, e);
        if (is_true(e)) return mk_or(-c, t);
        if (is_false(e)) return mk_and(c, t);
        if (c < 0) {
            c = -c;
            std::swap(t, e);
        }
        auto [it, fresh] = ite_cache_.try_emplace(std::tuple{c, t, e}, 0);
        if (!fresh) return it->second;
        Lit g = new_var();
        it->second = g;
        tf_.clauses.push_back({-g, -c, t});
        tf_.clauses.push_back({-g, c, e});
        tf_.clauses.push_back({g, -c, -t});
        tf_.clauses.push_back({g, c, -e});
        return g;
    }

    Lit big_or(const std::vector<Lit>& xs) {
        Lit acc = -true_lit_;
        for (Lit x : xs) acc = mk_or(acc, x);
        return acc;
    }

    // --- bit vectors ---

    BV bv_const(std::int32_t v) {
        BV out;
        for (int i = 0; i < 32; ++i)
            out[i] = ((static_cast<std::uint32_t>(v) >> i) & 1) ? true_lit_ : -true_lit_;
        return out;
    }

    BV bv_fresh() {
        BV out;
        for (int i = 0; i < 32; ++i) out[i] = new_var();
        return out;
    }

    bool bv_is_const(const BV& a, std::int32_t* out = nullptr) const {
        std::uint32_t v = 0;
        for (int i = 0; i < 32; ++i) {
            if (a[i] == true_lit_) {
                v |= 1u << i;
            } else if (a[i] != -true_lit_) {
                return false;
            }
        }
        if (out) *out = static_cast<std::int32_t>(v);
        return true;
    }

    Lit truthy(const BV& a) {
        std::vector<Lit> bits(a.begin(), a.end());
        return big_or(bits);
    }

    BV bool_to_bv(Lit b) {
        BV out;
        out[0] = b;
        for (int i = 1; i < 32; ++i) out[i] = -true_lit_;
        return out;
    }

    BV bv_add(const BV& a, const BV& b) {
        BV out;
        Lit carry = -true_lit_;
        for (int i = 0; i < 32; ++i) {
            Lit axb = mk_xor(a[i], b[i]);
            out[i] = mk_xor(axb, carry);
            if (i < 31) carry = mk_or(mk_and(a[i], b[i]), mk_and(axb, carry));
        }
        return out;
    }

    BV bv_not(const BV& a) {
        BV out;
        for (int i = 0; i < 32; ++i) out[i] = -a[i];
        return out;
    }

    BV bv_add_one(const BV& a) {
        BV out;
        Lit carry = true_lit_;
        for (int i = 0; i < 32; ++i) {
            out[i] = mk_xor(a[i], carry);
            if (i < 31) carry = mk_and(a[i], carry);
        }
        return out;
    }

    BV bv_neg(const BV& a) { return bv_add_one(bv_not(a)); }

    BV bv_sub(const BV& a, const BV& b) {
        // a + ~b + 1
        BV nb = bv_not(b);
        BV out;
        Lit carry = true_lit_;
        for (int i = 0; i < 32; ++i) {
            Lit axb = mk_xor(a[i], nb[i]);
            out[i] = mk_xor(axb, carry);
            if (i < 31) carry = mk_or(mk_and(a[i], nb[i]), mk_and(axb, carry));
        }
        return out;
    }

    BV bv_ite(Lit c, const BV& t, const BV& e) {
        BV out;
        for (int i = 0; i < 32; ++i) out[i] = mk_ite(c, t[i], e[i]);
        return out;
    }

    BV bv_shl_const(const BV& a, int s) {
        BV out;
        for (int i = 0; i < 32; ++i) out[i] = i >= s ? a[i - s] : -true_lit_;
        return out;
    }

    // bits 1..31 constant-false, i.e. a comparison/logical result
    bool bv_is_bool(const BV& a) const {
        for (int i = 1; i < 32; ++i)
            if (a[i] != -true_lit_) return false;
        return true;
    }

    BV bv_mul(const BV& a, const BV& b) {
        std::int32_t c;
        if (bv_is_const(a, &c)) return bv_mul_const(b, c);
        if (bv_is_const(b, &c)) return bv_mul_const(a, c);
        if (bv_is_bool(a)) return bv_ite(a[0], b, bv_const(0));
        if (bv_is_bool(b)) return bv_ite(b[0], a, bv_const(0));
        BV acc = bv_const(0);
        for (int i = 0; i < 32; ++i) {
            BV addend;
            for (int j = 0; j < 32; ++j)
                addend[j] = j >= i ? mk_and(b[i], a[j - i]) : -true_lit_;
            acc = bv_add(acc, addend);
        }
        return acc;
    }

    BV bv_mul_const(const BV& a, std::int32_t c) {
        std::uint32_t u = static_cast<std::uint32_t>(c);
        BV acc = bv_const(0);
        for (int i = 0; i < 32; ++i)
            if ((u >> i) & 1) acc = bv_add(acc, bv_shl_const(a, i));
        return acc;
    }

    // unsigned restoring division; quotient and remainder
    void bv_udivrem(const BV& a, const BV& b, BV& q, BV& r) {
        BV rem = bv_const(0);
        for (int i = 31; i >= 0; --i) {
            // rem = (rem << 1) | a[i]
            for (int j = 31; j >= 1; --j) rem[j] = rem[j - 1];
            rem[0] = a[i];
            Lit ge = -bv_ult(rem, b);  // rem >= b
            BV diff = bv_sub(rem, b);
            rem = bv_ite(ge, diff, rem);
            q[i] = ge;
        }
        r = rem;
    }

    Lit bv_ult(const BV& a, const BV& b) {
        Lit acc = -true_lit_;
        for (int i = 0; i < 32; ++i) {
            Lit eq = -mk_xor(a[i], b[i]);
            Lit lt = mk_and(-a[i], b[i]);
            acc = mk_ite(eq, acc, lt);
        }
        return acc;
    }

    Lit bv_slt(const BV& a, const BV& b) {
        BV af = a, bf = b;
        af[31] = -af[31];  // flip sign bits: signed compare via unsigned
        bf[31] = -bf[31];
        return bv_ult(af, bf);
    }

    Lit bv_eq(const BV& a, const BV& b) {
        Lit acc = true_lit_;
        for (int i = 0; i < 32; ++i) acc = mk_and(acc, -mk_xor(a[i], b[i]));
        return acc;
    }

    BV bv_shift(const BV& a, const BV& amount, bool left, bool arithmetic) {
        // barrel shifter over the low 5 bits of the amount
        BV cur = a;
        for (int stage = 0; stage < 5; ++stage) {
            int s = 1 << stage;
            BV shifted;
            for (int i = 0; i < 32; ++i) {
                if (left) {
                    shifted[i] = i >= s ? cur[i - s] : -true_lit_;
                } else {
                    shifted[i] =
                        i + s < 32 ? cur[i + s] : (arithmetic ? cur[31] : -true_lit_);
                }
            }
            cur = bv_ite(amount[stage], shifted, cur);
        }
        return cur;
    }

    // --- expressions ---

    BV encode_expr(const Expr& e, Lit guard, minic::StatementId origin) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return bv_const(static_cast<std::int32_t>(e.int_value));
            case Expr::Kind::Var:
                return tf_.bitmap.at(e.text);
            case Expr::Kind::Cast:
                return encode_expr(*e.args[0], guard, origin);
            case Expr::Kind::Unary: {
                BV a = encode_expr(*e.args[0], guard, origin);
                if (e.text == "-") return bv_neg(a);
                if (e.text == "!") return bool_to_bv(-truthy(a));
                return bv_not(a);
            }
            case Expr::Kind::Binary:
                return encode_binary(e, guard, origin);
            case Expr::Kind::Ternary: {
                Lit c = truthy(encode_expr(*e.args[0], guard, origin));
                BV t = encode_expr(*e.args[1], mk_and(guard, c), origin);
                BV f = encode_expr(*e.args[2], mk_and(guard, -c), origin);
                return bv_ite(c, t, f);
            }
            case Expr::Kind::Index: {
                const Expr& base = *e.args[0];
                if (base.kind != Expr::Kind::StrLit)
                    throw Error(e.span, "unresolved string in verifier encoding");
                BV idx = encode_expr(*e.args[1], guard, origin);
                std::int32_t len = static_cast<std::int32_t>(base.text.size());
                // reading the terminating zero byte is allowed: idx <=u len
                Lit ok = -bv_ult(bv_const(len), idx);
                emit_runtime_obligation(mk_or(-guard, ok), origin, ObKind::OutOfBounds);
                BV result = bv_const(0);
                for (std::int32_t i = len - 1; i >= 0; --i) {
                    Lit hit = bv_eq(idx, bv_const(i));
                    result = bv_ite(hit, bv_const(static_cast<unsigned char>(base.text[i])),
                                    result);
                }
                return result;
            }
            case Expr::Kind::Call: {
                if (e.text == "abs") {
                    BV a = encode_expr(*e.args[0], guard, origin);
                    return bv_ite(bv_slt(a, bv_const(0)), bv_neg(a), a);
                }
                if (e.text == "min" || e.text == "max") {
                    BV a = encode_expr(*e.args[0], guard, origin);
                    BV b = encode_expr(*e.args[1], guard, origin);
                    Lit lt = bv_slt(a, b);
                    return e.text == "min" ? bv_ite(lt, a, b) : bv_ite(lt, b, a);
                }
                throw Error(e.span, "unexpected call '" + e.text + "' in encoding");
            }
            case Expr::Kind::StrLit:
                throw Error(e.span, "string value outside an index expression");
        }
        return bv_const(0);
    }

    BV encode_binary(const Expr& e, Lit guard, minic::StatementId origin) {
        const std::string& op = e.text;
        if (op == "&&") {
            Lit a = truthy(encode_expr(*e.args[0], guard, origin));
            Lit b = truthy(encode_expr(*e.args[1], mk_and(guard, a), origin));
            return bool_to_bv(mk_and(a, b));
        }
        if (op == "||") {
            Lit a = truthy(encode_expr(*e.args[0], guard, origin));
            Lit b = truthy(encode_expr(*e.args[1], mk_and(guard, -a), origin));
            return bool_to_bv(mk_or(a, b));
        }
        BV a = encode_expr(*e.args[0], guard, origin);
        BV b = encode_expr(*e.args[1], guard, origin);
        if (op == "+") return bv_add(a, b);
        if (op == "-") return bv_sub(a, b);
        if (op == "*") return bv_mul(a, b);
        if (op == "/" || op == "%") {
            Lit nz = truthy(b);
            emit_runtime_obligation(mk_or(-guard, nz), origin, ObKind::DivByZero);
            std::int32_t divisor;
            if (bv_is_const(b, &divisor) && divisor > 0 &&
                (static_cast<std::uint32_t>(divisor) &
                 (static_cast<std::uint32_t>(divisor) - 1)) == 0) {
                // truncating division by 2^k: bias negative dividends
                int k = 0;
                while ((divisor >> k) != 1) k++;
                BV bias;
                for (int i = 0; i < 32; ++i) bias[i] = i < k ? a[31] : -true_lit_;
                BV q_full = bv_add(a, bias);
                BV q;
                for (int i = 0; i < 32; ++i)
                    q[i] = i + k < 32 ? q_full[i + k] : q_full[31];
                if (op == "/") return q;
                return bv_sub(a, bv_shl_const(q, k));
            }
            Lit sa = a[31], sb = b[31];
            BV ua = bv_ite(sa, bv_neg(a), a);
            BV ub = bv_ite(sb, bv_neg(b), b);
            BV q = bv_const(0), r = bv_const(0);
            bv_udivrem(ua, ub, q, r);
            if (op == "/") return bv_ite(mk_xor(sa, sb), bv_neg(q), q);
            return bv_ite(sa, bv_neg(r), r);  // remainder sign follows dividend
        }
        if (op == "<") return bool_to_bv(bv_slt(a, b));
        if (op == ">") return bool_to_bv(bv_slt(b, a));
        if (op == "<=") return bool_to_bv(-bv_slt(b, a));
        if (op == ">=") return bool_to_bv(-bv_slt(a, b));
        if (op == "==") return bool_to_bv(bv_eq(a, b));
        if (op == "!=") return bool_to_bv(-bv_eq(a, b));
        if (op == "&" || op == "|" || op == "^") {
            BV out;
            for (int i = 0; i < 32; ++i)
                out[i] = op == "&"   ? mk_and(a[i], b[i])
                         : op == "|" ? mk_or(a[i], b[i])
                                     : mk_xor(a[i], b[i]);
            return out;
        }
        if (op == "<<") return bv_shift(a, b, true, false);
        if (op == ">>") return bv_shift(a, b, false, true);
        throw Error(e.span, "unknown operator '" + op + "'");
    }

    // Runtime obligations (division, indexing) are recorded for verdict
    // extraction; when localising they are forced to hold, relaxable
    // together with the statement that contains them.
    void emit_runtime_obligation(Lit holds, minic::StatementId origin, ObKind kind) {
        if (is_true(holds)) return;  // can never be violated
        tf_.obligations.push_back({holds, origin, kind});
        if (!opts_.guarded) return;
        if (soft_ctx_ != 0) {
            tf_.clauses.push_back({-soft_ctx_, holds});
        } else {
            tf_.clauses.push_back({holds});
        }
    }

    // --- paths and definitions ---

    Lit path_lit(const minic::ExprPtr& path) {
        if (!path) return true_lit_;
        return path_expr_lit(*path);
    }

    Lit path_expr_lit(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::Var: {
                auto it = truthy_cache_.find(e.text);
                if (it != truthy_cache_.end()) return it->second;
                Lit t = truthy(tf_.bitmap.at(e.text));
                truthy_cache_[e.text] = t;
                return t;
            }
            case Expr::Kind::Unary:
                return -path_expr_lit(*e.args[0]);
            case Expr::Kind::Binary:
                return mk_and(path_expr_lit(*e.args[0]), path_expr_lit(*e.args[1]));
            default:
                throw Error(e.span, "malformed path expression");
        }
    }

    bool origin_guardable(const minic::SsaDef& def) const {
        if (!opts_.guarded || def.control || !def.guardable) return false;
        if (!opts_.program) return false;
        if (def.origin == minic::kNoStatement) return false;
        return opts_.program->info(def.origin).guardable;
    }

    Lit guard_for(minic::StatementId id) {
        auto it = tf_.guards.find(id);
        if (it != tf_.guards.end()) return it->second;
        Lit h = new_var();
        tf_.guards[id] = h;
        tf_.soft.push_back({{h}, 1});
        return h;
    }

    void bind(const BV& lhs, const BV& rhs, Lit h, Lit g) {
        // (h && g) -> lhs = rhs, emitted bitwise
        for (int i = 0; i < 32; ++i) {
            sat::Clause c1{-lhs[i], rhs[i]};
            sat::Clause c2{lhs[i], -rhs[i]};
            if (g != 0 && !is_true(g)) {
                c1.insert(c1.begin(), -g);
                c2.insert(c2.begin(), -g);
            }
            if (h != 0) {
                c1.insert(c1.begin(), -h);
                c2.insert(c2.begin(), -h);
            }
            tf_.clauses.push_back(std::move(c1));
            tf_.clauses.push_back(std::move(c2));
        }
    }

    void encode_def(const minic::SsaDef& def) {
        bool nondet = def.rhs->kind == Expr::Kind::Call && def.rhs->text == "nondet_int";
        if (nondet) {
            BV bits = bv_fresh();
            tf_.bitmap[def.var] = bits;
            return;
        }

        Lit path = path_lit(def.path);
        if (def.origin != minic::kNoStatement && !def.control)
            tf_.path_probes.push_back({def.origin, path});

        Lit h = origin_guardable(def) ? guard_for(def.origin) : 0;
        soft_ctx_ = h;
        BV rhs = encode_expr(*def.rhs, path, def.origin);
        soft_ctx_ = 0;

        if (def.prev.empty()) {
            if (h == 0) {
                // unconditional: reuse rhs bits directly
                tf_.bitmap[def.var] = rhs;
            } else {
                BV lhs = bv_fresh();
                tf_.bitmap[def.var] = lhs;
                bind(lhs, rhs, h, 0);
            }
            return;
        }

        const BV& prev = tf_.bitmap.at(def.prev);
        if (is_true(path) && h == 0) {
            // unconditionally executed: alias the right-hand side
            tf_.bitmap[def.var] = rhs;
            return;
        }
        BV lhs = bv_fresh();
        tf_.bitmap[def.var] = lhs;
        if (!is_true(path)) {
            // not executed: copy previous version (always hard)
            for (int i = 0; i < 32; ++i) {
                tf_.clauses.push_back({path, -lhs[i], prev[i]});
                tf_.clauses.push_back({path, lhs[i], -prev[i]});
            }
        }
        // executed: take the right-hand side (guarded when localising)
        bind(lhs, rhs, h, path);
    }
};

}  // namespace

TraceFormula encode_cnf(const minic::SsaProgram& ssa, const EncodeOptions& opts) {
    return Encoder(ssa, opts).run();
}

}  // namespace fathom::bmc
