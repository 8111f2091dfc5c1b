#include "fathom/bmc.hpp"

#include "fathom/cdcl.hpp"

namespace fathom::bmc {

std::string to_string(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Verified: return "VERIFIED";
        case Verdict::Kind::Violated: return "VIOLATED";
        case Verdict::Kind::BoundExceeded: return "BOUND EXCEEDED";
    }
    return "?";
}

TraceFormula encode_program(const minic::CheckedProgram& program, const BmcOptions& opts) {
    minic::UnrolledProgram u =
        minic::unroll(program, opts.unwind, opts.inline_depth, opts.policy);
    minic::SsaProgram ssa = minic::to_ssa(u);
    EncodeOptions eo;
    eo.var_ceiling = opts.var_ceiling;
    return encode_cnf(ssa, eo);
}

namespace {

CounterexampleTrace extract_trace(const TraceFormula& tf, const std::vector<bool>& model) {
    CounterexampleTrace trace;
    for (const std::string& name : tf.nondet_vars)
        trace.inputs.push_back({name, tf.decode_int(model, name)});
    auto lit_true = [&](sat::Lit l) {
        return l > 0 ? model[static_cast<std::size_t>(l) - 1]
                     : !model[static_cast<std::size_t>(-l) - 1];
    };
    for (const auto& [origin, path] : tf.path_probes) {
        if (!lit_true(path)) continue;
        if (!trace.path.empty() && trace.path.back() == origin) continue;
        trace.path.push_back(origin);
    }
    for (const auto& ob : tf.obligations) {
        if (ob.kind == ObKind::Unwind) continue;
        if (!lit_true(ob.holds)) {
            trace.violated = ob.origin;
            trace.kind = ob.kind;
            break;
        }
    }
    return trace;
}

}  // namespace

Verdict check_bounded(const minic::CheckedProgram& program, const BmcOptions& opts) {
    TraceFormula tf = encode_program(program, opts);

    Verdict verdict;
    verdict.bound = opts.unwind;

    // Query A: a real obligation fails on a path that stays within bounds.
    {
        sat::Solver solver;
        solver.set_conflict_budget(opts.conflict_budget);
        solver.ensure_vars(tf.num_vars);
        for (const auto& c : tf.clauses) solver.add_clause(c);
        sat::Clause any_violated;
        for (const auto& ob : tf.obligations) {
            if (ob.kind == ObKind::Unwind) {
                solver.add_clause({ob.holds});  // stay within bounds
            } else {
                any_violated.push_back(-ob.holds);
            }
        }
        if (!any_violated.empty()) {
            solver.add_clause(any_violated);
            sat::SolveResult r = solver.solve();
            if (r.status == sat::SolveStatus::ResourceLimit)
                throw CapacityError("SAT conflict budget exceeded during verification");
            if (r.sat()) {
                verdict.kind = Verdict::Kind::Violated;
                verdict.trace = extract_trace(tf, r.model);
                return verdict;
            }
        }
    }

    // Query B: only unwinding obligations can fail -> insufficient bound.
    if (opts.policy == minic::UnwindPolicy::Fail) {
        sat::Solver solver;
        solver.set_conflict_budget(opts.conflict_budget);
        solver.ensure_vars(tf.num_vars);
        for (const auto& c : tf.clauses) solver.add_clause(c);
        sat::Clause any_unwind;
        minic::StatementId first_origin = minic::kNoStatement;
        for (const auto& ob : tf.obligations)
            if (ob.kind == ObKind::Unwind) {
                any_unwind.push_back(-ob.holds);
                if (first_origin == minic::kNoStatement) first_origin = ob.origin;
            }
        if (!any_unwind.empty()) {
            solver.add_clause(any_unwind);
            sat::SolveResult r = solver.solve();
            if (r.status == sat::SolveStatus::ResourceLimit)
                throw CapacityError("SAT conflict budget exceeded during verification");
            if (r.sat()) {
                verdict.kind = Verdict::Kind::BoundExceeded;
                // report the loop whose unwinding assertion fired
                for (const auto& ob : tf.obligations) {
                    if (ob.kind != ObKind::Unwind) continue;
                    sat::Lit l = ob.holds;
                    bool holds = l > 0 ? r.model[static_cast<std::size_t>(l) - 1]
                                       : !r.model[static_cast<std::size_t>(-l) - 1];
                    if (!holds) {
                        verdict.loop_span = program.info(ob.origin).span;
                        break;
                    }
                }
                return verdict;
            }
        }
    }

    verdict.kind = Verdict::Kind::Verified;
    return verdict;
}

}  // namespace fathom::bmc
