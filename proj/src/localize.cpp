#include "fathom/localize.hpp"

#include <algorithm>
#include <set>

#include "fathom/cdcl.hpp"

namespace fathom::fl {

using minic::StatementId;

sat::PartialMaxSatInstance GuardedFormula::maxsat_instance() const {
    sat::PartialMaxSatInstance inst;
    inst.hard.num_vars = tf.num_vars;
    inst.hard.clauses = tf.clauses;
    inst.soft = tf.soft;
    return inst;
}

namespace {

void collect_vars(const minic::Expr& e, std::vector<std::string>& out) {
    if (e.kind == minic::Expr::Kind::Var) out.push_back(e.text);
    for (const auto& a : e.args) collect_vars(*a, out);
}

// Origins of the final (non-control) writes feeding each assertion, found
// by walking back through merges, copies and previous-version links.
std::vector<StatementId> find_sinks(const minic::SsaProgram& ssa) {
    std::map<std::string, const minic::SsaDef*> by_name;
    for (const auto& d : ssa.defs) by_name[d.var] = &d;

    std::set<StatementId> sinks;
    std::set<std::string> visited;
    std::vector<std::string> work;
    for (const auto& ob : ssa.obligations) {
        if (ob.unwind) continue;
        collect_vars(*ob.expr, work);
    }
    while (!work.empty()) {
        std::string name = std::move(work.back());
        work.pop_back();
        if (!visited.insert(name).second) continue;
        auto it = by_name.find(name);
        if (it == by_name.end()) continue;
        const minic::SsaDef* def = it->second;
        if (def->control) {
            collect_vars(*def->rhs, work);
            if (!def->prev.empty()) work.push_back(def->prev);
            continue;
        }
        if (def->origin != minic::kNoStatement) sinks.insert(def->origin);
        if (!def->prev.empty()) work.push_back(def->prev);
    }
    return {sinks.begin(), sinks.end()};
}

}  // namespace

GuardedFormula encode_guarded(const minic::CheckedProgram& program,
                              const LocalizeOptions& opts) {
    minic::UnrolledProgram u =
        minic::unroll(program, opts.unwind, opts.inline_depth, minic::UnwindPolicy::Assume);
    minic::SsaProgram ssa = minic::to_ssa(u);

    GuardedFormula g;
    g.program = &program;
    g.sink_ids = find_sinks(ssa);

    bmc::EncodeOptions eo;
    eo.guarded = true;
    eo.program = &program;
    eo.var_ceiling = opts.var_ceiling;
    g.tf = bmc::encode_cnf(ssa, eo);

    // Even with every statement switched off the hard clauses must be
    // satisfiable; otherwise the specification itself is contradictory.
    sat::SolveResult r = sat::solve_cnf(g.tf.hard_instance(), {}, opts.conflict_budget);
    if (r.status == sat::SolveStatus::ResourceLimit)
        throw ResourceLimitError("conflict budget exceeded while checking the specification");
    if (r.unsat())
        throw UnsatSpecification(
            "hard clauses unsatisfiable even with every statement relaxed");
    return g;
}

namespace {

// Incremental unweighted MaxSAT enumeration over one solver: a sequential
// counter over falsified guards is grown one level at a time, the cost
// bound is enforced through assumptions, and blocking clauses are added
// permanently. Learned clauses survive across all rounds.
class DiagnosisEnumerator {
  public:
    DiagnosisEnumerator(const GuardedFormula& g, const LocalizeOptions& opts)
        : g_(g), opts_(opts) {
        solver_.set_conflict_budget(opts.conflict_budget);
        solver_.ensure_vars(g.tf.num_vars);
        for (const auto& c : g.tf.clauses) solver_.add_clause(c);
        for (const auto& [id, h] : g.tf.guards) {
            ids_.push_back(id);
            hs_.push_back(h);
        }
    }

    DiagnosisSet run() {
        std::set<StatementId> sink_set(g_.sink_ids.begin(), g_.sink_ids.end());
        DiagnosisSet out;

        // lowest bound B such that "at most B guards falsified" is SAT
        sat::SolveResult r = solve_at_bound(0);
        std::int64_t bound = 0;
        while (r.unsat() && bound < static_cast<std::int64_t>(hs_.size())) {
            bound++;
            r = solve_at_bound(bound);
        }
        if (r.status == sat::SolveStatus::ResourceLimit)
            throw ResourceLimitError("conflict budget exceeded during diagnosis enumeration");
        if (r.unsat())
            throw UnsatSpecification("guarded formula has unsatisfiable hard clauses");
        out.cost = bound;
        if (bound == 0) return out;  // program passes the pinned test

        while (r.sat()) {
            Diagnosis d;
            d.cost = bound;
            sat::Clause block;
            for (std::size_t i = 0; i < hs_.size(); ++i) {
                if (!r.model[static_cast<std::size_t>(hs_[i]) - 1]) {
                    d.statements.push_back(ids_[i]);
                    block.push_back(hs_[i]);
                }
            }
            std::sort(d.statements.begin(), d.statements.end());
            d.output_sink = !d.statements.empty() &&
                            std::all_of(d.statements.begin(), d.statements.end(),
                                        [&](StatementId id) { return sink_set.count(id) > 0; });
            out.diagnoses.push_back(std::move(d));
            solver_.add_clause(block);  // at least one member must stay healthy
            if (static_cast<int>(out.diagnoses.size()) >= opts_.enumeration_cap) {
                sat::SolveResult probe = solver_.solve(bound_assumptions(bound));
                out.truncated = probe.sat();  // more optima exist below the cap
                return out;
            }
            r = solver_.solve(bound_assumptions(bound));
            if (r.status == sat::SolveStatus::ResourceLimit)
                throw ResourceLimitError(
                    "conflict budget exceeded during diagnosis enumeration");
        }
        return out;
    }

  private:
    const GuardedFormula& g_;
    const LocalizeOptions& opts_;
    sat::Solver solver_;
    std::vector<StatementId> ids_;
    std::vector<sat::Lit> hs_;
    // counter_[i][j] true when at least j+1 of the first i+1 guards are
    // falsified; grown lazily one j-level at a time
    std::vector<std::vector<sat::Lit>> counter_;

    void grow_counter(std::int64_t levels) {
        if (counter_.empty()) counter_.assign(hs_.size(), {});
        while (!counter_.empty() &&
               static_cast<std::int64_t>(counter_[0].size()) < levels) {
            std::size_t j = counter_[0].size();  // adding level j (0-based)
            for (std::size_t i = 0; i < hs_.size(); ++i) {
                sat::Lit s = solver_.new_var();
                counter_[i].push_back(s);
                if (i > 0) solver_.add_clause({-counter_[i - 1][j], s});
                if (j == 0) {
                    solver_.add_clause({hs_[i], s});  // falsified guard counts
                } else if (i > 0) {
                    solver_.add_clause({hs_[i], -counter_[i - 1][j - 1], s});
                }
            }
        }
    }

    std::vector<sat::Lit> bound_assumptions(std::int64_t bound) {
        if (bound >= static_cast<std::int64_t>(hs_.size())) return {};
        if (bound == 0) {
            std::vector<sat::Lit> all = hs_;
            return all;
        }
        grow_counter(bound + 1);
        return {-counter_.back()[static_cast<std::size_t>(bound)]};
    }

    sat::SolveResult solve_at_bound(std::int64_t bound) {
        return solver_.solve(bound_assumptions(bound));
    }
};

}  // namespace

DiagnosisSet enumerate_diagnoses(const GuardedFormula& g, const LocalizeOptions& opts) {
    if (g.tf.guards.empty()) {
        // nothing to relax: feasibility was already established by
        // encode_guarded, so enumeration degenerates to a plain SAT check
        sat::SolveResult r = sat::solve_cnf(g.tf.hard_instance(), {}, opts.conflict_budget);
        if (r.status == sat::SolveStatus::ResourceLimit)
            throw ResourceLimitError("conflict budget exceeded during diagnosis enumeration");
        if (r.unsat()) throw UnsatSpecification("guarded formula has unsatisfiable hard clauses");
        return {};
    }
    return DiagnosisEnumerator(g, opts).run();
}

std::vector<SourceStatement> map_diagnosis_to_source(const DiagnosisSet& ds,
                                                     const minic::CheckedProgram& program) {
    std::set<StatementId> ids;
    for (const auto& d : ds.diagnoses) ids.insert(d.statements.begin(), d.statements.end());
    std::vector<SourceStatement> out;
    for (StatementId id : ids) {
        SourceStatement s;
        s.id = id;
        s.line = program.info(id).span.line;
        s.text = program.statement_text(id);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const SourceStatement& a, const SourceStatement& b) {
        if (a.line != b.line) return a.line < b.line;
        return a.id < b.id;
    });
    return out;
}

}  // namespace fathom::fl
