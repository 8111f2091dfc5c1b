#include "fathom/maxsat.hpp"

#include <algorithm>
#include <map>

namespace fathom::sat {

namespace {

// Weighted "sum of falsified softs >= j" ladder (sequential counter).
// outputs[j-1] is a literal that is forced true whenever the falsified
// weight reaches j; asserting its negation caps the sum below j.
struct CostLadder {
    std::vector<Lit> outputs;

    // f[i] = indicator literal "soft i falsified", weight w[i].
    static CostLadder build(Solver& solver, const std::vector<Lit>& f,
                            const std::vector<std::int64_t>& w, std::int64_t bound) {
        CostLadder ladder;
        if (bound <= 0) return ladder;
        ladder.outputs.assign(static_cast<std::size_t>(bound), 0);
        std::vector<Lit> prev(static_cast<std::size_t>(bound), 0);  // s_{i-1,j}
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::vector<Lit> cur(static_cast<std::size_t>(bound), 0);
            for (std::int64_t j = 1; j <= bound; ++j) {
                Lit s = solver.new_var();
                cur[static_cast<std::size_t>(j - 1)] = s;
                // carry forward
                if (prev[static_cast<std::size_t>(j - 1)] != 0)
                    solver.add_clause({-prev[static_cast<std::size_t>(j - 1)], s});
                // add this soft's weight
                if (j <= w[i]) {
                    solver.add_clause({-f[i], s});
                } else if (prev[static_cast<std::size_t>(j - w[i] - 1)] != 0) {
                    solver.add_clause({-f[i], -prev[static_cast<std::size_t>(j - w[i] - 1)], s});
                }
            }
            prev = cur;
        }
        ladder.outputs = prev;
        return ladder;
    }
};

}  // namespace

OptResult solve_partial_maxsat(const PartialMaxSatInstance& inst, std::int64_t conflict_budget) {
    inst.validate();
    OptResult result;

    Solver solver;
    solver.set_conflict_budget(conflict_budget);
    solver.add_instance(inst.hard);
    solver.ensure_vars(inst.hard.num_vars);

    // Selector per soft clause: assuming the selector forces the clause.
    std::vector<Lit> selectors;         // assume these to require softs
    std::vector<Lit> falsified;         // indicator literal per soft
    std::vector<std::int64_t> weights;
    for (const SoftClause& s : inst.soft) {
        if (s.clause.size() == 1) {
            selectors.push_back(s.clause[0]);
            falsified.push_back(-s.clause[0]);
        } else {
            Lit r = solver.new_var();
            Clause relaxed = s.clause;
            relaxed.push_back(r);
            solver.add_clause(relaxed);
            // r -> clause falsified is not guaranteed unless we also force
            // the clause's literals false; the indicator is only used in the
            // upper-bound direction (f true when the clause may be false),
            // which keeps the counter an over-approximation of the true
            // cost. A model found under a capped counter is re-costed
            // exactly below before it is accepted.
            selectors.push_back(-r);
            falsified.push_back(r);
        }
        weights.push_back(s.weight);
    }

    // Phase 1: disjoint unsat cores over the soft selectors.
    std::int64_t lower = 0;
    std::vector<Lit> active = selectors;
    std::vector<bool> first_model;
    while (true) {
        SolveResult r = solver.solve(active);
        if (r.status == SolveStatus::ResourceLimit) {
            result.status = OptResult::Status::ResourceLimit;
            return result;
        }
        if (r.sat()) {
            first_model = std::move(r.model);
            break;
        }
        if (r.core.empty()) {
            result.status = OptResult::Status::HardUnsat;
            return result;
        }
        std::int64_t min_w = -1;
        for (Lit l : r.core) {
            for (std::size_t i = 0; i < selectors.size(); ++i)
                if (selectors[i] == l && (min_w < 0 || weights[i] < min_w)) min_w = weights[i];
        }
        if (min_w < 0) min_w = 1;
        lower += min_w;
        std::vector<Lit> next;
        for (Lit l : active)
            if (std::find(r.core.begin(), r.core.end(), l) == r.core.end()) next.push_back(l);
        active = std::move(next);
    }

    auto cost_of = [&](const std::vector<bool>& model) { return model_cost(inst, model); };
    std::vector<bool> best = first_model;
    std::int64_t upper = cost_of(best);
    if (upper <= lower) {
        result.status = OptResult::Status::Optimal;
        result.cost = upper;
        best.resize(static_cast<std::size_t>(inst.hard.num_vars), false);
        result.model = std::move(best);
        return result;
    }

    // Phase 2: model-improving descent under a falsified-weight cap.
    CostLadder ladder = CostLadder::build(solver, falsified, weights, upper);
    while (upper > lower) {
        // cap: falsified weight < upper, i.e. not (sum >= upper)
        std::vector<Lit> assumps{-ladder.outputs[static_cast<std::size_t>(upper - 1)]};
        SolveResult r = solver.solve(assumps);
        if (r.status == SolveStatus::ResourceLimit) {
            result.status = OptResult::Status::ResourceLimit;
            return result;
        }
        if (r.unsat()) break;  // no model strictly better than `upper`
        std::int64_t c = cost_of(r.model);
        if (c >= upper) break;  // defensive: ladder must improve
        best = std::move(r.model);
        upper = c;
    }

    result.status = OptResult::Status::Optimal;
    result.cost = upper;
    best.resize(static_cast<std::size_t>(inst.hard.num_vars), false);
    result.model = std::move(best);
    return result;
}

}  // namespace fathom::sat
