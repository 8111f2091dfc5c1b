#include "fathom/cdcl.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace fathom::sat {

int Solver::new_var() {
    int v = num_vars();
    assign_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    activity_.push_back(0.0);
    polarity_.push_back(false);
    seen_.push_back(false);
    heap_pos_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v + 1;
}

void Solver::ensure_vars(int n) {
    while (num_vars() < n) new_var();
}

bool Solver::add_clause(const Clause& clause) {
    if (!ok_) return false;
    assert(decision_level() == 0);
    std::vector<ILit> lits;
    lits.reserve(clause.size());
    for (Lit l : clause) {
        ensure_vars(std::abs(l));
        lits.push_back(ilit(l));
    }
    std::sort(lits.begin(), lits.end());
    std::vector<ILit> out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return true;  // tautology
        if (i > 0 && lits[i] == lits[i - 1]) continue;
        if (value(lits[i]) == kTrue) return true;  // already satisfied at level 0
        if (value(lits[i]) == kFalse) continue;    // falsified at level 0, drop
        out.push_back(lits[i]);
    }
    if (out.empty()) {
        ok_ = false;
        return false;
    }
    if (out.size() == 1) {
        enqueue(out[0], kNoReason);
        if (propagate() != kNoReason) ok_ = false;
        return ok_;
    }
    clauses_.push_back({std::move(out), false, 0.0});
    attach(static_cast<int>(clauses_.size()) - 1);
    return true;
}

void Solver::add_instance(const CnfInstance& inst) {
    ensure_vars(inst.num_vars);
    for (const Clause& c : inst.clauses) add_clause(c);
}

void Solver::attach(int cref) {
    const auto& c = clauses_[cref].lits;
    watches_[neg(c[0])].push_back({cref, c[1]});
    watches_[neg(c[1])].push_back({cref, c[0]});
}

void Solver::enqueue(ILit p, int reason) {
    assign_[var(p)] = (p & 1) ? kFalse : kTrue;
    level_[var(p)] = decision_level();
    reason_[var(p)] = reason;
    trail_.push_back(p);
}

int Solver::propagate() {
    while (qhead_ < trail_.size()) {
        ILit p = trail_[qhead_++];
        auto& ws = watches_[p];
        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
            Watcher w = ws[i];
            if (value(w.blocker) == kTrue) {
                ws[j++] = ws[i++];
                continue;
            }
            auto& lits = clauses_[w.cref].lits;
            // make sure the false literal is lits[1]
            ILit false_lit = neg(p);
            if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
            i++;
            if (value(lits[0]) == kTrue) {
                ws[j++] = {w.cref, lits[0]};
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < lits.size(); ++k) {
                if (value(lits[k]) != kFalse) {
                    std::swap(lits[1], lits[k]);
                    watches_[neg(lits[1])].push_back({w.cref, lits[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // unit or conflicting
            ws[j++] = {w.cref, lits[0]};
            if (value(lits[0]) == kFalse) {
                while (i < ws.size()) ws[j++] = ws[i++];
                ws.resize(j);
                qhead_ = trail_.size();
                return w.cref;
            }
            enqueue(lits[0], w.cref);
        }
        ws.resize(j);
    }
    return kNoReason;
}

int Solver::analyze(int confl, std::vector<ILit>& learnt) {
    learnt.clear();
    learnt.push_back(0);  // placeholder for the asserting literal
    int path = 0;
    ILit p = -1;
    std::size_t index = trail_.size();

    do {
        auto& c = clauses_[confl];
        if (c.learnt) bump_clause(confl);
        for (std::size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
            ILit q = c.lits[k];
            int v = var(q);
            if (!seen_[v] && level_[v] > 0) {
                seen_[v] = true;
                bump_var(v);
                if (level_[v] >= decision_level()) {
                    path++;
                } else {
                    learnt.push_back(q);
                }
            }
        }
        while (!seen_[var(trail_[--index])]) {
        }
        p = trail_[index];
        confl = reason_[var(p)];
        seen_[var(p)] = false;
        path--;
    } while (path > 0);
    learnt[0] = neg(p);

    // simple self-subsumption minimization: drop literals implied by the rest
    std::vector<ILit> to_clear(learnt.begin(), learnt.end());
    std::vector<ILit> minimized;
    minimized.push_back(learnt[0]);
    for (std::size_t k = 1; k < learnt.size(); ++k) {
        ILit q = learnt[k];
        int r = reason_[var(q)];
        bool redundant = false;
        if (r != kNoReason) {
            redundant = true;
            for (ILit x : clauses_[r].lits) {
                if (var(x) == var(q)) continue;
                if (!seen_[var(x)] && level_[var(x)] > 0) {
                    redundant = false;
                    break;
                }
            }
        }
        if (!redundant) minimized.push_back(q);
    }
    learnt.swap(minimized);

    int back_level = 0;
    if (learnt.size() > 1) {
        std::size_t max_i = 1;
        for (std::size_t k = 2; k < learnt.size(); ++k)
            if (level_[var(learnt[k])] > level_[var(learnt[max_i])]) max_i = k;
        std::swap(learnt[1], learnt[max_i]);
        back_level = level_[var(learnt[1])];
    }
    for (ILit q : to_clear) seen_[var(q)] = false;
    return back_level;
}

void Solver::analyze_final(ILit p, std::vector<bool>& in_conflict) {
    // p is an assumption literal that is falsified; collect the subset of
    // assumptions that force the conflict.
    std::fill(seen_.begin(), seen_.end(), false);
    in_conflict.assign(num_vars(), false);
    in_conflict[var(p)] = true;
    if (decision_level() == 0) return;
    seen_[var(p)] = true;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
        int v = var(trail_[i]);
        if (!seen_[v]) continue;
        if (reason_[v] == kNoReason) {
            in_conflict[v] = true;
        } else {
            for (ILit q : clauses_[reason_[v]].lits)
                if (level_[var(q)] > 0) seen_[var(q)] = true;
        }
        seen_[v] = false;
    }
}

void Solver::cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
        int v = var(trail_[i]);
        polarity_[v] = assign_[v] == kTrue;
        assign_[v] = kUndef;
        reason_[v] = kNoReason;
        if (heap_pos_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
}

void Solver::bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_sift_up(heap_pos_[v]);
}

void Solver::bump_clause(int cref) {
    clauses_[cref].activity += cla_inc_;
    if (clauses_[cref].activity > 1e20) {
        for (auto& c : clauses_)
            if (c.learnt) c.activity *= 1e-20;
        cla_inc_ *= 1e-20;
    }
}

void Solver::decay() {
    var_inc_ /= 0.95;
    cla_inc_ /= 0.999;
}

Solver::ILit Solver::pick_branch() {
    while (!heap_.empty()) {
        int v = heap_pop();
        if (assign_[v] == kUndef) return 2 * v + (polarity_[v] ? 0 : 1);
    }
    return -1;
}

void Solver::reduce_learnts() {
    std::vector<int> learnt_refs;
    for (int i = 0; i < static_cast<int>(clauses_.size()); ++i)
        if (clauses_[i].learnt) learnt_refs.push_back(i);
    std::sort(learnt_refs.begin(), learnt_refs.end(), [&](int a, int b) {
        return clauses_[a].activity < clauses_[b].activity;
    });
    std::vector<bool> locked(clauses_.size(), false);
    for (ILit p : trail_)
        if (reason_[var(p)] != kNoReason) locked[reason_[var(p)]] = true;
    std::vector<bool> remove(clauses_.size(), false);
    std::size_t target = learnt_refs.size() / 2;
    std::size_t removed = 0;
    for (int cref : learnt_refs) {
        if (removed >= target) break;
        if (locked[cref] || clauses_[cref].lits.size() <= 2) continue;
        remove[cref] = true;
        removed++;
    }
    if (removed == 0) return;
    // rebuild watches without removed clauses
    std::vector<int> remap(clauses_.size(), -1);
    std::vector<ClauseData> kept;
    kept.reserve(clauses_.size() - removed);
    for (int i = 0; i < static_cast<int>(clauses_.size()); ++i) {
        if (remove[i]) continue;
        remap[i] = static_cast<int>(kept.size());
        kept.push_back(std::move(clauses_[i]));
    }
    clauses_ = std::move(kept);
    for (auto& ws : watches_) ws.clear();
    for (int i = 0; i < static_cast<int>(clauses_.size()); ++i) attach(i);
    for (int& r : reason_)
        if (r != kNoReason) r = remap[r];
    num_learnts_ -= static_cast<int>(removed);
}

namespace {
// Luby restart sequence.
double luby(double y, int x) {
    int size, seq;
    for (size = 1, seq = 0; size < x + 1; seq++, size = 2 * size + 1) {
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        seq--;
        x = x % size;
    }
    return std::pow(y, seq);
}
}  // namespace

SolveResult Solver::solve(const std::vector<Lit>& assumptions) {
    SolveResult result;
    if (!ok_) {
        result.status = SolveStatus::Unsat;
        return result;
    }
    cancel_until(0);
    if (propagate() != kNoReason) {
        ok_ = false;
        result.status = SolveStatus::Unsat;
        return result;
    }

    std::vector<ILit> assumps;
    assumps.reserve(assumptions.size());
    for (Lit l : assumptions) {
        ensure_vars(std::abs(l));
        assumps.push_back(ilit(l));
    }

    std::int64_t conflicts_this_call = 0;
    int restart_count = 0;
    std::int64_t restart_limit = static_cast<std::int64_t>(luby(2.0, 0) * 64);
    std::int64_t conflicts_since_restart = 0;
    std::vector<ILit> learnt;

    while (true) {
        int confl = propagate();
        if (confl != kNoReason) {
            total_conflicts_++;
            conflicts_this_call++;
            conflicts_since_restart++;
            if (decision_level() == 0) {
                ok_ = false;
                result.status = SolveStatus::Unsat;
                return result;
            }
            int back = analyze(confl, learnt);
            cancel_until(back);
            if (learnt.size() == 1) {
                enqueue(learnt[0], kNoReason);
            } else {
                clauses_.push_back({learnt, true, cla_inc_});
                int cref = static_cast<int>(clauses_.size()) - 1;
                attach(cref);
                num_learnts_++;
                enqueue(learnt[0], cref);
            }
            decay();
            if (conflict_budget_ >= 0 && conflicts_this_call > conflict_budget_) {
                cancel_until(0);
                result.status = SolveStatus::ResourceLimit;
                return result;
            }
            if (conflicts_since_restart >= restart_limit) {
                conflicts_since_restart = 0;
                restart_limit = static_cast<std::int64_t>(luby(2.0, ++restart_count) * 64);
                cancel_until(0);
            }
            if (num_learnts_ >= 8000 + 2000 * restart_count) reduce_learnts();
            continue;
        }

        // place assumptions as pseudo-decisions
        if (decision_level() < static_cast<int>(assumps.size())) {
            ILit p = assumps[decision_level()];
            if (value(p) == kTrue) {
                trail_lim_.push_back(static_cast<int>(trail_.size()));  // dummy level
                continue;
            }
            if (value(p) == kFalse) {
                std::vector<bool> in_conflict;
                analyze_final(neg(p), in_conflict);
                result.status = SolveStatus::Unsat;
                for (Lit l : assumptions)
                    if (in_conflict[std::abs(l) - 1]) result.core.push_back(l);
                cancel_until(0);
                return result;
            }
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(p, kNoReason);
            continue;
        }

        ILit next = pick_branch();
        if (next == -1) {
            result.status = SolveStatus::Sat;
            result.model.assign(num_vars(), false);
            for (int v = 0; v < num_vars(); ++v) result.model[v] = assign_[v] == kTrue;
            cancel_until(0);
            return result;
        }
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(next, kNoReason);
    }
}

void Solver::heap_insert(int v) {
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_sift_up(heap_pos_[v]);
}

void Solver::heap_update(int v) {
    if (heap_pos_[v] >= 0) {
        heap_sift_up(heap_pos_[v]);
        heap_sift_down(heap_pos_[v]);
    }
}

int Solver::heap_pop() {
    int v = heap_[0];
    heap_pos_[v] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[heap_[0]] = 0;
        heap_sift_down(0);
    }
    return v;
}

void Solver::heap_sift_up(int i) {
    int v = heap_[i];
    while (i > 0) {
        int parent = (i - 1) / 2;
        if (!heap_less(heap_[parent], v)) break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = i;
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

void Solver::heap_sift_down(int i) {
    int v = heap_[i];
    int n = static_cast<int>(heap_.size());
    while (true) {
        int child = 2 * i + 1;
        if (child >= n) break;
        if (child + 1 < n && heap_less(heap_[child], heap_[child + 1])) child++;
        if (!heap_less(v, heap_[child])) break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = i;
        i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

SolveResult solve_cnf(const CnfInstance& inst, const std::vector<Lit>& assumptions,
                      std::int64_t conflict_budget) {
    inst.validate();
    Solver solver;
    solver.set_conflict_budget(conflict_budget);
    solver.add_instance(inst);
    solver.ensure_vars(inst.num_vars);
    return solver.solve(assumptions);
}

}  // namespace fathom::sat
