// cdcl.hpp -- conflict-driven clause-learning SAT solver with incremental
// clause addition, assumptions, and unsat cores over assumptions.
#pragma once

#include <cstdint>
#include <vector>

#include "fathom/cnf.hpp"

namespace fathom::sat {

enum class SolveStatus { Sat, Unsat, ResourceLimit };

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    std::vector<bool> model;  // indexed by var-1, valid when Sat
    std::vector<Lit> core;    // subset of the assumptions, valid when Unsat

    bool sat() const { return status == SolveStatus::Sat; }
    bool unsat() const { return status == SolveStatus::Unsat; }
};

class Solver {
  public:
    Solver() = default;

    int num_vars() const { return static_cast<int>(assign_.size()); }
    int new_var();
    void ensure_vars(int n);

    // Adds a clause over DIMACS literals; returns false when the clause
    // (or an earlier one) made the formula trivially unsatisfiable.
    bool add_clause(const Clause& clause);
    void add_instance(const CnfInstance& inst);

    // Solves under the given assumptions. The conflict budget (< 0 means
    // unlimited) applies per call.
    SolveResult solve(const std::vector<Lit>& assumptions = {});

    void set_conflict_budget(std::int64_t budget) { conflict_budget_ = budget; }
    std::int64_t conflicts() const { return total_conflicts_; }

  private:
    // Internal literal encoding: 2*v for positive, 2*v+1 for negative.
    using ILit = int;
    static ILit ilit(Lit l) {
        int v = l > 0 ? l - 1 : -l - 1;
        return 2 * v + (l < 0 ? 1 : 0);
    }
    static Lit elit(ILit p) { return (p & 1) ? -(p / 2 + 1) : p / 2 + 1; }
    static ILit neg(ILit p) { return p ^ 1; }
    static int var(ILit p) { return p >> 1; }

    enum : std::int8_t { kTrue = 1, kFalse = -1, kUndef = 0 };
    static constexpr int kNoReason = -1;

    struct Watcher {
        int cref;
        ILit blocker;
    };

    struct ClauseData {
        std::vector<ILit> lits;
        bool learnt = false;
        double activity = 0.0;
    };

    std::vector<ClauseData> clauses_;
    std::vector<std::vector<Watcher>> watches_;  // indexed by ILit
    std::vector<std::int8_t> assign_;            // indexed by var
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<ILit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    std::vector<bool> polarity_;  // saved phases
    std::vector<int> heap_;       // max-heap of vars by activity
    std::vector<int> heap_pos_;   // var -> heap index, -1 if absent

    bool ok_ = true;
    std::int64_t conflict_budget_ = -1;
    std::int64_t total_conflicts_ = 0;
    int num_learnts_ = 0;
    std::vector<bool> seen_;

    std::int8_t value(ILit p) const {
        std::int8_t v = assign_[var(p)];
        return (p & 1) ? static_cast<std::int8_t>(-v) : v;
    }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void enqueue(ILit p, int reason);
    int propagate();  // returns conflicting clause index or kNoReason
    void attach(int cref);
    int analyze(int confl, std::vector<ILit>& learnt);
    void analyze_final(ILit p, std::vector<bool>& in_conflict);
    void cancel_until(int lvl);
    void bump_var(int v);
    void bump_clause(int cref);
    void decay();
    ILit pick_branch();
    void reduce_learnts();

    // activity heap
    void heap_insert(int v);
    void heap_update(int v);
    int heap_pop();
    void heap_sift_up(int i);
    void heap_sift_down(int i);
    bool heap_less(int a, int b) const { return activity_[a] < activity_[b]; }
};

// One-shot convenience used by the spec-level operations: solve an instance
// under assumptions.
SolveResult solve_cnf(const CnfInstance& inst, const std::vector<Lit>& assumptions = {},
                      std::int64_t conflict_budget = -1);

}  // namespace fathom::sat
