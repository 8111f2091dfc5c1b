// maxsat.hpp -- partial MaxSAT: satisfy all hard clauses while minimising
// the weight of falsified soft clauses.
#pragma once

#include "fathom/cdcl.hpp"
#include "fathom/cnf.hpp"

namespace fathom::sat {

struct OptResult {
    enum class Status { Optimal, HardUnsat, ResourceLimit };
    Status status = Status::HardUnsat;
    std::vector<bool> model;  // over the instance's original variables, valid when Optimal
    std::int64_t cost = 0;    // total weight of falsified soft clauses

    bool optimal() const { return status == Status::Optimal; }
};

// Assumption-based search: soft clauses are relaxed through selector
// literals, disjoint unsat cores raise the lower bound, and a weighted
// counter over falsified-soft indicators drives a model-improving descent
// until the bound is proved tight.
OptResult solve_partial_maxsat(const PartialMaxSatInstance& inst,
                               std::int64_t conflict_budget = -1);

}  // namespace fathom::sat
