// cnf.hpp -- CNF and partial MaxSAT instance types shared by the solver,
// the encoder, and the DIMACS interchange layer.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fathom::sat {

// Literals are DIMACS-style nonzero integers in [-V, V].
using Lit = int;
using Clause = std::vector<Lit>;

struct CnfInstance {
    int num_vars = 0;
    std::vector<Clause> clauses;

    // Throws std::invalid_argument when a clause is empty or a literal is
    // out of range.
    void validate() const;
};

struct SoftClause {
    Clause clause;
    std::int64_t weight = 1;
};

struct PartialMaxSatInstance {
    CnfInstance hard;
    std::vector<SoftClause> soft;

    void validate() const;
    std::int64_t weight_sum() const;
};

bool clause_satisfied(const Clause& c, const std::vector<bool>& model);

// Total weight of soft clauses falsified by `model` (indexed by var-1).
std::int64_t model_cost(const PartialMaxSatInstance& inst, const std::vector<bool>& model);

}  // namespace fathom::sat
