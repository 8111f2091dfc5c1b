#include "fathom/cnf.hpp"

#include <cstdlib>

namespace fathom::sat {

void CnfInstance::validate() const {
    for (const Clause& c : clauses) {
        if (c.empty()) throw std::invalid_argument("empty clause");
        for (Lit l : c) {
            if (l == 0 || std::abs(l) > num_vars)
                throw std::invalid_argument("literal " + std::to_string(l) +
                                            " out of range for " + std::to_string(num_vars) +
                                            " variables");
        }
    }
}

void PartialMaxSatInstance::validate() const {
    hard.validate();
    for (const SoftClause& s : soft) {
        if (s.weight < 1) throw std::invalid_argument("soft clause weight must be >= 1");
        if (s.clause.empty()) throw std::invalid_argument("empty soft clause");
        for (Lit l : s.clause)
            if (l == 0 || std::abs(l) > hard.num_vars)
                throw std::invalid_argument("soft literal out of range");
    }
}

std::int64_t PartialMaxSatInstance::weight_sum() const {
    std::int64_t sum = 0;
    for (const SoftClause& s : soft) sum += s.weight;
    return sum;
}

bool clause_satisfied(const Clause& c, const std::vector<bool>& model) {
    for (Lit l : c) {
        std::size_t v = static_cast<std::size_t>(std::abs(l)) - 1;
        bool val = v < model.size() ? model[v] : false;
        if ((l > 0) == val) return true;
    }
    return false;
}

std::int64_t model_cost(const PartialMaxSatInstance& inst, const std::vector<bool>& model) {
    std::int64_t cost = 0;
    for (const SoftClause& s : inst.soft)
        if (!clause_satisfied(s.clause, model)) cost += s.weight;
    return cost;
}

}  // namespace fathom::sat
