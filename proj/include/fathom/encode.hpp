// encode.hpp -- bit-precise CNF encoding of an SSA program: 32-bit vectors
// per versioned variable, Tseitin-transformed circuits per definition, and
// the trace-formula contract (SAT exactly when some bounded execution
// violates an assertion while respecting all assume statements).
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fathom/cnf.hpp"
#include "fathom/ssa.hpp"

namespace fathom::bmc {

enum class ObKind { Assert, Unwind, DivByZero, OutOfBounds };

class CapacityError : public std::runtime_error {
  public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TraceFormula {
    int num_vars = 0;
    std::vector<sat::Clause> clauses;   // hard clauses
    std::vector<sat::SoftClause> soft;  // unit (h_s) soft clauses, guarded encoding only

    std::map<std::string, std::array<sat::Lit, 32>> bitmap;  // versioned var -> 32 vars
    std::map<minic::StatementId, sat::Lit> guards;           // h_s per guarded statement

    struct Obligation {
        sat::Lit holds;  // true in a model iff the obligation is met
        minic::StatementId origin = minic::kNoStatement;
        ObKind kind = ObKind::Assert;
    };
    std::vector<Obligation> obligations;

    // (origin, path literal) per non-control definition, in program order;
    // used to reconstruct the failing path from a model.
    std::vector<std::pair<minic::StatementId, sat::Lit>> path_probes;

    std::vector<std::string> nondet_vars;  // versioned, in creation order
    std::string exit_var;

    sat::CnfInstance hard_instance() const;

    // Hard clauses plus the asserted disjunction of negated (non-unwind)
    // obligations: satisfiable iff some bounded execution violates an
    // assertion (or hits a runtime error) while respecting all assumes.
    sat::CnfInstance violation_instance() const;

    // Sidecar map for DIMACS dumps: "var <id> = <versioned-name>[bit]".
    std::string variable_map() const;

    std::int32_t decode_int(const std::vector<bool>& model, const std::string& var) const;
};

struct EncodeOptions {
    bool guarded = false;  // emit healthy variables + soft clauses
    long long var_ceiling = 5'000'000;
    // Required in guarded mode: which origin statements may carry guards.
    const minic::CheckedProgram* program = nullptr;
};

TraceFormula encode_cnf(const minic::SsaProgram& ssa, const EncodeOptions& opts = {});

}  // namespace fathom::bmc
