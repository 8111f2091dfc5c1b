// bmc.hpp -- bounded verification verdicts for checked MiniC programs.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fathom/encode.hpp"
#include "fathom/typecheck.hpp"

namespace fathom::bmc {

struct CounterexampleTrace {
    // complete assignment to all nondet inputs, in creation order
    std::vector<std::pair<std::string, std::int32_t>> inputs;
    // origin StatementIds along the failing path, in execution order
    std::vector<minic::StatementId> path;
    minic::StatementId violated = minic::kNoStatement;
    ObKind kind = ObKind::Assert;
};

struct Verdict {
    enum class Kind { Verified, Violated, BoundExceeded };
    Kind kind = Kind::Verified;
    int bound = 0;
    CounterexampleTrace trace;       // Violated only
    SourceSpan loop_span;            // BoundExceeded only

    bool verified() const { return kind == Kind::Verified; }
    bool violated() const { return kind == Kind::Violated; }
};

std::string to_string(Verdict::Kind k);

struct BmcOptions {
    int unwind = 64;
    int inline_depth = 8;
    minic::UnwindPolicy policy = minic::UnwindPolicy::Fail;
    long long var_ceiling = 5'000'000;
    std::int64_t conflict_budget = -1;
};

// Unrolls, converts to SSA, encodes, and decides. Verified iff no bounded
// execution violates an assertion and no unwinding assertion is reachable;
// BoundExceeded when only unwinding obligations can fail.
Verdict check_bounded(const minic::CheckedProgram& program, const BmcOptions& opts = {});

// The encoded trace formula for external dumps (DIMACS + variable map).
TraceFormula encode_program(const minic::CheckedProgram& program, const BmcOptions& opts = {});

}  // namespace fathom::bmc
