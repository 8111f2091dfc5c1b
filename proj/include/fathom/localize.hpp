// localize.hpp -- MaxSAT-based fault localisation: guard every candidate
// statement with a healthy variable, pin the failing test's inputs and the
// assertions as hard constraints, and enumerate all minimum-cost diagnoses.
#pragma once

#include <string>
#include <vector>

#include "fathom/bmc.hpp"
#include "fathom/maxsat.hpp"

namespace fathom::fl {

class UnsatSpecification : public std::runtime_error {
  public:
    explicit UnsatSpecification(const std::string& msg) : std::runtime_error(msg) {}
};

class ResourceLimitError : public std::runtime_error {
  public:
    explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GuardedFormula {
    bmc::TraceFormula tf;                          // guards + soft clauses populated
    const minic::CheckedProgram* program = nullptr;
    // statements that are final writes to an asserted value (output sinks)
    std::vector<minic::StatementId> sink_ids;

    sat::PartialMaxSatInstance maxsat_instance() const;
};

struct LocalizeOptions {
    int unwind = 64;
    int inline_depth = 8;
    long long var_ceiling = 5'000'000;
    std::int64_t conflict_budget = -1;
    int enumeration_cap = 16;
};

// Builds the guarded trace formula with assertions asserted to HOLD and
// residual loop iterations blocked by assumptions (bound artifacts must not
// masquerade as diagnoses). Throws UnsatSpecification when even relaxing
// every guard cannot satisfy the hard clauses.
GuardedFormula encode_guarded(const minic::CheckedProgram& program,
                              const LocalizeOptions& opts = {});

struct Diagnosis {
    std::vector<minic::StatementId> statements;  // sorted
    std::int64_t cost = 0;
    bool output_sink = false;  // every member is a final write to an asserted value
};

struct DiagnosisSet {
    std::vector<Diagnosis> diagnoses;  // pairwise distinct, all of minimal cost
    std::int64_t cost = 0;
    bool truncated = false;  // enumeration cap hit

    bool empty() const { return diagnoses.empty(); }
};

// Repeatedly solves partial MaxSAT, blocking each optimum, until the cost
// increases or the cap is reached.
DiagnosisSet enumerate_diagnoses(const GuardedFormula& g, const LocalizeOptions& opts = {});

struct SourceStatement {
    int line = 0;
    std::string text;
    minic::StatementId id = minic::kNoStatement;
};

// Line-sorted, deduplicated union of the diagnosed statements; the payload
// handed to back-mapping.
std::vector<SourceStatement> map_diagnosis_to_source(const DiagnosisSet& ds,
                                                     const minic::CheckedProgram& program);

}  // namespace fathom::fl
