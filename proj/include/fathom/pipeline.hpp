// pipeline.hpp -- the end-to-end orchestrator: candidate gating, single-
// problem runs, outcome classification, benchmark execution, and report
// serialization.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fathom/bmc.hpp"
#include "fathom/interp.hpp"
#include "fathom/llm.hpp"
#include "fathom/localize.hpp"
#include "fathom/python_harness.hpp"

namespace fathom::pipeline {

struct PipelineConfig {
    llm::LlmConfig llm;
    int unwind = 64;
    int inline_depth = 8;
    minic::InterpLimits interp;
    std::chrono::milliseconds py_timeout{5000};
    std::string python_interpreter = "python3";
    std::uint64_t seed = 0;
    int jobs = 0;  // 0: number of cores, capped by the LLM in-flight limit
    std::string out_dir;
    std::string benchmark_name = "default";
    int enumeration_cap = 16;
    std::int64_t conflict_budget = -1;

    bmc::BmcOptions bmc_options() const;
    fl::LocalizeOptions localize_options() const;
};

// JSON config file with the same keys as the CLI flags; missing keys keep
// their defaults.
PipelineConfig config_from_json(const std::string& text, PipelineConfig base = {});
std::string config_to_json(const PipelineConfig& config);

struct GateDecision {
    enum class Kind { ToVerifier, Retry, FixedCodeSuspected };
    Kind kind = Kind::Retry;
    std::string reason;  // Retry only
    llm::AttemptClass classification = llm::AttemptClass::Accepted;
};

std::string to_string(GateDecision::Kind k);

// Fig-1 edge logic: parse/type failures and C-fails-Python-passes ask for a
// new candidate; agreement goes to the verifier; C passing what Python
// fails marks a suspected silent fix.
GateDecision validate_candidate(const py::RunOutcome& py_outcome, const std::string& c_source,
                                const minic::InterpLimits& limits);

enum class OutcomeClass {
    CorrectBugLocalised,
    OtherBugsLocalised,
    TranspiledFixedCode,
    CompilationError,
    Verified,
    VerificationFailedNoDiagnosis,
    GaveUp,
};

std::string to_string(OutcomeClass c);
OutcomeClass outcome_class_from_string(const std::string& s);

class MissingGroundTruth : public std::runtime_error {
  public:
    explicit MissingGroundTruth(const std::string& msg) : std::runtime_error(msg) {}
};

struct DiagnosedStatement {
    int line = 0;
    std::string text;
    bool output_sink = false;
};

struct PipelineReport {
    int schema_version = 1;
    std::string problem_id;
    std::string benchmark;
    std::string model;
    bool description_used = true;
    std::string mutation;  // "WBO", "ADC", or "none"

    std::string problem_source;
    std::optional<std::string> description;
    std::optional<py::MutantRecord> ground_truth;

    std::optional<py::RunOutcome> python_run;
    std::optional<llm::CandidateResult> candidate;
    std::optional<GateDecision::Kind> accepted_via;
    std::optional<bmc::Verdict::Kind> verdict;
    int verdict_bound = 0;

    std::int64_t diagnosis_cost = -1;  // -1: localisation did not run
    bool diagnosis_truncated = false;
    std::vector<std::vector<int>> diagnosis_lines;  // line numbers per diagnosis
    std::vector<bool> diagnosis_sink_flags;
    std::vector<DiagnosedStatement> fault_statements;  // deduplicated, line-sorted

    std::vector<llm::BackmappedStatement> backmapped;

    OutcomeClass outcome = OutcomeClass::GaveUp;
    std::map<std::string, std::int64_t> timings_ms;
    std::vector<std::string> errors;  // stage errors, never aborting the batch
};

std::string report_to_json(const PipelineReport& report);
PipelineReport report_from_json(const std::string& text);

// The full Fig-1 run for one problem. Stage errors are captured into the
// report; the call itself only throws on programming errors.
PipelineReport run_pipeline(const py::PythonProblem& problem, const PipelineConfig& config);

// Pure classification of a finished report against optional ground truth;
// throws MissingGroundTruth when a localisation class would be needed
// without a MutantRecord.
OutcomeClass classify_outcome(const PipelineReport& report,
                              const std::optional<py::MutantRecord>& ground_truth);

// Runs every problem through the pipeline on a worker pool; reports are
// returned in problem order.
std::vector<PipelineReport> run_benchmark(const std::vector<py::PythonProblem>& problems,
                                          const PipelineConfig& config);

class EmptyGroup : public std::runtime_error {
  public:
    explicit EmptyGroup(const std::string& msg) : std::runtime_error(msg) {}
};

struct MetricsRow {
    std::map<OutcomeClass, int> counts;
    int total = 0;

    double percent(OutcomeClass c) const;
};

struct MetricsTable {
    struct Key {
        std::string benchmark;
        std::string mutation;
        std::string model;
        bool description = true;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, MetricsRow> groups;
};

MetricsTable compute_metrics(const std::vector<PipelineReport>& reports);

// Localisation-table layout: the four per-column percentages over the same
// denominator, remainder classes in the footer. With fold_giveups the
// give-ups are counted into the Compilation Errors column (the alternative
// denominator rendering).
std::string render_metrics(const MetricsTable& table, bool fold_giveups = false);

}  // namespace fathom::pipeline
