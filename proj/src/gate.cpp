#include "fathom/parser.hpp"
#include "fathom/pipeline.hpp"
#include "fathom/typecheck.hpp"

namespace fathom::pipeline {

std::string to_string(GateDecision::Kind k) {
    switch (k) {
        case GateDecision::Kind::ToVerifier: return "to-verifier";
        case GateDecision::Kind::Retry: return "retry";
        case GateDecision::Kind::FixedCodeSuspected: return "fixed-code-suspected";
    }
    return "?";
}

GateDecision validate_candidate(const py::RunOutcome& py_outcome, const std::string& c_source,
                                const minic::InterpLimits& limits) {
    GateDecision decision;

    minic::CheckedProgram program;
    try {
        program = minic::typecheck(minic::parse(c_source));
    } catch (const Error& e) {
        decision.kind = GateDecision::Kind::Retry;
        decision.classification = llm::AttemptClass::ParseFail;
        decision.reason =
            "C compilation/parse error: " + format_diag("candidate.c", e.span(), e.what());
        return decision;
    }

    minic::ExecutionOutcome c_outcome;
    try {
        c_outcome = minic::interpret_main(program, limits);
    } catch (const Error& e) {
        decision.kind = GateDecision::Kind::Retry;
        decision.classification = llm::AttemptClass::ParseFail;
        decision.reason =
            "C compilation/parse error: " + format_diag("candidate.c", e.span(), e.what());
        return decision;
    }

    bool py_pass = py_outcome.passed();
    bool c_pass = c_outcome.completed();

    if (c_pass && py_pass) {
        decision.kind = GateDecision::Kind::ToVerifier;
        return decision;
    }
    if (!c_pass && !py_pass) {
        decision.kind = GateDecision::Kind::ToVerifier;
        return decision;
    }
    if (c_pass && !py_pass) {
        decision.kind = GateDecision::Kind::FixedCodeSuspected;
        return decision;
    }

    // C fails a check the Python source passes: ask for a new candidate
    decision.kind = GateDecision::Kind::Retry;
    decision.classification = llm::AttemptClass::DifferentialFail;
    if (c_outcome.status == minic::ExecutionOutcome::Status::AssertionViolated) {
        std::string text = c_source.substr(c_outcome.span.begin,
                                           c_outcome.span.end - c_outcome.span.begin);
        decision.reason = "assertion " + text + " failed in C but passed in Python";
    } else {
        decision.reason =
            "C execution failed (" + minic::to_string(c_outcome) + ") but Python passed";
    }
    return decision;
}

}  // namespace fathom::pipeline
