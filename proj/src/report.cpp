#include <json.hpp>

#include "fathom/pipeline.hpp"

namespace fathom::pipeline {

using nlohmann::json;

std::string to_string(OutcomeClass c) {
    switch (c) {
        case OutcomeClass::CorrectBugLocalised: return "correct-bug-localised";
        case OutcomeClass::OtherBugsLocalised: return "other-bugs-localised";
        case OutcomeClass::TranspiledFixedCode: return "transpiled-fixed-code";
        case OutcomeClass::CompilationError: return "compilation-error";
        case OutcomeClass::Verified: return "verified";
        case OutcomeClass::VerificationFailedNoDiagnosis: return "verification-failed-no-diagnosis";
        case OutcomeClass::GaveUp: return "gave-up";
    }
    return "?";
}

OutcomeClass outcome_class_from_string(const std::string& s) {
    for (OutcomeClass c :
         {OutcomeClass::CorrectBugLocalised, OutcomeClass::OtherBugsLocalised,
          OutcomeClass::TranspiledFixedCode, OutcomeClass::CompilationError,
          OutcomeClass::Verified, OutcomeClass::VerificationFailedNoDiagnosis,
          OutcomeClass::GaveUp}) {
        if (to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown outcome class '" + s + "'");
}

namespace {

json run_outcome_to_json(const py::RunOutcome& r) {
    json j;
    j["status"] = py::to_string(r.status);
    if (r.line) j["line"] = *r.line;
    if (!r.message.empty()) j["message"] = r.message;
    j["duration_ms"] = r.duration_ms;
    return j;
}

py::RunOutcome run_outcome_from_json(const json& j) {
    py::RunOutcome r;
    std::string s = j.at("status").get<std::string>();
    if (s == "pass") r.status = py::RunOutcome::Status::Pass;
    else if (s == "assertion-failed") r.status = py::RunOutcome::Status::AssertionFailed;
    else if (s == "runtime-error") r.status = py::RunOutcome::Status::RuntimeError;
    else r.status = py::RunOutcome::Status::Timeout;
    if (j.contains("line")) r.line = j.at("line").get<int>();
    r.message = j.value("message", "");
    r.duration_ms = j.value("duration_ms", 0);
    return r;
}

json mutant_to_json(const py::MutantRecord& m) {
    return json::parse(py::mutant_record_to_json(m));
}

const char* attempt_class_name(llm::AttemptClass c) {
    switch (c) {
        case llm::AttemptClass::Accepted: return "accepted";
        case llm::AttemptClass::ParseFail: return "parse-fail";
        case llm::AttemptClass::DifferentialFail: return "differential-fail";
        case llm::AttemptClass::Timeout: return "timeout";
    }
    return "?";
}

llm::AttemptClass attempt_class_from(const std::string& s) {
    if (s == "accepted") return llm::AttemptClass::Accepted;
    if (s == "parse-fail") return llm::AttemptClass::ParseFail;
    if (s == "differential-fail") return llm::AttemptClass::DifferentialFail;
    return llm::AttemptClass::Timeout;
}

}  // namespace

std::string report_to_json(const PipelineReport& r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["problem_id"] = r.problem_id;
    j["benchmark"] = r.benchmark;
    j["model"] = r.model;
    j["description_used"] = r.description_used;
    j["mutation"] = r.mutation;
    j["problem_source"] = r.problem_source;
    if (r.description) j["description"] = *r.description;
    if (r.ground_truth) j["ground_truth"] = mutant_to_json(*r.ground_truth);
    if (r.python_run) j["python_run"] = run_outcome_to_json(*r.python_run);

    if (r.candidate) {
        json c;
        c["status"] = r.candidate->success() ? "success" : "gave-up";
        if (!r.candidate->success())
            c["give_up_reason"] =
                r.candidate->give_up_reason == llm::CandidateResult::GiveUpReason::MaxAttempts
                    ? "max-attempts"
                    : "time-budget";
        if (r.candidate->success()) c["c_source"] = r.candidate->c_source;
        json attempts = json::array();
        for (const auto& a : r.candidate->log) {
            json aj;
            aj["prompt"] = a.prompt;
            aj["response"] = a.response;
            aj["classification"] = attempt_class_name(a.classification);
            aj["reason"] = a.reason;
            aj["wall_ms"] = a.wall_ms;
            attempts.push_back(std::move(aj));
        }
        c["attempts"] = std::move(attempts);
        j["candidate"] = std::move(c);
    }
    if (r.accepted_via) j["accepted_via"] = to_string(*r.accepted_via);
    if (r.verdict) {
        j["verdict"] = bmc::to_string(*r.verdict);
        j["verdict_bound"] = r.verdict_bound;
    }
    if (r.diagnosis_cost >= 0) {
        j["diagnosis_cost"] = r.diagnosis_cost;
        j["diagnosis_truncated"] = r.diagnosis_truncated;
        j["diagnosis_lines"] = r.diagnosis_lines;
        j["diagnosis_sink_flags"] = r.diagnosis_sink_flags;
        json stmts = json::array();
        for (const auto& s : r.fault_statements) {
            json sj;
            sj["line"] = s.line;
            sj["text"] = s.text;
            sj["output_sink"] = s.output_sink;
            stmts.push_back(std::move(sj));
        }
        j["fault_statements"] = std::move(stmts);
    }
    if (!r.backmapped.empty()) {
        json b = json::array();
        for (const auto& s : r.backmapped) {
            json sj;
            sj["text"] = s.text;
            sj["anchored"] = s.anchored;
            if (s.line) sj["line"] = *s.line;
            b.push_back(std::move(sj));
        }
        j["backmapped"] = std::move(b);
    }
    j["outcome"] = to_string(r.outcome);
    j["timings_ms"] = r.timings_ms;
    j["errors"] = r.errors;
    return j.dump(2) + "\n";
}

PipelineReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    PipelineReport r;
    r.schema_version = j.at("schema_version").get<int>();
    r.problem_id = j.at("problem_id").get<std::string>();
    r.benchmark = j.value("benchmark", "default");
    r.model = j.value("model", "");
    r.description_used = j.value("description_used", true);
    r.mutation = j.value("mutation", "none");
    r.problem_source = j.value("problem_source", "");
    if (j.contains("description")) r.description = j.at("description").get<std::string>();
    if (j.contains("ground_truth"))
        r.ground_truth = py::mutant_record_from_json(j.at("ground_truth").dump());
    if (j.contains("python_run")) r.python_run = run_outcome_from_json(j.at("python_run"));

    if (j.contains("candidate")) {
        const json& c = j.at("candidate");
        llm::CandidateResult cr;
        bool success = c.at("status").get<std::string>() == "success";
        cr.status = success ? llm::CandidateResult::Status::Success
                            : llm::CandidateResult::Status::GaveUp;
        if (!success)
            cr.give_up_reason = c.value("give_up_reason", "max-attempts") == "time-budget"
                                    ? llm::CandidateResult::GiveUpReason::TimeBudget
                                    : llm::CandidateResult::GiveUpReason::MaxAttempts;
        cr.c_source = c.value("c_source", "");
        for (const json& aj : c.at("attempts")) {
            llm::Attempt a;
            a.prompt = aj.value("prompt", "");
            a.response = aj.value("response", "");
            a.classification = attempt_class_from(aj.value("classification", "timeout"));
            a.reason = aj.value("reason", "");
            a.wall_ms = aj.value("wall_ms", 0);
            cr.log.push_back(std::move(a));
        }
        r.candidate = std::move(cr);
    }
    if (j.contains("accepted_via")) {
        std::string v = j.at("accepted_via").get<std::string>();
        r.accepted_via = v == "to-verifier" ? GateDecision::Kind::ToVerifier
                                            : GateDecision::Kind::FixedCodeSuspected;
    }
    if (j.contains("verdict")) {
        std::string v = j.at("verdict").get<std::string>();
        r.verdict = v == "VERIFIED"   ? bmc::Verdict::Kind::Verified
                    : v == "VIOLATED" ? bmc::Verdict::Kind::Violated
                                      : bmc::Verdict::Kind::BoundExceeded;
        r.verdict_bound = j.value("verdict_bound", 0);
    }
    if (j.contains("diagnosis_cost")) {
        r.diagnosis_cost = j.at("diagnosis_cost").get<std::int64_t>();
        r.diagnosis_truncated = j.value("diagnosis_truncated", false);
        r.diagnosis_lines = j.value("diagnosis_lines", std::vector<std::vector<int>>{});
        r.diagnosis_sink_flags = j.value("diagnosis_sink_flags", std::vector<bool>{});
        if (j.contains("fault_statements")) {
            for (const json& sj : j.at("fault_statements")) {
                DiagnosedStatement s;
                s.line = sj.at("line").get<int>();
                s.text = sj.at("text").get<std::string>();
                s.output_sink = sj.value("output_sink", false);
                r.fault_statements.push_back(std::move(s));
            }
        }
    }
    if (j.contains("backmapped")) {
        for (const json& sj : j.at("backmapped")) {
            llm::BackmappedStatement s;
            s.text = sj.at("text").get<std::string>();
            s.anchored = sj.value("anchored", false);
            if (sj.contains("line")) s.line = sj.at("line").get<int>();
            r.backmapped.push_back(std::move(s));
        }
    }
    r.outcome = outcome_class_from_string(j.at("outcome").get<std::string>());
    if (j.contains("timings_ms"))
        r.timings_ms = j.at("timings_ms").get<std::map<std::string, std::int64_t>>();
    if (j.contains("errors")) r.errors = j.at("errors").get<std::vector<std::string>>();
    return r;
}

}  // namespace fathom::pipeline
