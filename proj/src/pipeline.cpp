#include <atomic>
#include <set>
#include <thread>

#include <json.hpp>

#include "fathom/parser.hpp"
#include "fathom/pipeline.hpp"
#include "fathom/typecheck.hpp"

namespace fathom::pipeline {

using nlohmann::json;

bmc::BmcOptions PipelineConfig::bmc_options() const {
    bmc::BmcOptions o;
    o.unwind = unwind;
    o.inline_depth = inline_depth;
    o.conflict_budget = conflict_budget;
    return o;
}

fl::LocalizeOptions PipelineConfig::localize_options() const {
    fl::LocalizeOptions o;
    o.unwind = unwind;
    o.inline_depth = inline_depth;
    o.conflict_budget = conflict_budget;
    o.enumeration_cap = enumeration_cap;
    return o;
}

PipelineConfig config_from_json(const std::string& text, PipelineConfig base) {
    json j = json::parse(text);
    PipelineConfig c = std::move(base);
    if (j.contains("endpoint")) c.llm.endpoint = j.at("endpoint").get<std::string>();
    if (j.contains("model")) c.llm.model = j.at("model").get<std::string>();
    if (j.contains("mock")) c.llm.mock_dir = j.at("mock").get<std::string>();
    if (j.contains("no_description")) c.llm.include_description = !j.at("no_description").get<bool>();
    if (j.contains("max_attempts")) c.llm.max_attempts = j.at("max_attempts").get<int>();
    if (j.contains("time_budget_s"))
        c.llm.time_budget = std::chrono::seconds(j.at("time_budget_s").get<int>());
    if (j.contains("unwind")) c.unwind = j.at("unwind").get<int>();
    if (j.contains("inline_depth")) c.inline_depth = j.at("inline_depth").get<int>();
    if (j.contains("timeout"))
        c.py_timeout = std::chrono::milliseconds(
            static_cast<std::int64_t>(j.at("timeout").get<double>() * 1000));
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("benchmark")) c.benchmark_name = j.at("benchmark").get<std::string>();
    if (j.contains("python")) c.python_interpreter = j.at("python").get<std::string>();
    if (j.contains("enumeration_cap")) c.enumeration_cap = j.at("enumeration_cap").get<int>();
    return c;
}

std::string config_to_json(const PipelineConfig& c) {
    json j;
    j["endpoint"] = c.llm.endpoint;
    j["model"] = c.llm.model;
    j["mock"] = c.llm.mock_dir;
    j["no_description"] = !c.llm.include_description;
    j["max_attempts"] = c.llm.max_attempts;
    j["time_budget_s"] =
        std::chrono::duration_cast<std::chrono::seconds>(c.llm.time_budget).count();
    j["unwind"] = c.unwind;
    j["inline_depth"] = c.inline_depth;
    j["timeout"] = std::chrono::duration<double>(c.py_timeout).count();
    j["seed"] = c.seed;
    j["jobs"] = c.jobs;
    j["out"] = c.out_dir;
    j["benchmark"] = c.benchmark_name;
    j["python"] = c.python_interpreter;
    j["enumeration_cap"] = c.enumeration_cap;
    return j.dump(2) + "\n";
}

namespace {

struct StageTimer {
    PipelineReport& report;
    std::string name;
    std::chrono::steady_clock::time_point start;
    StageTimer(PipelineReport& r, std::string n)
        : report(r), name(std::move(n)), start(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        report.timings_ms[name] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - start)
                                      .count();
    }
};

bool all_parse_failures(const llm::AttemptLog& log) {
    for (const auto& a : log)
        if (a.classification != llm::AttemptClass::ParseFail) return false;
    return !log.empty();
}

}  // namespace

OutcomeClass classify_outcome(const PipelineReport& report,
                              const std::optional<py::MutantRecord>& ground_truth) {
    if (report.candidate && !report.candidate->success()) {
        return all_parse_failures(report.candidate->log) ? OutcomeClass::CompilationError
                                                         : OutcomeClass::GaveUp;
    }
    if (report.verdict == bmc::Verdict::Kind::Verified) {
        return report.accepted_via == GateDecision::Kind::FixedCodeSuspected
                   ? OutcomeClass::TranspiledFixedCode
                   : OutcomeClass::Verified;
    }
    // verification failed
    if (report.diagnosis_cost <= 0 || report.fault_statements.empty())
        return OutcomeClass::VerificationFailedNoDiagnosis;
    if (!ground_truth)
        throw MissingGroundTruth("diagnoses reported for problem '" + report.problem_id +
                                 "' without a MutantRecord");
    for (const auto& b : report.backmapped)
        if (b.anchored && b.line && *b.line == ground_truth->line)
            return OutcomeClass::CorrectBugLocalised;
    return OutcomeClass::OtherBugsLocalised;
}

PipelineReport run_pipeline(const py::PythonProblem& problem, const PipelineConfig& config) {
    PipelineReport report;
    report.problem_id = problem.id;
    report.benchmark = config.benchmark_name;
    report.model = config.llm.model.empty() && !config.llm.mock_dir.empty()
                       ? "replay"
                       : config.llm.model;
    report.description_used = config.llm.include_description && problem.description.has_value();
    report.mutation = problem.ground_truth ? py::to_string(problem.ground_truth->kind) : "none";
    report.problem_source = problem.source;
    report.description = problem.description;
    report.ground_truth = problem.ground_truth;

    llm::LlmClient client(config.llm);

    // 1. run the Python program on its own assertions
    py::RunOutcome py_outcome;
    try {
        StageTimer t(report, "python_run");
        py_outcome = py::run_python(problem.source, config.py_timeout,
                                    config.python_interpreter);
        report.python_run = py_outcome;
    } catch (const std::exception& e) {
        report.errors.push_back(std::string("python run: ") + e.what());
        report.outcome = OutcomeClass::GaveUp;
        return report;
    }

    // 2. transpile with the differential gate
    GateDecision last_decision;
    auto gate = [&](const std::string& c_source) {
        GateDecision d = validate_candidate(py_outcome, c_source, config.interp);
        last_decision = d;
        llm::GateOutcome out;
        out.accepted = d.kind != GateDecision::Kind::Retry;
        out.classification = d.classification;
        out.reason = d.reason;
        return out;
    };

    llm::CandidateResult candidate;
    try {
        StageTimer t(report, "transpile");
        candidate = llm::transpile_with_retry(problem, config.llm, client, gate);
    } catch (const std::exception& e) {
        report.errors.push_back(std::string("transpile: ") + e.what());
        report.outcome = OutcomeClass::GaveUp;
        return report;
    }
    report.candidate = candidate;
    if (!candidate.success()) {
        report.outcome = classify_outcome(report, problem.ground_truth);
        return report;
    }
    report.accepted_via = last_decision.kind;

    minic::CheckedProgram program;
    try {
        program = minic::typecheck(minic::parse(candidate.c_source));
    } catch (const Error& e) {
        report.errors.push_back("candidate recheck: " + std::string(e.what()));
        report.outcome = OutcomeClass::GaveUp;
        return report;
    }

    // 3. bounded verification
    bmc::Verdict verdict;
    try {
        StageTimer t(report, "verify");
        verdict = bmc::check_bounded(program, config.bmc_options());
        report.verdict = verdict.kind;
        report.verdict_bound = verdict.bound;
    } catch (const std::exception& e) {
        report.errors.push_back(std::string("verify: ") + e.what());
        report.outcome = OutcomeClass::VerificationFailedNoDiagnosis;
        return report;
    }

    if (verdict.verified()) {
        report.outcome = classify_outcome(report, problem.ground_truth);
        return report;
    }

    // 4. fault localisation (bound artifacts are blocked, not diagnosed)
    fl::DiagnosisSet diagnoses;
    std::vector<fl::SourceStatement> statements;
    try {
        StageTimer t(report, "localize");
        fl::GuardedFormula g = fl::encode_guarded(program, config.localize_options());
        diagnoses = fl::enumerate_diagnoses(g, config.localize_options());
        statements = fl::map_diagnosis_to_source(diagnoses, program);
        std::set<minic::StatementId> sink_ids(g.sink_ids.begin(), g.sink_ids.end());
        report.diagnosis_cost = diagnoses.cost;
        report.diagnosis_truncated = diagnoses.truncated;
        for (const auto& d : diagnoses.diagnoses) {
            std::vector<int> lines;
            for (auto id : d.statements) lines.push_back(program.info(id).span.line);
            report.diagnosis_lines.push_back(std::move(lines));
            report.diagnosis_sink_flags.push_back(d.output_sink);
        }
        for (const auto& s : statements)
            report.fault_statements.push_back(
                {s.line, s.text, sink_ids.count(s.id) > 0});
    } catch (const std::exception& e) {
        report.errors.push_back(std::string("localize: ") + e.what());
        report.outcome = OutcomeClass::VerificationFailedNoDiagnosis;
        return report;
    }

    // 5. back-map diagnosed statements to the Python source
    if (!statements.empty()) {
        std::vector<std::string> texts;
        for (const auto& s : statements) texts.push_back(s.text);
        try {
            StageTimer t(report, "backmap");
            report.backmapped = llm::backmap_statements(client, problem, texts);
        } catch (const std::exception& e) {
            report.errors.push_back(std::string("backmap: ") + e.what());
        }
    }

    try {
        report.outcome = classify_outcome(report, problem.ground_truth);
    } catch (const MissingGroundTruth& e) {
        // faults reported on a problem with no injected ground truth
        report.errors.push_back(e.what());
        report.outcome = OutcomeClass::OtherBugsLocalised;
    }
    return report;
}

std::vector<PipelineReport> run_benchmark(const std::vector<py::PythonProblem>& problems,
                                          const PipelineConfig& config) {
    int jobs = config.jobs > 0 ? config.jobs
                               : static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min(jobs, config.llm.max_in_flight);
    jobs = std::min<int>(jobs, static_cast<int>(problems.size()));
    if (jobs < 1) jobs = 1;

    std::vector<PipelineReport> reports(problems.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= problems.size()) return;
            reports[i] = run_pipeline(problems[i], config);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return reports;
}

double MetricsRow::percent(OutcomeClass c) const {
    auto it = counts.find(c);
    int n = it == counts.end() ? 0 : it->second;
    return total == 0 ? 0.0 : 100.0 * n / total;
}

MetricsTable compute_metrics(const std::vector<PipelineReport>& reports) {
    if (reports.empty()) throw EmptyGroup("no reports to aggregate");
    MetricsTable table;
    for (const auto& r : reports) {
        MetricsTable::Key key{r.benchmark, r.mutation, r.model, r.description_used};
        MetricsRow& row = table.groups[key];
        row.counts[r.outcome]++;
        row.total++;
    }
    return table;
}

namespace {

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", v);
    return buf;
}

}  // namespace

std::string render_metrics(const MetricsTable& table, bool fold_giveups) {
    std::string out;
    for (const auto& [key, row] : table.groups) {
        out += "benchmark: " + key.benchmark + " | mutation: " + key.mutation +
               " | model: " + key.model +
               " | description: " + (key.description ? "yes" : "no") + "\n";
        double comp = row.percent(OutcomeClass::CompilationError);
        if (fold_giveups) comp += row.percent(OutcomeClass::GaveUp);
        out += "  % Correct Bug Localised   " +
               pct(row.percent(OutcomeClass::CorrectBugLocalised)) + "\n";
        out += "  % Other Bugs Localised    " +
               pct(row.percent(OutcomeClass::OtherBugsLocalised)) + "\n";
        out += "  % Transpiled Fixed Code   " +
               pct(row.percent(OutcomeClass::TranspiledFixedCode)) + "\n";
        out += "  % Compilation Errors      " + pct(comp) + "\n";
        out += "  (verification success rate " + pct(row.percent(OutcomeClass::Verified)) +
               "; verified " + std::to_string(row.counts.count(OutcomeClass::Verified)
                                                  ? row.counts.at(OutcomeClass::Verified)
                                                  : 0);
        auto count = [&](OutcomeClass c) {
            auto it = row.counts.find(c);
            return it == row.counts.end() ? 0 : it->second;
        };
        out += ", no-diagnosis " +
               std::to_string(count(OutcomeClass::VerificationFailedNoDiagnosis));
        if (!fold_giveups) out += ", gave-up " + std::to_string(count(OutcomeClass::GaveUp));
        out += ", total " + std::to_string(row.total) + ")\n\n";
    }
    return out;
}

}  // namespace fathom::pipeline
