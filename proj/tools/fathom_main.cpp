// fathom -- verification and fault localisation for Python programs via
// LLM transpilation to a bounded C subset.
//
// Subcommands: transpile, mutate, verify, localize, run, bench, report.
// Exit codes: 0 all stages ran, 1 usage error, 2 environment error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fathom/dimacs.hpp"
#include "fathom/parser.hpp"
#include "fathom/pipeline.hpp"
#include "fathom/printer.hpp"
#include "fathom/typecheck.hpp"

namespace fs = std::filesystem;
using namespace fathom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEnv = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw py::EnvError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw py::EnvError("cannot write " + path.string());
    out << contents;
}

minic::CheckedProgram load_c(const std::string& path) {
    return minic::typecheck(minic::parse(read_file(path)));
}

void print_report_summary(const pipeline::PipelineReport& r) {
    std::cout << r.problem_id << ": " << pipeline::to_string(r.outcome);
    if (r.verdict) std::cout << " (verdict " << bmc::to_string(*r.verdict) << ")";
    if (!r.fault_statements.empty()) {
        std::cout << "\n  localised C statements:";
        for (const auto& s : r.fault_statements) {
            std::cout << "\n    line " << s.line << ": " << s.text;
            if (s.output_sink) std::cout << "  [output sink]";
        }
    }
    if (!r.backmapped.empty()) {
        std::cout << "\n  back-mapped Python statements:";
        for (const auto& s : r.backmapped) {
            std::cout << "\n    ";
            if (s.line) {
                std::cout << "line " << *s.line << ": ";
            } else {
                std::cout << "(unanchored) ";
            }
            std::cout << s.text;
        }
    }
    for (const auto& e : r.errors) std::cout << "\n  note: " << e;
    std::cout << "\n";
}

struct Cli {
    pipeline::PipelineConfig config;
    std::string config_path;

    // flag staging (CLI overrides config file)
    std::string endpoint, model, mock, out;
    bool no_description = false;
    int unwind = -1, inline_depth = -1, jobs = -1;
    double timeout = -1;
    std::int64_t seed = -1;

    void attach_common(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--endpoint", endpoint, "chat-completions endpoint URL");
        cmd->add_option("--model", model, "model name");
        cmd->add_option("--mock", mock, "replay fixture directory (offline mode)");
        cmd->add_flag("--no-description", no_description,
                      "omit the natural-language description from prompts");
        cmd->add_option("--unwind", unwind, "loop unwinding bound");
        cmd->add_option("--inline-depth", inline_depth, "call inlining depth");
        cmd->add_option("--timeout", timeout, "per-run timeout in seconds");
        cmd->add_option("--seed", seed, "mutation site selection seed");
        cmd->add_option("--jobs", jobs, "parallel workers for bench");
        cmd->add_option("--out", out, "output directory for reports");
    }

    void finalize() {
        if (!config_path.empty())
            config = pipeline::config_from_json(read_file(config_path), config);
        if (!endpoint.empty()) config.llm.endpoint = endpoint;
        if (!model.empty()) config.llm.model = model;
        if (!mock.empty()) config.llm.mock_dir = mock;
        if (no_description) config.llm.include_description = false;
        if (unwind >= 0) config.unwind = unwind;
        if (inline_depth >= 0) config.inline_depth = inline_depth;
        if (timeout >= 0) {
            config.py_timeout = std::chrono::milliseconds(
                static_cast<std::int64_t>(timeout * 1000));
            config.interp.wall_timeout_ms = config.py_timeout.count();
        }
        if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
        if (jobs >= 0) config.jobs = jobs;
        if (!out.empty()) config.out_dir = out;
    }
};

int cmd_transpile(Cli& cli, const std::string& problem_dir, bool show_prompt) {
    cli.finalize();
    py::PythonProblem problem = py::load_problem(problem_dir);
    std::string prompt =
        llm::render_transpile_prompt(problem, cli.config.llm.include_description &&
                                                  problem.description.has_value());
    if (show_prompt) {
        std::cout << prompt;
        return kExitOk;
    }
    llm::LlmClient client(cli.config.llm);
    std::string response = client.complete(prompt);
    std::cout << llm::extract_c_code(response);
    return kExitOk;
}

int cmd_mutate(Cli& cli, const std::string& program_path, const std::string& kind_name,
               int site, const std::string& description_path) {
    cli.finalize();
    std::string source = read_file(program_path);
    py::MutationKind kind = py::mutation_kind_from_string(kind_name);
    py::SiteSelection sel = site >= 0 ? py::SiteSelection::at(site)
                                      : py::SiteSelection::seeded(cli.config.seed);
    py::MutationResult m = kind == py::MutationKind::WBO ? py::mutate_wbo(source, sel)
                                                         : py::mutate_adc(source, sel);

    py::PythonProblem original;
    original.id = fs::path(program_path).stem().string();
    original.source = source;
    py::RunOutcome orig_run =
        py::run_python(source, cli.config.py_timeout, cli.config.python_interpreter);
    if (!orig_run.passed()) {
        std::cerr << "original program does not pass its assertions ("
                  << py::to_string(orig_run.status) << ")\n";
        return kExitUsage;
    }
    py::Validation v = py::validate_mutant(original, m.source, cli.config.py_timeout,
                                           cli.config.python_interpreter);
    std::cerr << (v.accepted ? "accepted" : "rejected: " + v.reason)
              << (v.timeout_flagged ? " (timeout-flagged)" : "") << "\n";
    if (!v.accepted) return kExitUsage;

    if (!cli.config.out_dir.empty()) {
        fs::path dir(cli.config.out_dir);
        write_file(dir / "program.py", m.source);
        write_file(dir / "mutant.json", py::mutant_record_to_json(m.record));
        if (!description_path.empty())
            write_file(dir / "description.txt", read_file(description_path));
        std::cout << dir.string() << "\n";
    } else {
        std::cout << m.source;
    }
    return kExitOk;
}

int cmd_verify(Cli& cli, const std::string& c_path, const std::string& dump_cnf) {
    cli.finalize();
    minic::CheckedProgram program = load_c(c_path);
    if (!dump_cnf.empty()) {
        bmc::TraceFormula tf = bmc::encode_program(program, cli.config.bmc_options());
        write_file(dump_cnf, sat::serialize_dimacs(tf.violation_instance()));
        write_file(dump_cnf + ".map", tf.variable_map());
    }
    bmc::Verdict v = bmc::check_bounded(program, cli.config.bmc_options());
    std::cout << bmc::to_string(v.kind) << " (unwind " << v.bound << ")\n";
    if (v.violated()) {
        for (const auto& [name, value] : v.trace.inputs)
            std::cout << "  input " << name << " = " << value << "\n";
        if (v.trace.violated != minic::kNoStatement)
            std::cout << "  violated: line " << program.info(v.trace.violated).span.line
                      << ": " << program.statement_text(v.trace.violated) << "\n";
    }
    return kExitOk;
}

int cmd_localize(Cli& cli, const std::string& c_path, const std::string& dump_wcnf) {
    cli.finalize();
    minic::CheckedProgram program = load_c(c_path);
    fl::GuardedFormula g = fl::encode_guarded(program, cli.config.localize_options());
    if (!dump_wcnf.empty())
        write_file(dump_wcnf, sat::serialize_dimacs(g.maxsat_instance()));
    fl::DiagnosisSet ds = fl::enumerate_diagnoses(g, cli.config.localize_options());
    if (ds.empty()) {
        std::cout << "no diagnosis (cost 0): the program passes its assertions\n";
        return kExitOk;
    }
    std::cout << ds.diagnoses.size() << " diagnoses of cost " << ds.cost
              << (ds.truncated ? " (truncated)" : "") << "\n";
    for (const auto& s : fl::map_diagnosis_to_source(ds, program))
        std::cout << "  line " << s.line << ": " << s.text << "\n";
    return kExitOk;
}

int cmd_run(Cli& cli, const std::string& problem_dir) {
    cli.finalize();
    py::PythonProblem problem = py::load_problem(problem_dir);
    pipeline::PipelineReport report = pipeline::run_pipeline(problem, cli.config);
    if (!cli.config.out_dir.empty())
        write_file(fs::path(cli.config.out_dir) / (report.problem_id + ".report.json"),
                   pipeline::report_to_json(report));
    print_report_summary(report);
    return kExitOk;
}

int cmd_bench(Cli& cli, const std::string& bench_dir) {
    cli.finalize();
    std::vector<py::PythonProblem> problems = py::load_benchmark(bench_dir);
    if (problems.empty()) {
        std::cerr << "no problems under " << bench_dir << "\n";
        return kExitUsage;
    }
    cli.config.benchmark_name = fs::path(bench_dir).filename().string();
    std::vector<pipeline::PipelineReport> reports =
        pipeline::run_benchmark(problems, cli.config);
    for (const auto& r : reports) print_report_summary(r);
    if (!cli.config.out_dir.empty()) {
        for (const auto& r : reports)
            write_file(fs::path(cli.config.out_dir) / (r.problem_id + ".report.json"),
                       pipeline::report_to_json(r));
    }
    std::cout << "\n" << pipeline::render_metrics(pipeline::compute_metrics(reports));
    return kExitOk;
}

int cmd_report(Cli& cli, const std::string& report_dir, bool fold_giveups) {
    cli.finalize();
    std::vector<pipeline::PipelineReport> reports;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(report_dir))
        if (entry.path().extension() == ".json" &&
            entry.path().filename().string().find(".report.") != std::string::npos)
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
        reports.push_back(pipeline::report_from_json(read_file(f.string())));
    std::cout << pipeline::render_metrics(pipeline::compute_metrics(reports), fold_giveups);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification and fault localisation for Python via a bounded C subset"};
    app.require_subcommand(1);

    Cli cli;

    std::string problem_dir, program_path, c_path, bench_dir, report_dir;
    std::string kind_name = "adc", dump_cnf, dump_wcnf, description_path;
    bool show_prompt = false, fold_giveups = false;
    int site = -1;

    CLI::App* transpile = app.add_subcommand("transpile", "render the prompt and ask for C");
    transpile->add_option("problem", problem_dir, "problem directory")->required();
    transpile->add_flag("--show-prompt", show_prompt, "print the rendered prompt and exit");
    cli.attach_common(transpile);

    CLI::App* mutate = app.add_subcommand("mutate", "inject a WBO or ADC fault");
    mutate->add_option("program", program_path, "Python source file")->required();
    mutate->add_option("--kind", kind_name, "wbo or adc")->required();
    mutate->add_option("--site", site, "explicit site index (default: seeded choice)");
    mutate->add_option("--description", description_path, "description file to copy");
    cli.attach_common(mutate);

    CLI::App* verify = app.add_subcommand("verify", "bounded verification of a C file");
    verify->add_option("file", c_path, "MiniC source file")->required();
    verify->add_option("--dump-cnf", dump_cnf, "write the trace formula as DIMACS CNF");
    cli.attach_common(verify);

    CLI::App* localize = app.add_subcommand("localize", "MaxSAT fault localisation of a C file");
    localize->add_option("file", c_path, "MiniC source file")->required();
    localize->add_option("--dump-wcnf", dump_wcnf, "write the guarded formula as DIMACS WCNF");
    cli.attach_common(localize);

    CLI::App* run = app.add_subcommand("run", "full pipeline on one problem");
    run->add_option("problem", problem_dir, "problem directory")->required();
    cli.attach_common(run);

    CLI::App* bench = app.add_subcommand("bench", "full pipeline over a problem directory");
    bench->add_option("dir", bench_dir, "benchmark directory")->required();
    cli.attach_common(bench);

    CLI::App* report = app.add_subcommand("report", "metrics tables from stored reports");
    report->add_option("dir", report_dir, "directory of *.report.json files")->required();
    report->add_flag("--fold-giveups", fold_giveups,
                     "count give-ups into the Compilation Errors column");
    cli.attach_common(report);

    CLI11_PARSE(app, argc, argv);

    try {
        if (transpile->parsed()) return cmd_transpile(cli, problem_dir, show_prompt);
        if (mutate->parsed())
            return cmd_mutate(cli, program_path, kind_name, site, description_path);
        if (verify->parsed()) return cmd_verify(cli, c_path, dump_cnf);
        if (localize->parsed()) return cmd_localize(cli, c_path, dump_wcnf);
        if (run->parsed()) return cmd_run(cli, problem_dir);
        if (bench->parsed()) return cmd_bench(cli, bench_dir);
        if (report->parsed()) return cmd_report(cli, report_dir, fold_giveups);
    } catch (const py::EnvError& e) {
        std::cerr << "environment error: " << e.what() << "\n";
        return kExitEnv;
    } catch (const llm::TransportError& e) {
        std::cerr << "environment error: " << e.what() << "\n";
        return kExitEnv;
    } catch (const Error& e) {
        std::cerr << format_diag("input", e.span(), e.what()) << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
